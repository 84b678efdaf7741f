//! The natural unit interval order `P(d)` and its incomparability graph.

use serde::{Deserialize, Serialize};

use crate::dyck::{BounceData, DyckPath};
use crate::error::{Error, Result};

/// Poset on `[n]` with `i < j` related iff `j > d_i`. Successor sets are
/// cached as bitmasks, so `n` is capped at the mask width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitIntervalPoset {
    n: usize,
    dyck: DyckPath,
    succ: Vec<u32>,
}

pub const MAX_N: usize = 31;

impl UnitIntervalPoset {
    pub fn from_dyck(d: &DyckPath) -> Result<Self> {
        let n = d.n();
        if n > MAX_N {
            return Err(Error::OutOfRange(format!("n = {n} exceeds {MAX_N}")));
        }
        // succ[i] has bit j set iff i precedes j (1-indexed bits)
        let mut succ = vec![0u32; n + 1];
        for i in 1..n {
            for j in d.entry(i) + 1..=n {
                succ[i] |= 1 << j;
            }
        }
        let poset = UnitIntervalPoset { n, dyck: d.clone(), succ };
        debug_assert!(poset.relation_is_strict_order());
        Ok(poset)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dyck(&self) -> &DyckPath {
        &self.dyck
    }

    pub fn bounce(&self) -> BounceData {
        self.dyck.bounce_data()
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.succ[i] >> j & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.precedes(i, j) || self.precedes(j, i)
    }

    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.comparable(i, j)
    }

    /// Bitmask of successors of `i`.
    pub fn succ_mask(&self, i: usize) -> u32 {
        self.succ[i]
    }

    /// Bitmask over `j` of elements incomparable to `i` and greater than `i`.
    pub fn greater_incomparable_mask(&self, i: usize) -> u32 {
        let above: u32 = ((1u64 << (self.n + 1)) - 1) as u32 & !((1 << (i + 1)) - 1);
        above & !self.succ[i]
    }

    /// Irreflexivity and transitivity hold by construction; re-checked here.
    pub fn relation_is_strict_order(&self) -> bool {
        for i in 1..=self.n {
            if self.precedes(i, i) {
                return false;
            }
            for j in 1..=self.n {
                if self.precedes(i, j) && self.succ[j] & !self.succ[i] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Length of the longest chain, by DAG longest-path. Equals the bounce
    /// number of the underlying path.
    pub fn longest_chain_len(&self) -> usize {
        let mut best = vec![0usize; self.n + 2];
        for i in (1..=self.n).rev() {
            let mut len = 1;
            for j in i + 1..=self.n {
                if self.precedes(i, j) {
                    len = len.max(1 + best[j]);
                }
            }
            best[i] = len;
        }
        (1..=self.n).map(|i| best[i]).max().unwrap_or(0)
    }

    /// No induced `a`-chain + `b`-chain on disjoint, mutually incomparable
    /// element sets. Scans all ordered tuples; fine at desk scale.
    pub fn is_a_plus_b_free(&self, a: usize, b: usize) -> bool {
        let chains_a = self.chains_of_len(a);
        let chains_b = self.chains_of_len(b);
        for ca in &chains_a {
            for cb in &chains_b {
                let disjoint = ca.iter().all(|x| !cb.contains(x));
                if disjoint
                    && ca
                        .iter()
                        .all(|&x| cb.iter().all(|&y| self.incomparable(x, y)))
                {
                    return false;
                }
            }
        }
        true
    }

    fn chains_of_len(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(p: &UnitIntervalPoset, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for v in lo + 1..=p.n {
                if cur.last().is_none_or(|&last| p.precedes(last, v)) {
                    cur.push(v);
                    rec(p, len, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self, len, &mut cur, &mut out);
        out
    }

    pub fn incomparability_graph(&self) -> IncompGraph {
        let mut edges = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.incomparable(i, j) {
                    edges.push((i, j));
                }
            }
        }
        IncompGraph { n: self.n, edges }
    }
}

/// Undirected graph on `[n]` whose edges are the incomparable pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncompGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl IncompGraph {
    /// Adjacency bitmask of each vertex (1-indexed bits).
    pub fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n + 1];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }
}
