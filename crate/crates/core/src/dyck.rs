//! Dyck paths on an `n x n` board and their bounce statistics.
//!
//! A path is the weakly increasing sequence `d_1 <= ... <= d_{n-1} <= n` with
//! `d_i >= i`; the cells above the path form the Young diagram `tau`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyckPath {
    n: usize,
    d: Vec<usize>,
}

impl DyckPath {
    pub fn new(d: Vec<usize>) -> Result<Self> {
        let n = d.len() + 1;
        for (i, &di) in d.iter().enumerate() {
            let i1 = i + 1;
            if di < i1 || di > n {
                return Err(Error::InvalidDyckPath(format!(
                    "d_{i1} = {di} violates {i1} <= d_{i1} <= {n}"
                )));
            }
        }
        if d.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidDyckPath(format!("{d:?} is not weakly increasing")));
        }
        Ok(DyckPath { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> &[usize] {
        &self.d
    }

    /// `d_i` with 1-indexed `i`; `d_n` is taken as `n`.
    pub fn entry(&self, i: usize) -> usize {
        if i >= self.n {
            self.n
        } else {
            self.d[i - 1]
        }
    }

    /// Bounce path: `m_0 = d_1`, then `m_i = d_{m_{i-1}+1}` until `n` is hit.
    pub fn bounce_data(&self) -> BounceData {
        let mut m = Vec::new();
        if self.n == 1 {
            m.push(1);
            return BounceData { n: 1, m };
        }
        let mut cur = self.d[0];
        m.push(cur);
        while cur < self.n {
            cur = self.entry(cur + 1);
            m.push(cur);
        }
        BounceData { n: self.n, m }
    }

    pub fn bounce_number(&self) -> usize {
        self.bounce_data().m.len()
    }

    /// The partition of cells above the path: conjugate of `(n - d_i)_i`.
    pub fn tau(&self) -> Partition {
        let cols: Vec<usize> = self.d.iter().map(|&di| self.n - di).collect();
        Partition::from_unsorted(cols).conjugate()
    }

    /// The path whose diagram is the transpose of this one's; an involution.
    pub fn transpose(&self) -> DyckPath {
        let tau = self.tau();
        let d = (0..self.n - 1).map(|i| self.n - tau.part(i)).collect();
        DyckPath::new(d).expect("transpose of a valid path is valid")
    }

    /// All Dyck paths on the `n x n` board in lexicographic order on `d`.
    /// There are Catalan(n) of them.
    pub fn enumerate(n: usize) -> Vec<DyckPath> {
        fn rec(n: usize, d: &mut Vec<usize>, out: &mut Vec<DyckPath>) {
            let i = d.len() + 1;
            if i == n {
                out.push(DyckPath { n, d: d.clone() });
                return;
            }
            let lo = i.max(d.last().copied().unwrap_or(1));
            for v in lo..=n {
                d.push(v);
                rec(n, d, out);
                d.pop();
            }
        }
        let mut out = Vec::new();
        if n >= 1 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// As `enumerate`, optionally keeping only paths with the given bounce
    /// number.
    pub fn enumerate_with_bounce(n: usize, bounce: Option<usize>) -> Vec<DyckPath> {
        Self::enumerate(n)
            .into_iter()
            .filter(|d| bounce.is_none_or(|b| d.bounce_number() == b))
            .collect()
    }

    /// Paths of the form `(d_1, d_2, n-1, ..., n-1, n, ..., n)` with bounce
    /// number three. Blocks may be empty.
    pub fn is_thm41_class(&self) -> bool {
        let n = self.n;
        self.d.iter().skip(2).all(|&v| v == n - 1 || v == n) && self.bounce_number() == 3
    }

    /// Paths of the form `(d_1, n-2, ..., n-2, n-1, ..., n-1, n, ..., n)` with
    /// bounce number three; transposes of the class above.
    pub fn is_cor46_class(&self) -> bool {
        let n = self.n;
        self.d.iter().skip(1).all(|&v| v + 2 >= n) && self.bounce_number() == 3
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.d {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d=({self})")
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    /// Parses comma-separated entries. The canonical form lists
    /// `d_1, ..., d_{n-1}`; the redundant full form ending in `d_n = n`
    /// (e.g. `4,6,6,6,6,7,8,8` for `n = 8`) is also accepted: when the
    /// final two entries both equal the entry count, the trailing diagonal
    /// entry is dropped.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return DyckPath::new(Vec::new());
        }
        let mut d = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let len = d.len();
        if len >= 2 && d[len - 1] == len && d[len - 2] == len {
            d.pop();
        }
        DyckPath::new(d)
    }
}

/// The bounce sequence `m`, and the diagonal blocks when the bounce number is 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BounceData {
    pub n: usize,
    pub m: Vec<usize>,
}

/// Block sizes `(a, b, c)` of `S3, S2, S1` and `k = a + b` for bounce-3 paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocks {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub k: usize,
}

impl BounceData {
    pub fn bounce_number(&self) -> usize {
        self.m.len()
    }

    /// `S1 = {1..m0}, S2 = {m0+1..m1}, S3 = {m1+1..n}`, defined when `|m| = 3`.
    pub fn blocks(&self) -> Option<Blocks> {
        if self.m.len() != 3 {
            return None;
        }
        let c = self.m[0];
        let b = self.m[1] - self.m[0];
        let a = self.n - self.m[1];
        Some(Blocks { a, b, c, k: a + b })
    }

    pub fn s1(&self) -> Vec<usize> {
        (1..=self.m[0]).collect()
    }

    pub fn s2(&self) -> Vec<usize> {
        (self.m[0] + 1..=self.m[1]).collect()
    }

    pub fn s3(&self) -> Vec<usize> {
        (self.m[1] + 1..=self.n).collect()
    }
}
