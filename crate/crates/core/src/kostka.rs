//! Kostka numbers and their inverse via special rim hook tabloids.
//!
//! `K[lambda][mu]` counts semistandard Young tableaux of shape `lambda` and
//! content `mu`. The inverse matrix entry `Kinv[lambda][mu]` is the signed
//! count of tilings of the diagram of `mu` by rim hooks that each touch the
//! first column, with hook sizes forming the multiset `lambda`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A cell of a Young diagram, 1-indexed `(row, col)`, row 1 on top.
pub type Cell = (usize, usize);

/// Number of SSYT of shape `lambda` and content `mu`: weakly increasing rows,
/// strictly increasing columns, with `mu[i]` copies of entry `i+1`.
pub fn ssyt_count(lambda: &Partition, mu: &Partition) -> Result<u64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.to_string(), mu.to_string()));
    }
    let mut memo = HashMap::new();
    Ok(count_rec(lambda.parts().to_vec(), mu.parts(), &mut memo))
}

/// SSYT of shape `nu` filled by entries `1..=i` with content `mu[0..i]`
/// decompose as a horizontal strip of `mu[i-1]` cells on top of a smaller SSYT.
fn count_rec(nu: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), u64>) -> u64 {
    let i = mu.len();
    if i == 0 {
        return if nu.is_empty() { 1 } else { 0 };
    }
    let total: usize = nu.iter().sum();
    if total != mu.iter().sum::<usize>() {
        return 0;
    }
    if let Some(&v) = memo.get(&(nu.clone(), i)) {
        return v;
    }
    let strip = mu[i - 1];
    let mut acc = 0;
    // Choose the inner shape row by row; interlacing keeps the strip horizontal.
    fn strips(
        nu: &[usize],
        row: usize,
        budget: usize,
        inner: &mut Vec<usize>,
        mu: &[usize],
        memo: &mut HashMap<(Vec<usize>, usize), u64>,
        acc: &mut u64,
    ) {
        if row == nu.len() {
            if budget == 0 {
                let mut inner_trim = inner.clone();
                while inner_trim.last() == Some(&0) {
                    inner_trim.pop();
                }
                *acc += count_rec(inner_trim, &mu[..mu.len() - 1], memo);
            }
            return;
        }
        let hi = nu[row];
        let lo = nu.get(row + 1).copied().unwrap_or(0);
        for keep in lo..=hi {
            let removed = hi - keep;
            if removed > budget {
                continue;
            }
            inner.push(keep);
            strips(nu, row + 1, budget - removed, inner, mu, memo, acc);
            inner.pop();
        }
    }
    strips(&nu, 0, strip, &mut Vec::new(), mu, memo, &mut acc);
    memo.insert((nu, i), acc);
    acc
}

/// A tiling of the diagram of `shape` by special rim hooks, recorded in
/// removal order: the first hook contains the bottom-left cell of the full
/// diagram, the next one the bottom-left cell of what remains, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialRimHookTabloid {
    pub shape: Partition,
    pub hooks: Vec<Vec<Cell>>,
    pub hook_type: Partition,
    pub sign: i64,
}

impl SpecialRimHookTabloid {
    /// Per-hook counts of first-column cells, in removal order. Together with
    /// the hook sizes this keys the canonical enumeration order.
    pub fn split_key(&self) -> Vec<(usize, usize)> {
        self.hooks
            .iter()
            .map(|h| (h.iter().filter(|&&(_, c)| c == 1).count(), h.len()))
            .collect()
    }
}

/// The special rim hook of `nu` that starts at the bottom-left cell and has
/// top row `t` (1-indexed). Returns `(cells, remaining shape)`.
///
/// Row `R` of the hook spans columns `1..=nu[R]`; row `r < R` spans
/// `nu[r+1]..=nu[r]`, which is the unique way the removal leaves a partition
/// while the hook stays a connected strip without a 2x2 block. The hook size
/// is `nu[t] + R - t`.
fn bottom_hook(nu: &[usize], t: usize) -> (Vec<Cell>, Vec<usize>) {
    let r_max = nu.len();
    debug_assert!(t >= 1 && t <= r_max);
    let mut cells = Vec::new();
    for r in t..=r_max {
        let start = if r == r_max { 1 } else { nu[r] }; // nu[r] = part of row r+1 (0-indexed)
        for c in start..=nu[r - 1] {
            cells.push((r, c));
        }
    }
    let mut rest: Vec<usize> = nu[..t - 1].to_vec();
    for r in t..r_max {
        let v = nu[r] - 1;
        if v > 0 {
            rest.push(v);
        }
    }
    (cells, rest)
}

/// All special rim hook tilings of the diagram of `mu`, grouped by nothing:
/// every tiling is returned with its hook type and sign, sorted canonically.
pub fn enumerate_all_srht(mu: &Partition) -> Vec<SpecialRimHookTabloid> {
    let mut out = Vec::new();
    let mut hooks = Vec::new();
    fn rec(nu: Vec<usize>, hooks: &mut Vec<Vec<Cell>>, mu: &Partition, out: &mut Vec<SpecialRimHookTabloid>) {
        if nu.is_empty() {
            let sizes = hooks.iter().map(|h| h.len()).collect();
            let sign = hooks
                .iter()
                .map(|h| {
                    let rows: std::collections::BTreeSet<usize> = h.iter().map(|&(r, _)| r).collect();
                    if (rows.len() - 1).is_multiple_of(2) { 1 } else { -1 }
                })
                .product();
            out.push(SpecialRimHookTabloid {
                shape: mu.clone(),
                hooks: hooks.clone(),
                hook_type: Partition::from_unsorted(sizes),
                sign,
            });
            return;
        }
        for t in 1..=nu.len() {
            let (cells, rest) = bottom_hook(&nu, t);
            hooks.push(cells);
            rec(rest, hooks, mu, out);
            hooks.pop();
        }
    }
    rec(mu.parts().to_vec(), &mut hooks, mu, &mut out);
    out.sort_by_key(|a| a.split_key());
    out
}

/// Tilings of `mu` whose hook sizes form exactly the multiset `lambda`.
pub fn enumerate_srht(lambda: &Partition, mu: &Partition) -> Result<Vec<SpecialRimHookTabloid>> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.to_string(), mu.to_string()));
    }
    Ok(enumerate_all_srht(mu)
        .into_iter()
        .filter(|t| &t.hook_type == lambda)
        .collect())
}

/// Signed count over all hook-type `lambda` tilings of `mu`.
pub fn inverse_kostka(lambda: &Partition, mu: &Partition) -> Result<i64> {
    Ok(enumerate_srht(lambda, mu)?.iter().map(|t| t.sign).sum())
}

/// The full column `lambda -> Kinv[lambda][mu]` in one enumeration pass.
pub fn inverse_kostka_column(mu: &Partition) -> BTreeMap<Partition, i64> {
    let mut col = BTreeMap::new();
    for t in enumerate_all_srht(mu) {
        *col.entry(t.hook_type).or_insert(0) += t.sign;
    }
    col.retain(|_, v| *v != 0);
    col
}

/// Re-checks every tabloid invariant directly from the cell sets, independent
/// of the generator's geometry.
pub fn validate_tabloid(t: &SpecialRimHookTabloid) -> Result<()> {
    use std::collections::BTreeSet;
    let shape_cells: BTreeSet<Cell> = t
        .shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
        .collect();
    let mut current = shape_cells.clone();
    let mut all: Vec<Cell> = t.hooks.iter().flatten().copied().collect();
    let total: usize = all.len();
    all.sort_unstable();
    all.dedup();
    if all.len() != total || all.iter().any(|c| !shape_cells.contains(c)) {
        return Err(Error::Precondition("hooks overlap or leave the diagram".into()));
    }
    if total != shape_cells.len() {
        return Err(Error::Precondition("hooks do not cover the diagram".into()));
    }
    let mut sign = 1i64;
    for hook in &t.hooks {
        if !hook.iter().any(|&(_, c)| c == 1) {
            return Err(Error::Precondition("hook misses the first column".into()));
        }
        // connectivity over 4-adjacency
        let set: BTreeSet<Cell> = hook.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut stack = vec![*hook.first().ok_or(Error::Precondition("empty hook".into()))?];
        while let Some((r, c)) = stack.pop() {
            if !seen.insert((r, c)) {
                continue;
            }
            for (nr, nc) in [(r + 1, c), (r.wrapping_sub(1), c), (r, c + 1), (r, c.wrapping_sub(1))] {
                if set.contains(&(nr, nc)) {
                    stack.push((nr, nc));
                }
            }
        }
        if seen.len() != set.len() {
            return Err(Error::Precondition("hook not connected".into()));
        }
        // no 2x2 block
        for &(r, c) in &set {
            if set.contains(&(r + 1, c)) && set.contains(&(r, c + 1)) && set.contains(&(r + 1, c + 1)) {
                return Err(Error::Precondition("hook contains a 2x2 block".into()));
            }
        }
        // removal in order leaves a Young diagram
        for cell in &set {
            if !current.contains(cell) {
                return Err(Error::Precondition("hook not present at its removal stage".into()));
            }
        }
        let next: BTreeSet<Cell> = current.difference(&set).copied().collect();
        if !is_young_diagram(&next) {
            return Err(Error::Precondition("removal does not leave a Young diagram".into()));
        }
        current = next;
        let height = set.iter().map(|&(r, _)| r).collect::<BTreeSet<_>>().len();
        sign *= if (height - 1) % 2 == 0 { 1 } else { -1 };
    }
    if sign != t.sign {
        return Err(Error::Precondition(format!("sign mismatch: {} != {}", sign, t.sign)));
    }
    let sizes = Partition::from_unsorted(t.hooks.iter().map(|h| h.len()).collect());
    if sizes != t.hook_type {
        return Err(Error::Precondition("hook type mismatch".into()));
    }
    Ok(())
}

fn is_young_diagram(cells: &std::collections::BTreeSet<Cell>) -> bool {
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    for &(r, c) in cells {
        let e = rows.entry(r).or_insert(0);
        *e = (*e).max(c);
    }
    // each row left-justified and full
    for (&r, &len) in &rows {
        for c in 1..=len {
            if !cells.contains(&(r, c)) {
                return false;
            }
        }
        if r > 1 {
            match rows.get(&(r - 1)) {
                Some(&above) if above >= len => {}
                _ => return false,
            }
        }
    }
    rows.keys().zip(1..).all(|(&r, i)| r == i)
}

/// Outcome of checking `K * Kinv = I` over all partitions of `n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KostkaInverseReport {
    pub n: usize,
    pub pass: bool,
    pub first_counterexample: Option<(Partition, Partition, i64)>,
}

/// Checks that the Kostka matrix and the signed-tabloid matrix are two-sided
/// inverses over all partitions of `n`.
pub fn verify_kostka_inverse(n: usize) -> Result<KostkaInverseReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let parts = Partition::all(n);
    let m = parts.len();
    let mut k = vec![vec![0i64; m]; m];
    let mut kinv = vec![vec![0i64; m]; m];
    let index: HashMap<&Partition, usize> = parts.iter().zip(0..).collect();
    for (i, lam) in parts.iter().enumerate() {
        for (j, mu) in parts.iter().enumerate() {
            k[i][j] = ssyt_count(lam, mu)? as i64;
        }
    }
    for (j, mu) in parts.iter().enumerate() {
        for (lam, v) in inverse_kostka_column(mu) {
            kinv[index[&lam]][j] = v;
        }
    }
    for side in 0..2 {
        for i in 0..m {
            for j in 0..m {
                let entry: i64 = (0..m)
                    .map(|t| {
                        if side == 0 {
                            k[i][t] * kinv[t][j]
                        } else {
                            kinv[i][t] * k[t][j]
                        }
                    })
                    .sum();
                let expect = if i == j { 1 } else { 0 };
                if entry != expect {
                    return Ok(KostkaInverseReport {
                        n,
                        pass: false,
                        first_counterexample: Some((parts[i].clone(), parts[j].clone(), entry)),
                    });
                }
            }
        }
    }
    Ok(KostkaInverseReport { n, pass: true, first_counterexample: None })
}
