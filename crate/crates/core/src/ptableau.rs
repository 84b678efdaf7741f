//! P-tableaux: fillings of Young diagrams by poset elements with chain rows
//! and no relation climbing down a column, weighted by the inversion count.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partition::Partition;
use crate::poset::UnitIntervalPoset;
use crate::qpoly::{QPoly, Scalar};

/// Left-justified filling, rows top to bottom. Entries are poset elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PTableau {
    rows: Vec<Vec<usize>>,
}

impl PTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        PTableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(|r| r.len()).collect())
    }

    /// Entry at 1-indexed `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        self.rows.get(row - 1).and_then(|r| r.get(col - 1)).copied()
    }

    pub fn n_cells(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Row index (1-based) of an element, scanning the whole tableau.
    pub fn row_of(&self, v: usize) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| r.contains(&v))
            .map(|i| i + 1)
    }

    /// Gasharov's conditions: each element of `[n]` once, rows are chains,
    /// and no entry precedes the entry directly above it.
    pub fn is_valid(&self, poset: &UnitIntervalPoset) -> bool {
        let n = poset.n();
        if self.n_cells() != n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for row in &self.rows {
            for &v in row {
                if v == 0 || v > n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        if self
            .rows
            .windows(2)
            .any(|w| w[0].len() < w[1].len())
        {
            return false;
        }
        for row in &self.rows {
            if row.windows(2).any(|w| !poset.precedes(w[0], w[1])) {
                return false;
            }
        }
        for r in 1..self.rows.len() {
            for c in 0..self.rows[r].len() {
                if poset.precedes(self.rows[r][c], self.rows[r - 1][c]) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of incomparable pairs whose larger element sits in a strictly
    /// higher row.
    pub fn inversions(&self, poset: &UnitIntervalPoset) -> usize {
        let mut count = 0;
        for (ri, upper) in self.rows.iter().enumerate() {
            for lower in self.rows.iter().skip(ri + 1) {
                for &u in upper {
                    for &w in lower {
                        if u > w && poset.incomparable(u, w) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }
}

impl fmt::Debug for PTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

/// Streams every P-tableau of the given shape in row-major lexicographic
/// order, passing the inversion count alongside.
pub fn for_each_ptableau<F>(poset: &UnitIntervalPoset, shape: &Partition, mut f: F)
where
    F: FnMut(&PTableau, usize),
{
    let n = poset.n();
    if shape.size() != n {
        return;
    }
    let rows: Vec<usize> = shape.parts().to_vec();
    let mut grid: Vec<Vec<usize>> = rows.iter().map(|&len| vec![0; len]).collect();
    let cells: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    // mask of elements placed strictly above each row; fixed when the row starts
    let mut above = vec![0u32; rows.len()];
    let mut row_mask = vec![0u32; rows.len()];
    let full: u32 = ((1u64 << (n + 1)) - 2) as u32;

    fn rec<F: FnMut(&PTableau, usize)>(
        poset: &UnitIntervalPoset,
        cells: &[(usize, usize)],
        idx: usize,
        used: u32,
        inv: usize,
        grid: &mut Vec<Vec<usize>>,
        above: &mut Vec<u32>,
        row_mask: &mut Vec<u32>,
        full: u32,
        f: &mut F,
    ) {
        if idx == cells.len() {
            let t = PTableau { rows: grid.clone() };
            f(&t, inv);
            return;
        }
        let (r, c) = cells[idx];
        if c == 0 {
            above[r] = if r == 0 { 0 } else { above[r - 1] | row_mask[r - 1] };
        }
        let mut cand = if c == 0 {
            full & !used
        } else {
            poset.succ_mask(grid[r][c - 1]) & !used
        };
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if r > 0 && poset.precedes(v, grid[r - 1][c]) {
                continue;
            }
            let added = (above[r] & poset.greater_incomparable_mask(v)).count_ones() as usize;
            grid[r][c] = v;
            row_mask[r] |= 1 << v;
            rec(poset, cells, idx + 1, used | 1 << v, inv + added, grid, above, row_mask, full, f);
            row_mask[r] &= !(1 << v);
            grid[r][c] = 0;
        }
    }

    rec(poset, &cells, 0, 0, 0, &mut grid, &mut above, &mut row_mask, full, &mut f);
}

/// All P-tableaux of the shape, canonically ordered.
pub fn enumerate_ptableaux(poset: &UnitIntervalPoset, shape: &Partition) -> Vec<PTableau> {
    let mut out = Vec::new();
    for_each_ptableau(poset, shape, |t, _| out.push(t.clone()));
    out
}

/// The generating polynomial `B_shape(q) = sum_T q^{inv(T)}`.
pub fn b_poly<T: Scalar>(poset: &UnitIntervalPoset, shape: &Partition) -> QPoly<T> {
    let mut poly = QPoly::zero();
    for_each_ptableau(poset, shape, |_, inv| poly.bump(inv));
    poly
}

/// `B` of the shape `3^l 2^j 1^r` with `r` forced by `n`; an invalid shape
/// (any negative multiplicity) contributes zero.
pub fn b_poly_3l2j<T: Scalar>(poset: &UnitIntervalPoset, l: i64, j: i64) -> QPoly<T> {
    let n = poset.n() as i64;
    match Partition::from_exponents(&[(3, l), (2, j), (1, n - 3 * l - 2 * j)]) {
        Some(shape) => b_poly(poset, &shape),
        None => QPoly::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::DyckPath;

    fn poset(s: &str) -> UnitIntervalPoset {
        UnitIntervalPoset::from_dyck(&s.parse().unwrap()).unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn t(rows: &[&[usize]]) -> PTableau {
        PTableau::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn validity_examples() {
        let po = poset("2,3");
        assert!(t(&[&[1, 3], &[2]]).is_valid(&po));
        assert!(!t(&[&[2, 3], &[1]]).is_valid(&po)); // 1 precedes 2 below it
        // single column sorted decreasingly over an antichain
        let anti = poset("3,3");
        assert!(t(&[&[3], &[2], &[1]]).is_valid(&anti));
        // duplicates and wrong sizes rejected
        assert!(!t(&[&[1, 3], &[1]]).is_valid(&po));
        assert!(!t(&[&[1, 3]]).is_valid(&po));
    }

    #[test]
    fn inversion_examples() {
        let po = poset("2,3");
        assert_eq!(t(&[&[1, 3], &[2]]).inversions(&po), 1);
        assert_eq!(t(&[&[3], &[2], &[1]]).inversions(&po), 2);
        // chain poset has no incomparable pairs
        let chain = poset("1,2");
        assert_eq!(t(&[&[1, 2], &[3]]).inversions(&chain), 0);
    }

    #[test]
    fn enumeration_examples() {
        let po = poset("2,3");
        let cols = enumerate_ptableaux(&po, &p("1,1,1"));
        assert_eq!(cols.len(), 4);
        let expect = [
            t(&[&[1], &[2], &[3]]),
            t(&[&[1], &[3], &[2]]),
            t(&[&[2], &[1], &[3]]),
            t(&[&[3], &[2], &[1]]),
        ];
        assert_eq!(cols, expect);
        assert!(enumerate_ptableaux(&po, &p("3")).is_empty());
    }

    #[test]
    fn b_poly_examples() {
        let po = poset("2,3");
        assert_eq!(b_poly::<i64>(&po, &p("2,1")).to_string(), "q");
        assert_eq!(b_poly::<i64>(&po, &p("1,1,1")).to_string(), "1+2q+q^2");
    }

    #[test]
    fn shape_beyond_bounce_vanishes() {
        for n in 2..=8 {
            for d in DyckPath::enumerate(n) {
                let po = UnitIntervalPoset::from_dyck(&d).unwrap();
                let bounce = d.bounce_number();
                for shape in Partition::all(n) {
                    if shape.part(0) > bounce {
                        assert!(b_poly::<i64>(&po, &shape).is_zero(), "{d:?} {shape:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn incremental_inversions_match_direct_count() {
        let po = poset("2,4,5,5,6");
        for shape in Partition::all(6) {
            for_each_ptableau(&po, &shape, |t, inv| {
                assert!(t.is_valid(&po));
                assert_eq!(t.inversions(&po), inv, "{t:?}");
            });
        }
    }

    #[test]
    fn block_bound_vanishing() {
        // bounce-3 paths: B(3^l 2^j 1^r) = 0 whenever 2l + j > k
        for n in 3..=7 {
            for d in DyckPath::enumerate(n) {
                let b = d.bounce_data();
                let Some(blocks) = b.blocks() else { continue };
                let po = UnitIntervalPoset::from_dyck(&d).unwrap();
                for l in 0..=(n / 3) as i64 {
                    for j in 0..=((n as i64 - 3 * l) / 2) {
                        if 2 * l + j > blocks.k as i64 {
                            assert!(
                                b_poly_3l2j::<i64>(&po, l, j).is_zero(),
                                "{d:?} l={l} j={j}"
                            );
                        }
                    }
                }
            }
        }
    }
}
