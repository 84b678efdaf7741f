//! Symmetric function expansions of `X_G(x, q)` and their positivity.
//!
//! The Schur expansion counts P-tableaux by shape (weighted by inversions);
//! the elementary expansion composes that with the inverse Kostka matrix.
//! For bounce-number-3 paths the elementary coefficients also have closed
//! forms as signed combinations of `B` polynomials.

use std::collections::BTreeMap;

use num_traits::NumCast;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kostka::inverse_kostka_column;
use crate::partition::Partition;
use crate::poset::UnitIntervalPoset;
use crate::ptableau::{b_poly, b_poly_3l2j};
use crate::qpoly::{QPoly, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "s")]
    Schur,
    #[serde(rename = "e")]
    Elementary,
}

impl Basis {
    pub fn letter(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Schur => "s",
            Basis::Elementary => "e",
        }
    }
}

/// A finite sum `sum_lambda c_lambda(q) b_lambda` in one basis. Zero
/// polynomials are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"),
    into = "ExpansionRecords<T>",
    try_from = "ExpansionRecords<T>"
)]
pub struct SymExpansion<T: Scalar> {
    basis: Basis,
    n: usize,
    terms: BTreeMap<Partition, QPoly<T>>,
}

impl<T: Scalar> SymExpansion<T> {
    pub fn new(basis: Basis, n: usize) -> Self {
        SymExpansion { basis, n, terms: BTreeMap::new() }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, partition: Partition, poly: &QPoly<T>) {
        if poly.is_zero() {
            return;
        }
        debug_assert_eq!(partition.size(), self.n);
        let entry = self.terms.entry(partition).or_insert_with(QPoly::zero);
        *entry += poly;
        if entry.is_zero() {
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    pub fn coeff(&self, partition: &Partition) -> QPoly<T> {
        self.terms.get(partition).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lexicographic partition order, the serialization
    /// and reporting order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &QPoly<T>)> {
        self.terms.iter().rev()
    }
}

/// Wire form: a list of `{partition, poly}` records sorted by partition in
/// reverse lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct ExpansionRecords<T: Scalar> {
    pub basis: Basis,
    pub n: usize,
    pub terms: Vec<TermRecord<T>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct TermRecord<T: Scalar> {
    pub partition: Partition,
    pub poly: QPoly<T>,
}

impl<T: Scalar> From<SymExpansion<T>> for ExpansionRecords<T> {
    fn from(x: SymExpansion<T>) -> Self {
        let terms = x
            .iter()
            .map(|(p, c)| TermRecord { partition: p.clone(), poly: c.clone() })
            .collect();
        ExpansionRecords { basis: x.basis, n: x.n, terms }
    }
}

impl<T: Scalar> TryFrom<ExpansionRecords<T>> for SymExpansion<T> {
    type Error = Error;

    fn try_from(r: ExpansionRecords<T>) -> Result<Self> {
        let mut x = SymExpansion::new(r.basis, r.n);
        for term in r.terms {
            if term.partition.size() != r.n {
                return Err(Error::InvalidPartition(format!(
                    "term {} does not partition {}",
                    term.partition, r.n
                )));
            }
            x.add_term(term.partition, &term.poly);
        }
        Ok(x)
    }
}

/// All `B` polynomials of the poset, keyed by shape; only shapes whose first
/// part is at most the bounce number can be nonzero.
pub fn b_polys<T: Scalar>(poset: &UnitIntervalPoset) -> BTreeMap<Partition, QPoly<T>> {
    let bounce = poset.bounce().bounce_number();
    let mut out = BTreeMap::new();
    for shape in Partition::all_with_max_part(poset.n(), bounce.min(poset.n())) {
        let poly = b_poly(poset, &shape);
        if !poly.is_zero() {
            out.insert(shape, poly);
        }
    }
    out
}

/// `X_G(x,q) = sum_T q^{inv(T)} s_{sh(T)}`.
pub fn schur_expansion<T: Scalar>(poset: &UnitIntervalPoset) -> SymExpansion<T> {
    let mut x = SymExpansion::new(Basis::Schur, poset.n());
    for (shape, poly) in b_polys(poset) {
        x.add_term(shape, &poly);
    }
    x
}

/// `X_G(x,q) = sum_mu sum_lambda B_mu(q) Kinv[lambda][mu'] e_lambda`,
/// valid for any bounce number.
pub fn e_expansion<T: Scalar + NumCast>(poset: &UnitIntervalPoset) -> SymExpansion<T> {
    e_expansion_from_b(poset.n(), &b_polys(poset))
}

/// As `e_expansion`, reusing precomputed `B` polynomials.
pub fn e_expansion_from_b<T: Scalar + NumCast>(
    n: usize,
    b: &BTreeMap<Partition, QPoly<T>>,
) -> SymExpansion<T> {
    let mut x = SymExpansion::new(Basis::Elementary, n);
    for (mu, poly) in b {
        for (lambda, coef) in inverse_kostka_column(&mu.conjugate()) {
            let scale: T = NumCast::from(coef).expect("inverse Kostka entry fits the scalar");
            let mut scaled = QPoly::zero();
            for (k, c) in poly.coeffs().iter().enumerate() {
                scaled.add_term(k, c.clone() * scale.clone());
            }
            x.add_term(lambda, &scaled);
        }
    }
    x
}

/// `B` of the shape `3^l 2^j 1^(n-3l-2j)` out of a precomputed map; invalid
/// or absent shapes contribute zero.
fn b_of<T: Scalar>(b: &BTreeMap<Partition, QPoly<T>>, n: usize, l: i64, j: i64) -> QPoly<T> {
    match Partition::from_exponents(&[(3, l), (2, j), (1, n as i64 - 3 * l - 2 * j)]) {
        Some(shape) => b.get(&shape).cloned().unwrap_or_else(QPoly::zero),
        None => QPoly::zero(),
    }
}

/// The closed-form cell value at `(l, j)` from precomputed `B` polynomials.
pub fn bounce3_cell_from_b<T: Scalar>(
    b: &BTreeMap<Partition, QPoly<T>>,
    n: usize,
    l: usize,
    j: usize,
) -> QPoly<T> {
    let (l, j) = (l as i64, j as i64);
    let b = |l, j| b_of(b, n, l, j);
    match j {
        0 => b(l, 0) - b(l, 1) + b(l + 1, 0),
        1 => b(l, 1) - b(l, 2) + b(l + 1, 1) - b(l + 1, 0),
        _ => b(l, j) - b(l, j + 1) + b(l + 1, j) - b(l + 1, j - 2) + b(l + 2, j - 3)
            - b(l + 2, j - 2),
    }
}

/// The sorted elementary-basis target `e_(n-2l-j, l+j, l)` of a closed-form
/// cell. Compositions sort into their partition; zero parts drop.
pub fn bounce3_target(n: usize, l: usize, j: usize) -> Partition {
    Partition::from_unsorted(vec![n - 2 * l - j, l + j, l])
}

/// Closed-form coefficient of `e_(n-2l-j, l+j, l)` for bounce-3 paths:
/// three `B` terms at `j = 0`, four at `j = 1`, six at `j >= 2`.
/// `B` of a shape with a negative multiplicity is zero.
pub fn e_coeff_bounce3<T: Scalar>(poset: &UnitIntervalPoset, l: usize, j: usize) -> Result<QPoly<T>> {
    let bounce = poset.bounce();
    let blocks = bounce
        .blocks()
        .ok_or_else(|| Error::Precondition(format!("bounce number {} != 3", bounce.bounce_number())))?;
    let min_abc = blocks.a.min(blocks.b).min(blocks.c);
    if l > min_abc {
        return Err(Error::OutOfRange(format!("l = {l} > min(a,b,c) = {min_abc}")));
    }
    if 2 * l + j > blocks.k {
        return Err(Error::OutOfRange(format!("j = {j} > k - 2l = {}", blocks.k - 2 * l)));
    }
    let (l, j) = (l as i64, j as i64);
    let b = |l: i64, j: i64| b_poly_3l2j::<T>(poset, l, j);
    Ok(match j {
        0 => b(l, 0) - b(l, 1) + b(l + 1, 0),
        1 => b(l, 1) - b(l, 2) + b(l + 1, 1) - b(l + 1, 0),
        _ => b(l, j) - b(l, j + 1) + b(l + 1, j) - b(l + 1, j - 2) + b(l + 2, j - 3)
            - b(l + 2, j - 2),
    })
}

/// The whole closed-form elementary expansion for a bounce-3 path: every cell
/// `(l, j)` accumulated onto its sorted target. Cells whose literal target is
/// not weakly decreasing fold into the partition they sort to, which is how
/// the cell grid and the generic expansion reconcile.
pub fn bounce3_closed_form<T: Scalar>(poset: &UnitIntervalPoset) -> Result<SymExpansion<T>> {
    bounce3_closed_form_from_b(poset, &b_polys(poset))
}

/// As `bounce3_closed_form`, reusing precomputed `B` polynomials.
pub fn bounce3_closed_form_from_b<T: Scalar>(
    poset: &UnitIntervalPoset,
    b: &BTreeMap<Partition, QPoly<T>>,
) -> Result<SymExpansion<T>> {
    let blocks = poset
        .bounce()
        .blocks()
        .ok_or_else(|| Error::Precondition("bounce number != 3".into()))?;
    let n = poset.n();
    let min_abc = blocks.a.min(blocks.b).min(blocks.c);
    let mut x = SymExpansion::new(Basis::Elementary, n);
    for l in 0..=min_abc {
        for j in 0..=blocks.k - 2 * l {
            let cell = bounce3_cell_from_b(b, n, l, j);
            x.add_term(bounce3_target(n, l, j), &cell);
        }
    }
    Ok(x)
}

/// The reduced expansion for paths `(d_1, d_2, n-1, ..., n-1, n, ..., n)`:
/// the `l in {0, 1}` cell coefficients plus the `e_(n-2,2)` and `e_(n-3,3)`
/// groups. Agrees with `e_expansion` term by term.
pub fn reduced_expansion_thm41<T: Scalar>(poset: &UnitIntervalPoset) -> Result<SymExpansion<T>> {
    if !poset.dyck().is_thm41_class() {
        return Err(Error::Precondition(format!(
            "{} is not in the thm41 path class",
            poset.dyck()
        )));
    }
    let n = poset.n();
    let b = |l: i64, j: i64| b_poly_3l2j::<T>(poset, l, j);
    let mut x = SymExpansion::new(Basis::Elementary, n);
    for l in 0..=1i64 {
        let c0 = b(l, 0) - b(l, 1) + b(l + 1, 0);
        let c1 = b(l, 1) - b(l, 2) + b(l + 1, 1) - b(l + 1, 0);
        let lu = l as usize;
        x.add_term(bounce3_target(n, lu, 0), &c0);
        x.add_term(bounce3_target(n, lu, 1), &c1);
    }
    // coefficient of e_(n-2,2): B_{2^2 1^{n-4}} - B_{2^3 1^{n-6}} - B_{3 1^{n-3}}
    let c22 = b(0, 2) - b(0, 3) - b(1, 0);
    x.add_term(bounce3_target(n, 0, 2), &c22);
    // coefficient of e_(n-3,3): B_{2^3 1^{n-6}} - B_{3 2 1^{n-5}}
    let c33 = b(0, 3) - b(1, 1);
    x.add_term(bounce3_target(n, 0, 3), &c33);
    Ok(x)
}

/// First negative coefficient of an elementary expansion, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EPositivityWitness {
    pub partition: Partition,
    pub power: usize,
    pub coefficient: i64,
}

/// Checks every coefficient of every term is nonnegative. Returns the first
/// violation in serialization order (descending lex partitions, ascending
/// powers) if one exists.
pub fn e_positivity_witness<T: Scalar + NumCast>(
    x: &SymExpansion<T>,
) -> Result<Option<EPositivityWitness>> {
    if x.basis() != Basis::Elementary {
        return Err(Error::WrongBasis { expected: "e", got: x.basis().letter() });
    }
    for (partition, poly) in x.iter() {
        if let Some((power, c)) = poly.first_negative() {
            return Ok(Some(EPositivityWitness {
                partition: partition.clone(),
                power,
                coefficient: NumCast::from(c).unwrap_or(i64::MIN),
            }));
        }
    }
    Ok(None)
}

pub fn is_e_positive<T: Scalar + NumCast>(x: &SymExpansion<T>) -> Result<bool> {
    Ok(e_positivity_witness(x)?.is_none())
}
