//! Independent ground truth: proper-coloring enumeration, basis converters,
//! and acyclic-orientation statistics. Everything here is deliberately naive
//! so it can certify the faster structured pipelines.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{schur_expansion, Basis, SymExpansion};
use crate::kostka::ssyt_count;
use crate::partition::Partition;
use crate::poset::{IncompGraph, UnitIntervalPoset};
use crate::{e_expansion, Int, QPoly};

/// Brute-force size cap, overridable through `CSF_MAX_N`.
pub fn max_n_limit() -> usize {
    std::env::var("CSF_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(9)
}

fn check_limit(n: usize) -> Result<()> {
    let limit = max_n_limit();
    if n > limit {
        return Err(Error::ResourceLimit { n, limit });
    }
    Ok(())
}

/// `q^asc`-weighted count of proper colorings where color `i` is used exactly
/// `counts[i]` times, colors `1..=counts.len()`.
fn coloring_poly(adj: &[u32], counts: &[usize]) -> QPoly {
    let n = adj.len() - 1;
    let mut poly = QPoly::zero();
    let mut remaining = counts.to_vec();
    let mut color_mask = vec![0u32; counts.len()];
    fn rec(
        v: usize,
        n: usize,
        asc: usize,
        adj: &[u32],
        remaining: &mut [usize],
        color_mask: &mut [u32],
        poly: &mut QPoly,
    ) {
        if v > n {
            poly.bump(asc);
            return;
        }
        for c in 0..remaining.len() {
            if remaining[c] == 0 || adj[v] & color_mask[c] != 0 {
                continue;
            }
            // ascents into v from already-colored (smaller-index) neighbors
            let added: usize = (0..c).map(|c2| (adj[v] & color_mask[c2]).count_ones() as usize).sum();
            remaining[c] -= 1;
            color_mask[c] |= 1 << v;
            rec(v + 1, n, asc + added, adj, remaining, color_mask, poly);
            color_mask[c] &= !(1 << v);
            remaining[c] += 1;
        }
    }
    rec(1, n, 0, adj, &mut remaining, &mut color_mask, &mut poly);
    poly
}

/// Monomial expansion of `X_G(x, q)` by direct coloring enumeration. The
/// coefficient of `m_lambda` is read off one representative monomial; a
/// second color-to-part assignment cross-checks that the result is symmetric.
pub fn monomial_expansion_bruteforce(g: &IncompGraph) -> Result<SymExpansion<Int>> {
    check_limit(g.n)?;
    let adj = g.adjacency();
    let mut x = SymExpansion::new(Basis::Monomial, g.n);
    for lambda in Partition::all(g.n) {
        let counts = lambda.parts().to_vec();
        let poly = coloring_poly(&adj, &counts);
        let mut reversed = counts.clone();
        reversed.reverse();
        if reversed != counts {
            let again = coloring_poly(&adj, &reversed);
            if again != poly {
                return Err(Error::Precondition(format!(
                    "coloring function not symmetric at {lambda}"
                )));
            }
        }
        x.add_term(lambda, &poly);
    }
    Ok(x)
}

type MonomialTable = BTreeMap<Partition, BTreeMap<Partition, Int>>;

fn e_table_cache() -> &'static Mutex<HashMap<usize, Arc<MonomialTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MonomialTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Monomial expansions of every `e_lambda`, `lambda` a partition of `n`, by
/// exact polynomial multiplication in `n` variables.
pub fn elementary_monomial_table(n: usize) -> Arc<MonomialTable> {
    if let Some(t) = e_table_cache().lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let mut table = MonomialTable::new();
    for lambda in Partition::all(n) {
        // product over parts of e_k = sum over k-subsets of variables
        let mut poly: HashMap<Vec<u8>, Int> = HashMap::new();
        poly.insert(vec![0u8; n], 1);
        for &k in lambda.parts() {
            let mut next: HashMap<Vec<u8>, Int> = HashMap::new();
            let subsets = k_subsets(n, k);
            for (exp, coef) in &poly {
                for subset in &subsets {
                    let mut e = exp.clone();
                    for &i in subset {
                        e[i] += 1;
                    }
                    *next.entry(e).or_insert(0) += coef;
                }
            }
            poly = next;
        }
        let mut row = BTreeMap::new();
        for mu in Partition::all(n) {
            let mut rep = vec![0u8; n];
            for (i, &p) in mu.parts().iter().enumerate() {
                rep[i] = p as u8;
            }
            let c = poly.get(&rep).copied().unwrap_or(0);
            if c != 0 {
                row.insert(mu, c);
            }
        }
        table.insert(lambda, row);
    }
    let arc = Arc::new(table);
    e_table_cache().lock().unwrap().insert(n, Arc::clone(&arc));
    arc
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Converts an elementary expansion to the monomial basis.
pub fn e_to_m(x: &SymExpansion<Int>) -> Result<SymExpansion<Int>> {
    if x.basis() != Basis::Elementary {
        return Err(Error::WrongBasis { expected: "e", got: x.basis().letter() });
    }
    let table = elementary_monomial_table(x.n());
    let mut out = SymExpansion::new(Basis::Monomial, x.n());
    for (lambda, poly) in x.iter() {
        for (mu, &count) in &table[lambda] {
            let mut scaled = QPoly::zero();
            for (k, c) in poly.coeffs().iter().enumerate() {
                scaled.add_term(k, c * count);
            }
            out.add_term(mu.clone(), &scaled);
        }
    }
    Ok(out)
}

/// Converts a Schur expansion to the monomial basis through the Kostka matrix.
pub fn s_to_m(x: &SymExpansion<Int>) -> Result<SymExpansion<Int>> {
    if x.basis() != Basis::Schur {
        return Err(Error::WrongBasis { expected: "s", got: x.basis().letter() });
    }
    let mut out = SymExpansion::new(Basis::Monomial, x.n());
    for (lambda, poly) in x.iter() {
        for nu in Partition::all(x.n()) {
            let k = ssyt_count(lambda, &nu)? as Int;
            if k == 0 {
                continue;
            }
            let mut scaled = QPoly::zero();
            for (p, c) in poly.coeffs().iter().enumerate() {
                scaled.add_term(p, c * k);
            }
            out.add_term(nu, &scaled);
        }
    }
    Ok(out)
}

/// `sum q^{asc(o)}` over acyclic orientations, indexed by sink count
/// (position `j` holds the polynomial for `j` sinks; index 0 unused).
pub fn acyclic_orientation_polys(g: &IncompGraph) -> Result<Vec<QPoly>> {
    check_limit(g.n)?;
    let n = g.n;
    let e = g.edges.len();
    let mut polys = vec![QPoly::zero(); n + 1];
    for mask in 0u64..1u64 << e {
        // bit set: edge (u, v) with u < v directed u -> v, contributing an ascent
        let mut out_deg = vec![0usize; n + 1];
        let mut in_deg = vec![0usize; n + 1];
        let mut heads: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, &(u, v)) in g.edges.iter().enumerate() {
            let (from, to) = if mask >> i & 1 == 1 { (u, v) } else { (v, u) };
            out_deg[from] += 1;
            in_deg[to] += 1;
            heads[from].push(to);
        }
        // Kahn's algorithm
        let mut queue: Vec<usize> = (1..=n).filter(|&v| in_deg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &heads[v] {
                in_deg[w] -= 1;
                if in_deg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if seen != n {
            continue; // cyclic
        }
        let sinks = (1..=n).filter(|&v| out_deg[v] == 0).count();
        polys[sinks].bump(mask.count_ones() as usize);
    }
    Ok(polys)
}

pub fn acyclic_orientation_poly(g: &IncompGraph, j: usize) -> Result<QPoly> {
    let polys = acyclic_orientation_polys(g)?;
    Ok(polys.get(j).cloned().unwrap_or_else(QPoly::zero))
}

/// Number of proper colorings of `g` with palette `1..=t`.
pub fn proper_colorings(g: &IncompGraph, t: usize) -> Int {
    let adj = g.adjacency();
    fn rec(v: usize, n: usize, t: usize, adj: &[u32], masks: &mut Vec<u32>) -> Int {
        if v > n {
            return 1;
        }
        let mut acc = 0;
        for c in 0..t {
            if adj[v] & masks[c] == 0 {
                masks[c] |= 1 << v;
                acc += rec(v + 1, n, t, adj, masks);
                masks[c] &= !(1 << v);
            }
        }
        acc
    }
    let mut masks = vec![0u32; t];
    rec(1, g.n, t, &adj, &mut masks)
}

/// Counts acyclic orientations as `(-1)^n chi_G(-1)`, with the chromatic
/// polynomial pinned by its values at `0..=n` via Newton forward differences.
pub fn acyclic_orientation_count_via_chromatic(g: &IncompGraph) -> Int {
    let n = g.n;
    let mut diffs: Vec<Int> = (0..=n).map(|t| proper_colorings(g, t)).collect();
    // chi(-1) = sum_k (-1)^k Delta^k chi(0)
    let mut chi_neg1 = 0;
    let mut sign = 1;
    for k in 0..=n {
        chi_neg1 += sign * diffs[0];
        sign = -sign;
        for i in 0..n - k {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
    }
    if n.is_multiple_of(2) {
        chi_neg1
    } else {
        -chi_neg1
    }
}

/// Joint consistency report: both structured expansions agree with the
/// brute-force monomial expansion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossReport {
    pub dyck: Vec<usize>,
    pub pass: bool,
    pub first_discrepancy: Option<String>,
}

pub fn cross_validate(poset: &UnitIntervalPoset) -> Result<CrossReport> {
    let g = poset.incomparability_graph();
    let brute = monomial_expansion_bruteforce(&g)?;
    let via_schur = s_to_m(&schur_expansion(poset))?;
    let via_elementary = e_to_m(&e_expansion(poset))?;
    let mut first = None;
    if via_schur != brute {
        first = Some(first_diff("s_to_m(schur)", &via_schur, &brute));
    } else if via_elementary != brute {
        first = Some(first_diff("e_to_m(e)", &via_elementary, &brute));
    }
    Ok(CrossReport {
        dyck: poset.dyck().d().to_vec(),
        pass: first.is_none(),
        first_discrepancy: first,
    })
}

fn first_diff(label: &str, got: &SymExpansion<Int>, want: &SymExpansion<Int>) -> String {
    for mu in Partition::all(want.n()) {
        let g = got.coeff(&mu);
        let w = want.coeff(&mu);
        if g != w {
            return format!("{label} at m_({mu}): got {g}, want {w}");
        }
    }
    format!("{label}: expansions differ")
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

    #[test]
    fn brute_force_k2_and_edgeless() {
        let k2 = poset("2").incomparability_graph();
        let x = monomial_expansion_bruteforce(&k2).unwrap();
        assert_eq!(x.coeff(&p("1,1")).to_string(), "1+q");
        assert_eq!(x.len(), 1);

        let edgeless = poset("1").incomparability_graph(); // chain on 2 vertices
        let y = monomial_expansion_bruteforce(&edgeless).unwrap();
        assert_eq!(y.coeff(&p("2")).to_string(), "1");
        assert_eq!(y.coeff(&p("1,1")).to_string(), "2");
    }

    #[test]
    fn limit_is_enforced() {
        let d = crate::dyck::DyckPath::new(vec![10; 9]).unwrap(); // K_10
        let g = UnitIntervalPoset::from_dyck(&d).unwrap().incomparability_graph();
        assert!(matches!(
            monomial_expansion_bruteforce(&g),
            Err(Error::ResourceLimit { n: 10, .. })
        ));
    }

    #[test]
    fn e_to_m_basics() {
        let n2 = elementary_monomial_table(2);
        // e_1 e_1 = m_2 + 2 m_11, e_2 = m_11
        assert_eq!(n2[&p("1,1")][&p("2")], 1);
        assert_eq!(n2[&p("1,1")][&p("1,1")], 2);
        assert_eq!(n2[&p("2")].get(&p("2")), None);
        assert_eq!(n2[&p("2")][&p("1,1")], 1);
        // e_n = m_{1^n}
        let n4 = elementary_monomial_table(4);
        assert_eq!(n4[&p("4")].len(), 1);
        assert_eq!(n4[&p("4")][&p("1,1,1,1")], 1);
    }

    #[test]
    fn s_to_m_example() {
        let mut s = SymExpansion::new(Basis::Schur, 3);
        s.add_term(p("2,1"), &QPoly::one());
        let m = s_to_m(&s).unwrap();
        assert_eq!(m.coeff(&p("2,1")).to_string(), "1");
        assert_eq!(m.coeff(&p("1,1,1")).to_string(), "2");
        assert_eq!(m.coeff(&p("3")).to_string(), "0");
    }

    #[test]
    fn wrong_basis_rejected() {
        let m = monomial_expansion_bruteforce(&poset("2").incomparability_graph()).unwrap();
        assert!(e_to_m(&m).is_err());
        assert!(s_to_m(&m).is_err());
    }

    #[test]
    fn acyclic_orientations_k2() {
        let k2 = poset("2").incomparability_graph();
        assert_eq!(acyclic_orientation_poly(&k2, 1).unwrap().to_string(), "1+q");
        assert_eq!(acyclic_orientation_poly(&k2, 2).unwrap().to_string(), "0");

        let edgeless = poset("1,2").incomparability_graph();
        assert_eq!(acyclic_orientation_poly(&edgeless, 3).unwrap().to_string(), "1");
    }

    #[test]
    fn acyclic_count_matches_chromatic_oracle() {
        for n in 2..=5 {
            for d in DyckPath::enumerate(n) {
                let g = UnitIntervalPoset::from_dyck(&d).unwrap().incomparability_graph();
                let via_enum: Int = acyclic_orientation_polys(&g)
                    .unwrap()
                    .iter()
                    .map(|p| p.eval_at_one())
                    .sum();
                assert_eq!(via_enum, acyclic_orientation_count_via_chromatic(&g), "{d:?}");
            }
        }
    }

    #[test]
    fn cross_validate_small() {
        for s in ["2,3", "1,2", "3,3", "2,3,4,5"] {
            let r = cross_validate(&poset(s)).unwrap();
            assert!(r.pass, "{s}: {:?}", r.first_discrepancy);
        }
    }

    #[test]
    fn q1_specialization_counts_colorings() {
        // substituting x_1 = ... = x_t = 1 into the monomial expansion counts
        // proper colorings with t colors
        for s in ["2,3", "2,3,4,5", "1,3,4", "2,4,5,5,6"] {
            let g = poset(s).incomparability_graph();
            let x = monomial_expansion_bruteforce(&g).unwrap();
            for t in 1..=3usize {
                let mut total: Int = 0;
                for (lambda, poly) in x.iter() {
                    if lambda.len() > t {
                        continue;
                    }
                    total += poly.eval_at_one() * monomials_in_t_vars(lambda, t);
                }
                assert_eq!(total, proper_colorings(&g, t), "{s} t={t}");
            }
        }
    }

    fn monomials_in_t_vars(lambda: &Partition, t: usize) -> Int {
        // distinct rearrangements of lambda padded with zeros to length t
        let mut mult: HashMap<usize, Int> = HashMap::new();
        for &p in lambda.parts() {
            *mult.entry(p).or_insert(0) += 1;
        }
        *mult.entry(0).or_insert(0) += (t - lambda.len()) as Int;
        let fact = |k: Int| (1..=k).product::<Int>();
        mult.values().fold(fact(t as Int), |acc, &m| acc / fact(m))
    }
}
