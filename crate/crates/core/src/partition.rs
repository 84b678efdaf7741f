//! Integer partitions and their Young diagrams.
//!
//! Partitions index every basis element and every tableau shape in the crate.
//! Parts are stored weakly decreasing; the empty partition (of 0) is allowed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the given parts, dropping zeros. Panics on no input errors.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Expands `(part, multiplicity)` pairs, e.g. `3^l 2^j 1^r`.
    /// Returns `None` if any multiplicity is negative: the shape does not exist.
    pub fn from_exponents(pairs: &[(usize, i64)]) -> Option<Self> {
        let mut parts = Vec::new();
        for &(part, mult) in pairs {
            if mult < 0 {
                return None;
            }
            parts.extend(std::iter::repeat_n(part, mult as usize));
        }
        Some(Partition::from_unsorted(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The part at `i` (0-indexed), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of parts equal to `p`.
    pub fn multiplicity(&self, p: usize) -> usize {
        self.0.iter().filter(|&&q| q == p).count()
    }

    /// Conjugate partition: column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|i| self.0.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition(parts)
    }

    /// All partitions of `n` in descending lexicographic order: `(n)` first, `(1^n)` last.
    pub fn all(n: usize) -> Vec<Partition> {
        Self::all_with_max_part(n, n)
    }

    /// All partitions of `n` whose largest part is at most `max_part`, descending lex.
    pub fn all_with_max_part(n: usize, max_part: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, max_part, &mut Vec::new(), &mut out);
        out
    }

    /// Descending-lexicographic comparison, the serialization order of expansions.
    pub fn cmp_desc_lex(&self, other: &Partition) -> std::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma-separated decreasing integers. Exponent notation is
    /// accepted per token: `3^2,1` means `(3,3,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let (base, mult) = match token.split_once('^') {
                Some((b, m)) => {
                    let mult: usize = m
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?;
                    (b.trim(), mult)
                }
                None => (token, 1),
            };
            let part: usize = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part in {token:?}")))?;
            if part == 0 {
                return Err(Error::InvalidPartition("parts must be positive".into()));
            }
            parts.extend(std::iter::repeat_n(part, mult));
        }
        Ok(Partition::from_unsorted(parts))
    }
}
