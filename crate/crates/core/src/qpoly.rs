//! Polynomials in `q` with exact integer coefficients.
//!
//! The ring is generic over the coefficient scalar through `num-traits`, so the
//! same arithmetic runs over `i64`, `i128`, or any other signed exact integer
//! type. `crate::QPoly` pins the default scalar used by the rest of the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// Coefficient scalar: a signed exact integer type.
pub trait Scalar:
    Signed + Ord + Clone + fmt::Display + fmt::Debug + AddAssign + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Signed + Ord + Clone + fmt::Display + fmt::Debug + AddAssign + Send + Sync + 'static
{
}

/// Dense polynomial in `q`, coefficients ascending from `q^0`.
/// Canonical form carries no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPoly<T>(Vec<T>);

impl<T: Scalar> QPoly<T> {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![T::one()])
    }

    /// The monomial `q^k`.
    pub fn q_power(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        QPoly(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = QPoly(coeffs);
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> T {
        self.0.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, k: usize, c: T) {
        if c.is_zero() {
            return;
        }
        if self.0.len() <= k {
            self.0.resize(k + 1, T::zero());
        }
        self.0[k] += c;
        self.normalize();
    }

    /// Adds `q^k` to the polynomial; the accumulation step of every
    /// generating function in the crate.
    pub fn bump(&mut self, k: usize) {
        self.add_term(k, T::one());
    }

    pub fn eval_at_one(&self) -> T {
        let mut acc = T::zero();
        for c in &self.0 {
            acc += c.clone();
        }
        acc
    }

    /// First coefficient that is negative, as `(power, coefficient)`.
    pub fn first_negative(&self) -> Option<(usize, T)> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, c)| c.is_negative())
            .map(|(k, c)| (k, c.clone()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        let mut coeffs = vec![T::zero(); self.0.len().max(rhs.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        for (i, c) in rhs.0.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        QPoly::from_coeffs(coeffs)
    }

    fn sub_impl(&self, rhs: &Self) -> Self {
        self.add_impl(&rhs.clone().neg())
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![T::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Neg for QPoly<T> {
    type Output = QPoly<T>;
    fn neg(self) -> QPoly<T> {
        QPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl<T: Scalar> $trait for &QPoly<T> {
            type Output = QPoly<T>;
            fn $method(self, rhs: &QPoly<T>) -> QPoly<T> {
                self.$impl_fn(rhs)
            }
        }
        impl<T: Scalar> $trait for QPoly<T> {
            type Output = QPoly<T>;
            fn $method(self, rhs: QPoly<T>) -> QPoly<T> {
                self.$impl_fn(&rhs)
            }
        }
        impl<T: Scalar> $trait<&QPoly<T>> for QPoly<T> {
            type Output = QPoly<T>;
            fn $method(self, rhs: &QPoly<T>) -> QPoly<T> {
                self.$impl_fn(rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_impl);
impl_binop!(Sub, sub, sub_impl);
impl_binop!(Mul, mul, mul_impl);

impl<T: Scalar> AddAssign<&QPoly<T>> for QPoly<T> {
    fn add_assign(&mut self, rhs: &QPoly<T>) {
        *self = self.add_impl(rhs);
    }
}

/// Prints like `1+2q+q^2`; negative coefficients as `q-1` -> `-1+q`.
impl<T: Scalar> fmt::Display for QPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = T::one();
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != one {
                        write!(f, "{abs}")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for QPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
