//! Exact arithmetic: rationals, dense univariate and sparse multivariate
//! polynomials, Sylvester resultants, and number fields with dynamic
//! splitting of the defining modulus.

pub mod mpoly;
pub mod number_field;
pub mod parse;
pub mod resultant;
pub mod roots;
pub mod upoly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use mpoly::{MPoly, MPolyRing, QPoly};
pub use number_field::{NfElem, NumberField, SplitEvent};
pub use parse::{parse_polynomial, ParseError};
pub use upoly::UPolyRing;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    NotExact,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("zero divisor found; modulus splits as {0}")]
    Split(SplitEvent),
    #[error("invalid number field modulus: {0}")]
    BadModulus(String),
}

/// A commutative ring given as a context object; elements carry no
/// reference back to their ring.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// `a / b` where `b` is known to divide `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError>;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&rat(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse. In a product of fields this may fail with
    /// [`AlgebraError::Split`] when `a` is a nonzero zero divisor.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, AlgebraError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn div_exact(&self, a: &Rational, b: &Rational) -> Result<Rational, AlgebraError> {
        self.div(a, b)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Result<Rational, AlgebraError> {
        if a.is_zero() {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
}

/// The integers, for fraction-free elimination. `from_rational` truncates,
/// so callers pass integral values only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &Rational) -> BigInt {
        q.to_integer()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Result<BigInt, AlgebraError> {
        if b.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(a / b)
    }
}

/// Least common multiple of the denominators, used to clear fractions.
pub(crate) fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let inv = m[k][k].recip();
        for x in m[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                let row_k = m[k].clone();
                for (x, y) in m[i].iter_mut().zip(&row_k) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
