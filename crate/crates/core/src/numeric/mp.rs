//! Multiprecision complex numbers over binary floating point.

use std::ops::{Add, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;

use crate::algebra::Rational;

pub type Real = FBig<HalfEven>;

/// Working precision in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub bits: usize,
}

impl Precision {
    pub fn from_digits(digits: usize) -> Self {
        // log2(10) < 3.33
        Precision { bits: digits * 333 / 100 + 8 }
    }

    pub fn digits(&self) -> usize {
        (self.bits.saturating_sub(8) * 100).div_ceil(333)
    }

    fn int(&self, n: &BigInt) -> Real {
        super::note_float_use();
        let i: IBig = n.to_string().parse().expect("decimal integer");
        Real::from(i).with_precision(self.bits).value()
    }

    pub fn real(&self, q: &Rational) -> Real {
        self.int(q.numer()) / self.int(q.denom())
    }

    pub fn real_i64(&self, n: i64) -> Real {
        self.int(&BigInt::from(n))
    }

    pub fn from_f64(&self, x: f64) -> Real {
        super::note_float_use();
        Real::try_from(x).expect("finite").with_precision(self.bits).value()
    }

    pub fn zero(&self) -> Cx {
        Cx { re: self.real_i64(0), im: self.real_i64(0) }
    }

    pub fn one(&self) -> Cx {
        self.int_cx(1)
    }

    pub fn int_cx(&self, n: i64) -> Cx {
        Cx { re: self.real_i64(n), im: self.real_i64(0) }
    }

    pub fn rational_cx(&self, q: &Rational) -> Cx {
        Cx { re: self.real(q), im: self.real_i64(0) }
    }

    pub fn cx(&self, re: &Rational, im: &Rational) -> Cx {
        Cx { re: self.real(re), im: self.real(im) }
    }

    /// `2^-bits` scaled by `2^slack`, a convergence threshold.
    pub fn eps(&self, slack: usize) -> Real {
        let e = slack as isize - self.bits as isize;
        Real::from_parts(IBig::from(1), e).with_precision(self.bits).value()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cx {
    pub re: Real,
    pub im: Real,
}

impl Cx {
    pub fn norm2(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm2().sqrt()
    }

    pub fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, s: &Real) -> Cx {
        Cx { re: &self.re * s, im: &self.im * s }
    }

    pub fn div(&self, other: &Cx) -> Cx {
        let n = other.norm2();
        let p = self * &other.conj();
        Cx { re: p.re / &n, im: p.im / n }
    }

    pub fn is_zero(&self) -> bool {
        self.re == Real::ZERO && self.im == Real::ZERO
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().value(), self.im.to_f64().value())
    }

    /// Integer power.
    pub fn powi(&self, e: u32, prec: &Precision) -> Cx {
        (0..e).fold(prec.one(), |acc, _| &acc * self)
    }
}

pub fn real_to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Natural logarithm of a positive real.
pub fn ln(x: &Real) -> Real {
    x.ln()
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        Cx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -&self.re, im: -&self.im }
    }
}

/// Horner evaluation, coefficients constant term first.
pub fn eval_poly(p: &[Cx], x: &Cx, prec: &Precision) -> Cx {
    p.iter().rev().fold(prec.zero(), |acc, c| &(&acc * x) + c)
}

pub fn derivative(p: &[Cx], prec: &Precision) -> Vec<Cx> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&prec.real_i64(i as i64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn one_third_to_sixty_digits() {
        let p = Precision::from_digits(60);
        let x = p.real(&ratio(1, 3));
        let err = (x * p.real_i64(3) - p.real_i64(1)).to_f64().value().abs();
        assert!(err < 1e-59);
        assert!(p.digits() >= 60);
    }

    #[test]
    fn complex_ops() {
        let p = Precision::from_digits(40);
        let i = p.cx(&rat(0), &rat(1));
        let sq = &i * &i;
        assert_eq!(sq.to_f64(), (-1.0, 0.0));
        let q = p.cx(&rat(3), &rat(4));
        assert_eq!(real_to_f64(&q.abs()), 5.0);
        let d = q.div(&i);
        assert_eq!(d.to_f64(), (4.0, -3.0));
    }
}
