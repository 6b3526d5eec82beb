//! Arithmetic in `Q[t]/(m)` for a monic squarefree `m`. The modulus need not
//! be irreducible: when an inversion meets a zero divisor the computation is
//! interrupted with a [`SplitEvent`] and the caller re-runs it on each factor
//! (dynamic evaluation).

use std::fmt;

use num_traits::Zero;

use super::upoly::{self, fmt_qpoly};
use super::{AlgebraError, Field, Rational, Rationals, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    pub gen: String,
    modulus: Vec<Rational>,
}

/// Reduced representative: a polynomial in the generator of degree below
/// the modulus degree, constant term first.
pub type NfElem = Vec<Rational>;

/// A discovered factorization `modulus = left * right` into coprime monic
/// nonconstant factors.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitEvent {
    pub gen: String,
    pub left: Vec<Rational>,
    pub right: Vec<Rational>,
}

impl fmt::Display for SplitEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) * ({})",
            fmt_qpoly(&self.left, &self.gen),
            fmt_qpoly(&self.right, &self.gen)
        )
    }
}

impl SplitEvent {
    pub fn branches(&self) -> [NumberField; 2] {
        [
            NumberField { gen: self.gen.clone(), modulus: self.left.clone() },
            NumberField { gen: self.gen.clone(), modulus: self.right.clone() },
        ]
    }
}

impl NumberField {
    pub fn new(gen: &str, modulus: Vec<Rational>) -> Result<Self, AlgebraError> {
        let m = upoly::trimmed(&Rationals, modulus);
        if m.len() < 2 {
            return Err(AlgebraError::BadModulus("modulus must be nonconstant".into()));
        }
        let m = upoly::monic(&Rationals, &m)?;
        if !upoly::is_squarefree(&Rationals, &m)? {
            return Err(AlgebraError::BadModulus(format!(
                "{} is not squarefree",
                fmt_qpoly(&m, gen)
            )));
        }
        Ok(NumberField { gen: gen.to_string(), modulus: m })
    }

    /// `Q` presented as `Q[t]/(t)`.
    pub fn rationals(gen: &str) -> Self {
        NumberField { gen: gen.to_string(), modulus: vec![Rational::zero(), super::rat(1)] }
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, p: &[Rational]) -> NfElem {
        upoly::rem(&Rationals, p, &self.modulus).expect("modulus is nonzero")
    }

    pub fn generator(&self) -> NfElem {
        self.reduce(&upoly::var(&Rationals))
    }

    /// The image of `e` (an element of a field whose modulus is a multiple of
    /// this one) in this field.
    pub fn restrict(&self, e: &NfElem) -> NfElem {
        self.reduce(e)
    }

    /// Exact zero test valid in every component of the product of fields:
    /// `Ok(true)` for zero, `Ok(false)` for a unit, and a split when `e` is a
    /// nonzero zero divisor.
    pub fn decide_zero(&self, e: &NfElem) -> Result<bool, AlgebraError> {
        if e.is_empty() {
            return Ok(true);
        }
        let g = upoly::gcd(&Rationals, e, &self.modulus)?;
        if g.len() == 1 {
            Ok(false)
        } else {
            Err(self.split_by(&g))
        }
    }

    /// Like [`decide_zero`](Self::decide_zero) for several elements at once;
    /// returns one flag per element.
    pub fn decide_zero_all(&self, es: &[NfElem]) -> Result<Vec<bool>, AlgebraError> {
        es.iter().map(|e| self.decide_zero(e)).collect()
    }

    pub fn is_unit(&self, e: &NfElem) -> Result<bool, AlgebraError> {
        Ok(!self.decide_zero(e)?)
    }

    fn split_by(&self, g: &[Rational]) -> AlgebraError {
        let right = upoly::div_exact(&Rationals, &self.modulus, g).expect("factor of modulus");
        AlgebraError::Split(SplitEvent {
            gen: self.gen.clone(),
            left: g.to_vec(),
            right: upoly::monic(&Rationals, &right).expect("nonzero cofactor"),
        })
    }

    /// Rational value of an element known to be constant.
    pub fn as_rational(&self, e: &NfElem) -> Option<Rational> {
        match e.len() {
            0 => Some(Rational::zero()),
            1 => Some(e[0].clone()),
            _ => None,
        }
    }

    pub fn fmt_elem(&self, e: &NfElem) -> String {
        fmt_qpoly(e, &self.gen)
    }
}

impl Ring for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        Vec::new()
    }
    fn one(&self) -> NfElem {
        vec![super::rat(1)]
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        upoly::add(&Rationals, a, b)
    }
    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        upoly::sub(&Rationals, a, b)
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.reduce(&upoly::mul(&Rationals, a, b))
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        upoly::neg(&Rationals, a)
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.is_empty()
    }
    fn from_rational(&self, q: &Rational) -> NfElem {
        upoly::constant(&Rationals, q.clone())
    }
    fn div_exact(&self, a: &NfElem, b: &NfElem) -> Result<NfElem, AlgebraError> {
        self.div(a, b)
    }
}

impl Field for NumberField {
    fn inv(&self, a: &NfElem) -> Result<NfElem, AlgebraError> {
        if a.is_empty() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (g, s, _) = upoly::ext_gcd(&Rationals, a, &self.modulus)?;
        if g.len() == 1 {
            Ok(self.reduce(&s))
        } else {
            Err(self.split_by(&g))
        }
    }
}

/// Chinese remainder: the unique element of `Q[t]/(m1*m2)` restricting to
/// `e1` and `e2`. The moduli must be coprime.
pub fn crt(
    m1: &NumberField,
    e1: &NfElem,
    m2: &NumberField,
    e2: &NfElem,
) -> Result<(NumberField, NfElem), AlgebraError> {
    let q = Rationals;
    let (g, s, t) = upoly::ext_gcd(&q, &m1.modulus, &m2.modulus)?;
    if g.len() != 1 {
        return Err(AlgebraError::BadModulus("CRT moduli are not coprime".into()));
    }
    // s*m1 + t*m2 = 1, so e1*t*m2 + e2*s*m1 restricts correctly
    let prod = NumberField::new(&m1.gen, upoly::mul(&q, &m1.modulus, &m2.modulus))?;
    let a = upoly::mul(&q, &upoly::mul(&q, e1, &t), &m2.modulus);
    let b = upoly::mul(&q, &upoly::mul(&q, e2, &s), &m1.modulus);
    let e = prod.reduce(&upoly::add(&q, &a, &b));
    Ok((prod, e))
}

/// Errors that may carry a [`SplitEvent`].
pub trait MaybeSplit {
    fn split_event(&self) -> Option<&SplitEvent>;
}

impl MaybeSplit for AlgebraError {
    fn split_event(&self) -> Option<&SplitEvent> {
        match self {
            AlgebraError::Split(ev) => Some(ev),
            _ => None,
        }
    }
}

/// Runs `f` in `field`, re-running it on both factors whenever it reports a
/// split. Returns one result per final branch, in a deterministic order.
pub fn run_branches<T, E: MaybeSplit>(
    field: NumberField,
    mut f: impl FnMut(&NumberField) -> Result<T, E>,
) -> Result<Vec<(NumberField, T)>, E> {
    let mut work = vec![field];
    let mut done = Vec::new();
    while let Some(k) = work.pop() {
        match f(&k) {
            Ok(v) => done.push((k, v)),
            Err(e) => match e.split_event() {
                Some(ev) => {
                    let [l, r] = ev.branches();
                    work.push(r);
                    work.push(l);
                }
                None => return Err(e),
            },
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn q(v: &[i64]) -> Vec<Rational> {
        upoly::trimmed(&Rationals, v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn invert_in_gaussian_field() {
        let k = NumberField::new("t", q(&[1, 0, 1])).unwrap();
        assert_eq!(k.inv(&q(&[0, 1])).unwrap(), q(&[0, -1]));
    }

    #[test]
    fn invert_zero_divisor_splits() {
        let k = NumberField::new("t", q(&[-1, 0, 1])).unwrap();
        match k.inv(&q(&[-1, 1])) {
            Err(AlgebraError::Split(ev)) => {
                assert_eq!(ev.left, q(&[-1, 1]));
                assert_eq!(ev.right, q(&[1, 1]));
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn invert_in_sqrt2_field() {
        let k = NumberField::new("t", q(&[-2, 0, 1])).unwrap();
        assert_eq!(k.inv(&q(&[1, 1])).unwrap(), q(&[-1, 1]));
    }

    #[test]
    fn rejects_non_squarefree_modulus() {
        assert!(NumberField::new("t", q(&[0, 0, 1])).is_err());
    }

    #[test]
    fn branch_driver_visits_both_factors() {
        let k = NumberField::new("t", q(&[-1, 0, 1])).unwrap();
        let out = run_branches(k, |f| f.decide_zero(&f.reduce(&q(&[-1, 1]))))
        .unwrap();
        let flags: Vec<(Vec<Rational>, bool)> =
            out.into_iter().map(|(f, z)| (f.modulus().to_vec(), z)).collect();
        assert_eq!(flags, vec![(q(&[-1, 1]), true), (q(&[1, 1]), false)]);
    }

    #[test]
    fn crt_recombines() {
        let k = NumberField::new("t", q(&[-1, 0, 1])).unwrap();
        let e = q(&[3, 5]);
        let [a, b] = match k.inv(&q(&[-1, 1])) {
            Err(AlgebraError::Split(ev)) => ev.branches(),
            _ => unreachable!(),
        };
        let (prod, back) = crt(&a, &a.restrict(&e), &b, &b.restrict(&e)).unwrap();
        assert_eq!(prod.modulus(), k.modulus());
        assert_eq!(back, e);
    }
}
