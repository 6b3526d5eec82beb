//! Dense univariate polynomials as coefficient vectors (constant term first).
//! The zero polynomial is the empty vector; a nonzero polynomial never has a
//! zero leading coefficient.

use super::{fmt_rational, AlgebraError, Field, Rational, Ring};

pub fn trim<R: Ring>(r: &R, p: &mut Vec<R::Elem>) {
    while p.last().is_some_and(|c| r.is_zero(c)) {
        p.pop();
    }
}

pub fn trimmed<R: Ring>(r: &R, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
    trim(r, &mut p);
    p
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn constant<R: Ring>(r: &R, c: R::Elem) -> Vec<R::Elem> {
    trimmed(r, vec![c])
}

/// The monomial `x`.
pub fn var<R: Ring>(r: &R) -> Vec<R::Elem> {
    vec![r.zero(), r.one()]
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => r.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trimmed(r, out)
}

pub fn neg<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    a.iter().map(|c| r.neg(c)).collect()
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    add(r, a, &neg(r, b))
}

pub fn scale<R: Ring>(r: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
    trimmed(r, a.iter().map(|x| r.mul(x, c)).collect())
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    trimmed(r, out)
}

pub fn pow<R: Ring>(r: &R, a: &[R::Elem], e: u32) -> Vec<R::Elem> {
    let mut acc = constant(r, r.one());
    for _ in 0..e {
        acc = mul(r, &acc, a);
    }
    acc
}

pub fn derivative<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| r.mul(&r.from_int(i as i64), c))
        .collect();
    trimmed(r, out)
}

pub fn eval<R: Ring>(r: &R, a: &[R::Elem], x: &R::Elem) -> R::Elem {
    a.iter()
        .rev()
        .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

/// Substitutes a polynomial for the variable.
pub fn compose<R: Ring>(r: &R, a: &[R::Elem], inner: &[R::Elem]) -> Vec<R::Elem> {
    a.iter().rev().fold(Vec::new(), |acc, c| {
        add(r, &mul(r, &acc, inner), &constant(r, c.clone()))
    })
}

pub fn div_rem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>), AlgebraError> {
    let db = degree(b).ok_or(AlgebraError::DivisionByZero)?;
    let lc_inv = f.inv(&b[db])?;
    let mut rem = a.to_vec();
    trim(f, &mut rem);
    if rem.len() < b.len() {
        return Ok((Vec::new(), rem));
    }
    let mut quo = vec![f.zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul(&rem[dr], &lc_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[i + shift] = f.sub(&rem[i + shift], &f.mul(&c, bc));
        }
        quo[shift] = c;
        // the leading term cancels exactly
        rem.pop();
        trim(f, &mut rem);
    }
    trim(f, &mut quo);
    Ok((quo, rem))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
    Ok(div_rem(f, a, b)?.1)
}

pub fn div_exact<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<Vec<F::Elem>, AlgebraError> {
    let (q, r) = div_rem(f, a, b)?;
    if r.is_empty() {
        Ok(q)
    } else {
        Err(AlgebraError::NotExact)
    }
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) => {
            let inv = f.inv(lc)?;
            Ok(scale(f, a, &inv))
        }
    }
}

/// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
    let mut x = trimmed(f, a.to_vec());
    let mut y = trimmed(f, b.to_vec());
    while !y.is_empty() {
        let y_monic = monic(f, &y)?;
        let r = rem(f, &x, &y_monic)?;
        x = y_monic;
        y = r;
    }
    monic(f, &x)
}

pub fn gcd_many<F: Field>(f: &F, polys: &[Vec<F::Elem>]) -> Result<Vec<F::Elem>, AlgebraError> {
    let mut g = Vec::new();
    for p in polys {
        g = gcd(f, &g, p)?;
    }
    Ok(g)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>), AlgebraError> {
    let (mut r0, mut r1) = (trimmed(f, a.to_vec()), trimmed(f, b.to_vec()));
    let (mut s0, mut s1) = (constant(f, f.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = div_rem(f, &r0, &r1)?;
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => Ok((r0, s0, t0)),
        Some(lc) => {
            let inv = f.inv(lc)?;
            Ok((scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv)))
        }
    }
}

/// Product of the distinct irreducible factors of `a`, made monic.
pub fn squarefree_part<F: Field>(f: &F, a: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
    if a.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let g = gcd(f, a, &derivative(f, a))?;
    monic(f, &div_exact(f, a, &g)?)
}

pub fn is_squarefree<F: Field>(f: &F, a: &[F::Elem]) -> Result<bool, AlgebraError> {
    if a.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let g = gcd(f, a, &derivative(f, a))?;
    Ok(g.len() <= 1)
}

/// `Q[x]`-style polynomial ring over a field, usable as the entry ring of a
/// fraction-free determinant.
#[derive(Debug, Clone, Default)]
pub struct UPolyRing<F> {
    pub base: F,
}

impl<F: Field> UPolyRing<F> {
    pub fn new(base: F) -> Self {
        UPolyRing { base }
    }
}

impl<F: Field> Ring for UPolyRing<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        constant(&self.base, self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        add(&self.base, a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        sub(&self.base, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mul(&self.base, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        neg(&self.base, a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        constant(&self.base, self.base.from_rational(q))
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        div_exact(&self.base, a, b)
    }
}

/// Human-readable rendering of a rational univariate polynomial.
pub fn fmt_qpoly(p: &[Rational], var: &str) -> String {
    use num_traits::{One, Signed, Zero};
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", fmt_rational(&a), mono));
        }
    }
    out
}
