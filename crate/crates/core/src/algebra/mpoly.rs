//! Sparse multivariate polynomials keyed by exponent vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::{fmt_rational, AlgebraError, Field, Rational, Rationals, Ring};

/// Sparse polynomial with coefficients of type `E`. Zero coefficients are
/// never stored and every exponent vector has one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MPoly<E> {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Vec<u32>, E>,
}

pub type QPoly = MPoly<Rational>;

pub fn var_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl<E: Clone> MPoly<E> {
    pub fn zero(vars: Vec<String>) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Leading term in lexicographic order of exponent vectors.
    pub fn leading(&self) -> Option<(&Vec<u32>, &E)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&E> {
        self.terms.get(exps)
    }

    pub fn map_coeffs<R: Ring>(&self, r: &R, f: impl Fn(&E) -> R::Elem) -> MPoly<R::Elem> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .filter(|(_, c)| !r.is_zero(c))
            .collect();
        MPoly { vars: self.vars.clone(), terms }
    }
}

/// Polynomial arithmetic over a coefficient ring.
#[derive(Debug, Clone)]
pub struct MPolyRing<R> {
    pub base: R,
    pub vars: Vec<String>,
}

impl<R: Ring> MPolyRing<R> {
    pub fn new(base: R, vars: Vec<String>) -> Self {
        MPolyRing { base, vars }
    }

    pub fn constant(&self, c: R::Elem) -> MPoly<R::Elem> {
        self.monomial(c, &vec![0; self.vars.len()])
    }

    pub fn monomial(&self, c: R::Elem, exps: &[u32]) -> MPoly<R::Elem> {
        let mut p = MPoly::zero(self.vars.clone());
        if !self.base.is_zero(&c) {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn var(&self, i: usize) -> MPoly<R::Elem> {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        self.monomial(self.base.one(), &e)
    }

    pub fn scale(&self, a: &MPoly<R::Elem>, c: &R::Elem) -> MPoly<R::Elem> {
        a.map_coeffs(&self.base, |x| self.base.mul(x, c))
    }

    pub fn from_rational_poly(&self, a: &QPoly) -> MPoly<R::Elem> {
        a.map_coeffs(&self.base, |q| self.base.from_rational(q))
    }

    fn add_term(&self, p: &mut MPoly<R::Elem>, e: &[u32], c: R::Elem) {
        if self.base.is_zero(&c) {
            return;
        }
        match p.terms.get_mut(e) {
            Some(old) => {
                let s = self.base.add(old, &c);
                if self.base.is_zero(&s) {
                    p.terms.remove(e);
                } else {
                    *old = s;
                }
            }
            None => {
                p.terms.insert(e.to_vec(), c);
            }
        }
    }

    pub fn eval(&self, a: &MPoly<R::Elem>, point: &[R::Elem]) -> R::Elem {
        let mut acc = self.base.zero();
        for (e, c) in &a.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = self.base.mul(&t, &self.base.pow(x, k));
                }
            }
            acc = self.base.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// variables of `target`.
    pub fn substitute(
        &self,
        a: &MPoly<R::Elem>,
        images: &[MPoly<R::Elem>],
        target: &MPolyRing<R>,
    ) -> MPoly<R::Elem>
    where
        R: Field + Clone,
    {
        let mut acc = MPoly::zero(target.vars.clone());
        let mut powers: Vec<Vec<MPoly<R::Elem>>> = images
            .iter()
            .map(|img| vec![target.one(), img.clone()])
            .collect();
        for (e, c) in &a.terms {
            let mut t = target.constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = target.mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = target.mul(&t, &powers[i][k]);
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    pub fn partial_derivative(&self, a: &MPoly<R::Elem>, i: usize) -> MPoly<R::Elem> {
        let mut out = MPoly::zero(a.vars.clone());
        for (e, c) in &a.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            let c = self.base.mul(&self.base.from_int(e[i] as i64), c);
            self.add_term(&mut out, &ne, c);
        }
        out
    }

    /// Homogeneous pieces keyed by total degree; their sum is `a`.
    pub fn homogeneous_components(&self, a: &MPoly<R::Elem>) -> BTreeMap<u32, MPoly<R::Elem>> {
        let mut out: BTreeMap<u32, MPoly<R::Elem>> = BTreeMap::new();
        for (e, c) in &a.terms {
            let d = e.iter().sum();
            out.entry(d)
                .or_insert_with(|| MPoly::zero(a.vars.clone()))
                .terms
                .insert(e.clone(), c.clone());
        }
        out
    }

    /// Writes `a` as a polynomial in variable `i`: entry `j` is the
    /// coefficient of `var_i^j`, still expressed in all variables (with
    /// exponent of `var_i` zero).
    pub fn coefficients_in(&self, a: &MPoly<R::Elem>, i: usize) -> Vec<MPoly<R::Elem>> {
        let n = a.degree_in(i).map_or(0, |d| d as usize + 1);
        let mut out = vec![MPoly::zero(a.vars.clone()); n];
        for (e, c) in &a.terms {
            let mut ne = e.clone();
            ne[i] = 0;
            out[e[i] as usize].terms.insert(ne, c.clone());
        }
        out
    }

    /// Dense coefficients of a polynomial involving only variable `i`.
    pub fn to_univariate(&self, a: &MPoly<R::Elem>, i: usize) -> Option<Vec<R::Elem>> {
        let n = a.degree_in(i).map_or(0, |d| d as usize + 1);
        let mut out = vec![self.base.zero(); n];
        for (e, c) in &a.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k != 0) {
                return None;
            }
            out[e[i] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(&self, coeffs: &[R::Elem], i: usize) -> MPoly<R::Elem> {
        let mut out = MPoly::zero(self.vars.clone());
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; self.vars.len()];
            e[i] = k as u32;
            self.add_term(&mut out, &e, c.clone());
        }
        out
    }
}

impl<F: Field> Ring for MPolyRing<F> {
    type Elem = MPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        MPoly::zero(self.vars.clone())
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut out, e, c.clone());
        }
        out
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = MPoly::zero(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, &e, self.base.mul(ca, cb));
            }
        }
        out
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.map_coeffs(&self.base, |c| self.base.neg(c))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.constant(self.base.from_rational(q))
    }

    /// Multivariate division by leading terms in lex order; fails unless the
    /// remainder is zero.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        let (lb_e, lb_c) = b.leading().ok_or(AlgebraError::DivisionByZero)?;
        let lb_inv = self.base.inv(lb_c)?;
        let mut rem = a.clone();
        let mut quo = MPoly::zero(a.vars.clone());
        while let Some((le, lc)) = rem.leading() {
            if le.iter().zip(lb_e).any(|(x, y)| x < y) {
                return Err(AlgebraError::NotExact);
            }
            let e: Vec<u32> = le.iter().zip(lb_e).map(|(x, y)| x - y).collect();
            let c = self.base.mul(lc, &lb_inv);
            let t = self.monomial(c.clone(), &e);
            rem = self.sub(&rem, &self.mul(&t, b));
            self.add_term(&mut quo, &e, c);
        }
        Ok(quo)
    }
}

impl QPoly {
    fn ring_for(&self) -> MPolyRing<Rationals> {
        MPolyRing::new(Rationals, self.vars.clone())
    }

    pub fn constant_in(vars: Vec<String>, c: Rational) -> Self {
        MPolyRing::new(Rationals, vars).constant(c)
    }

    pub fn variable(vars: Vec<String>, i: usize) -> Self {
        MPolyRing::new(Rationals, vars).var(i)
    }

    pub fn partial(&self, i: usize) -> Self {
        self.ring_for().partial_derivative(self, i)
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, QPoly> {
        self.ring_for().homogeneous_components(self)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.ring_for().eval(self, point)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.ring_for().scale(self, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        self.ring_for().pow(self, e)
    }

    /// The same polynomial re-expressed over a different variable list;
    /// variables are matched by name and must all be present in `vars`.
    pub fn with_vars(&self, vars: &[String]) -> Option<Self> {
        let map: Option<Vec<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let map = map?;
        let mut out = MPoly::zero(vars.to_vec());
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            out.terms.insert(ne, c.clone());
        }
        Some(out)
    }

    /// Content-free integer-coefficient normal form with positive leading
    /// coefficient, used to compare polynomials up to a rational scalar.
    pub fn primitive_normal(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.ring_for().add(self, rhs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.ring_for().sub(self, rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.ring_for().mul(self, rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.ring_for().neg(self)
    }
}

fn fmt_monomial(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

/// Graded order for display: highest total degree first, then lex.
fn display_order<E>(p: &MPoly<E>) -> Vec<(&Vec<u32>, &E)> {
    let mut ts: Vec<_> = p.terms.iter().collect();
    ts.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    ts
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in display_order(self).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(&self.vars, e);
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

/// Renders a polynomial whose coefficients have their own printer.
pub fn fmt_mpoly<E>(p: &MPoly<E>, coeff: impl Fn(&E) -> String) -> String {
    if p.terms.is_empty() {
        return "0".to_string();
    }
    display_order(p)
        .into_iter()
        .map(|(e, c)| {
            let mono = fmt_monomial(&p.vars, e);
            if mono.is_empty() {
                format!("({})", coeff(c))
            } else {
                format!("({})*{mono}", coeff(c))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    fn xyz() -> Vec<String> {
        var_names(&["x", "y", "z"])
    }

    fn p(s: &str) -> QPoly {
        parse_polynomial(s, &xyz()).unwrap()
    }

    #[test]
    fn homogeneous_split() {
        let comps = p("x^3*y - x*y^3 + z^5").homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&4], p("x^3*y - x*y^3"));
        assert_eq!(comps[&5], p("z^5"));
        assert!(p("0").homogeneous_components().is_empty());
        assert_eq!(p("x^2+x^3+x^4").homogeneous_components().len(), 3);
    }

    #[test]
    fn partials_and_euler_identity() {
        assert!(p("x^3*y - x*y^3").partial(2).is_zero());
        assert_eq!(p("z*x^2+y^3").partial(0), p("2*z*x"));
        let f = p("x^3*y - x*y^3");
        let vars = xyz();
        let mut lhs = QPoly::zero(vars.clone());
        for i in 0..3 {
            lhs = &lhs + &(&QPoly::variable(vars.clone(), i) * &f.partial(i));
        }
        assert_eq!(lhs, f.scale(&rat(4)));
    }

    #[test]
    fn exact_division() {
        let r = MPolyRing::new(Rationals, xyz());
        let a = p("x^2 - y^2");
        let b = p("x - y");
        assert_eq!(r.div_exact(&a, &b).unwrap(), p("x + y"));
        assert_eq!(r.div_exact(&p("x^2 + y"), &b), Err(AlgebraError::NotExact));
    }

    #[test]
    fn substitution() {
        let r = MPolyRing::new(Rationals, xyz());
        let f = p("x*y");
        let images = vec![p("x + z"), p("y + 2*z"), p("z")];
        assert_eq!(r.substitute(&f, &images, &r), p("x*y + 2*x*z + y*z + 2*z^2"));
    }

    #[test]
    fn display_is_graded() {
        assert_eq!(p("x*y*(x+y)*(x-y)").to_string(), "x^3*y - x*y^3");
        assert_eq!(p("1/2*x - 3").to_string(), "1/2*x - 3");
    }
}
