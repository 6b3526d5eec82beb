//! Sylvester resultants evaluated by fraction-free Bareiss elimination,
//! directly or through evaluation and interpolation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{denominator_lcm, upoly, AlgebraError, Integers, Rational, Rationals, Ring};

/// Sylvester matrix of `p` (degree m) and `q` (degree n): n shifted rows of
/// `p`'s coefficients followed by m shifted rows of `q`'s, leading
/// coefficients on the left.
pub fn sylvester_matrix<R: Ring>(r: &R, p: &[R::Elem], q: &[R::Elem]) -> Vec<Vec<R::Elem>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shift_count, src) in [(n, p), (m, q)] {
        for shift in 0..shift_count {
            let mut row = vec![r.zero(); size];
            for (j, c) in src.iter().rev().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss elimination with row swaps; every division is
/// exact in an integral domain.
pub fn determinant<R: Ring>(r: &R, mut a: Vec<Vec<R::Elem>>) -> Result<R::Elem, AlgebraError> {
    let n = a.len();
    let mut sign_flip = false;
    let mut prev = r.one();
    for k in 0..n {
        if r.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !r.is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(r.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = r.sub(&r.mul(&a[i][j], &a[k][k]), &r.mul(&a[i][k], &a[k][j]));
                a[i][j] = r.div_exact(&num, &prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { r.one() } else { a[n - 1][n - 1].clone() };
    Ok(if sign_flip { r.neg(&det) } else { det })
}

/// `Res(p, q)` for nonzero dense polynomials (constant term first).
pub fn resultant<R: Ring>(r: &R, p: &[R::Elem], q: &[R::Elem]) -> Result<R::Elem, AlgebraError> {
    if p.is_empty() || q.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    determinant(r, sylvester_matrix(r, p, q))
}

/// `Res_y(p, q)` for `p, q` in `Q[x][y]` (outer index: power of `y`), by
/// evaluation at `x = 0, 1, 2, ...` and Newton interpolation. The formal
/// `y`-degrees are kept at every evaluation point, so each value is the
/// specialization of the generic determinant.
pub fn resultant_in_y(
    p: &[Vec<Rational>],
    q: &[Vec<Rational>],
) -> Result<Vec<Rational>, AlgebraError> {
    if p.is_empty() || q.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    // clear denominators: Res(a p, b q) = a^deg(q) b^deg(p) Res(p, q)
    let integral = |a: &[Vec<Rational>]| -> (Vec<Vec<BigInt>>, BigInt) {
        let l = denominator_lcm(a.iter().flatten());
        let lr = Rational::from_integer(l.clone());
        (a.iter().map(|c| c.iter().map(|x| (x * &lr).to_integer()).collect()).collect(), l)
    };
    let (pi, lp) = integral(p);
    let (qi, lq) = integral(q);
    let (m, n) = (p.len() - 1, q.len() - 1);
    let scale = Rational::from_integer(num_traits::pow(lp, n) * num_traits::pow(lq, m));

    let deg_x = |a: &[Vec<Rational>]| a.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = n * deg_x(p) + m * deg_x(q);
    let eval = |c: &[BigInt], x: &BigInt| c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a);
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        let x = BigInt::from(i);
        let pv: Vec<BigInt> = pi.iter().map(|c| eval(c, &x)).collect();
        let qv: Vec<BigInt> = qi.iter().map(|c| eval(c, &x)).collect();
        let det = determinant(&Integers, sylvester_matrix(&Integers, &pv, &qv))?;
        ys.push(Rational::from_integer(det) / &scale);
        xs.push(Rational::from_integer(x));
    }
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through distinct nodes.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let f = Rationals;
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out: Vec<Rational> = Vec::new();
    for i in (0..n).rev() {
        out = upoly::mul(&f, &out, &[-xs[i].clone(), Rational::one()]);
        out = upoly::add(&f, &out, &[coef[i].clone()]);
    }
    upoly::trimmed(&f, out)
}
