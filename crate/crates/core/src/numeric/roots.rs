//! Simultaneous complex root finding (Aberth iteration) and numeric
//! embeddings of number fields.

use crate::algebra::{NfElem, NumberField, Rational};

use super::mp::{derivative, eval_poly, real_to_f64, Cx, Precision, Real};
use super::NumericError;

const MAX_ITER: usize = 1000;

fn approx_abs(c: &Cx) -> f64 {
    let (re, im) = c.to_f64();
    re.hypot(im)
}

/// All complex roots of a polynomial with nonzero leading coefficient,
/// sorted by real part, then imaginary part.
pub fn poly_roots(p: &[Cx], prec: &Precision) -> Result<Vec<Cx>, NumericError> {
    let mut p = p.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = approx_abs(&p[n]);
    let radius = 1.0 + p[..n].iter().map(|c| approx_abs(c) / lc).fold(0.0, f64::max);
    let mut z: Vec<Cx> = (0..n)
        .map(|i| {
            let angle = std::f64::consts::TAU * i as f64 / n as f64 + 0.4;
            let r = radius * 0.5;
            Cx { re: prec.from_f64(r * angle.cos()), im: prec.from_f64(r * angle.sin()) }
        })
        .collect();
    let dp = derivative(&p, prec);
    let tol = prec.eps(24);
    // multiple roots converge linearly and stall near the square root of
    // the precision
    let stall = tol.sqrt();
    let sort = |z: &mut Vec<Cx>| {
        z.sort_by(|a, b| {
            let (ar, ai) = a.to_f64();
            let (br, bi) = b.to_f64();
            ar.total_cmp(&br).then(ai.total_cmp(&bi))
        })
    };
    let mut worst = Real::ZERO;
    for _ in 0..MAX_ITER {
        worst = Real::ZERO;
        let mut next = z.clone();
        for i in 0..n {
            let fz = eval_poly(&p, &z[i], prec);
            if fz.is_zero() {
                continue;
            }
            let ratio = fz.div(&eval_poly(&dp, &z[i], prec));
            let mut sum = prec.zero();
            for j in 0..n {
                if j != i {
                    sum = &sum + &prec.one().div(&(&z[i] - &z[j]));
                }
            }
            let denom = &prec.one() - &(&ratio * &sum);
            let step = ratio.div(&denom);
            let scale = z[i].abs().max(prec.real_i64(1));
            let rel = step.abs() / scale;
            if rel > worst {
                worst = rel;
            }
            next[i] = &z[i] - &step;
        }
        z = next;
        if worst < tol {
            sort(&mut z);
            return Ok(z);
        }
    }
    if worst < stall {
        sort(&mut z);
        return Ok(z);
    }
    Err(NumericError::NoConvergence("polynomial roots".into()))
}

pub fn rational_poly(p: &[Rational], prec: &Precision) -> Vec<Cx> {
    p.iter().map(|c| prec.rational_cx(c)).collect()
}

/// The complex embeddings of a number field: the roots of its modulus.
pub fn embeddings(k: &NumberField, prec: &Precision) -> Result<Vec<Cx>, NumericError> {
    poly_roots(&rational_poly(k.modulus(), prec), prec)
}

/// Image of a field element under the embedding `t -> root`.
pub fn embed(e: &NfElem, root: &Cx, prec: &Precision) -> Cx {
    eval_poly(&rational_poly(e, prec), root, prec)
}

/// Smallest pairwise distance between the values.
pub fn min_separation(z: &[Cx]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let d = real_to_f64(&(&z[i] - &z[j]).abs());
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best
}

/// Separation below which two computed roots count as one. A double root
/// splits into a pair about the square root of the precision apart, so the
/// cube root leaves a wide margin.
pub fn collision_threshold(prec: &Precision) -> f64 {
    real_to_f64(&prec.eps(0)).cbrt()
}

/// Numeric squarefreeness: the roots are pairwise separated by more than
/// [`collision_threshold`].
pub fn numerically_squarefree(p: &[Cx], prec: &Precision) -> Result<bool, NumericError> {
    let roots = poly_roots(p, prec)?;
    let threshold = collision_threshold(prec);
    Ok(min_separation(&roots).is_none_or(|s| s > threshold))
}
