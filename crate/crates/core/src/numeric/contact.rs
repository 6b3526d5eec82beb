//! Measured outer contact between two lifts of a test curve.
//!
//! At an ordinary singular point `p` of the tangent-cone curve, points of
//! the surface near the line through `p` are written
//! `x * (p + U e_1 + V e_2)` with `(U, V) = (v + a w, b v + w)` in the
//! normalized frame. The test curve `x = μ v^k` in the plane `(x, x v)` lifts
//! to `k` curves `w = w_j(v)`, found by continuation from `w ≈ λ_j v` where
//! `prod (λ_j + a_i) = -μ g_0 / c`. The distance between two lifts over the
//! same point of the test curve is fitted against the radius on a log-log
//! scale.

use serde::Serialize;

use crate::algebra::{fmt_rational, QPoly, Rational};
use crate::cluster::cusp_cluster;
use crate::curve::SingularPointRecord;
use crate::sis::SisInput;

use super::claims::{lambda_mu_roots, lambda_mu_with_retry, mu_value, MU_SEQUENCE};
use super::mp::{real_to_f64, Cx, Precision};
use super::roots::{embed, embeddings};
use super::NumericError;

/// A rational polynomial with coefficients already converted.
struct NumPoly {
    terms: Vec<(Vec<u32>, Cx)>,
}

impl NumPoly {
    fn new(p: &QPoly, prec: &Precision) -> Self {
        NumPoly { terms: p.terms.iter().map(|(e, c)| (e.clone(), prec.rational_cx(c))).collect() }
    }

    fn eval(&self, x: &[Cx; 3], prec: &Precision) -> Cx {
        let mut acc = prec.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                t = &t * &xi.powi(ei, prec);
            }
            acc = &acc + &t;
        }
        acc
    }
}

struct Model {
    fd: NumPoly,
    fd1: NumPoly,
    grad_fd: [NumPoly; 3],
    grad_fd1: [NumPoly; 3],
    base: [Cx; 3],
    e1: usize,
    e2: usize,
    a: Cx,
    b: Cx,
}

impl Model {
    /// `p + U e_1 + V e_2` for frame coordinates `(v, w)`.
    fn direction(&self, v: &Cx, w: &Cx) -> [Cx; 3] {
        let u_coord = v + &(&self.a * w);
        let v_coord = &(&self.b * v) + w;
        let mut pt = self.base.clone();
        pt[self.e1] = &pt[self.e1] + &u_coord;
        pt[self.e2] = &pt[self.e2] + &v_coord;
        pt
    }

    /// `H(w) = f_d(P) + x f_(d+1)(P)` and `dH/dw` at `P = direction(v, w)`.
    fn residual(&self, x: &Cx, v: &Cx, w: &Cx, prec: &Precision) -> (Cx, Cx) {
        let pt = self.direction(v, w);
        let h = &self.fd.eval(&pt, prec) + &(x * &self.fd1.eval(&pt, prec));
        // d P / d w = a e_1 + e_2
        let mut dir = [prec.zero(), prec.zero(), prec.zero()];
        dir[self.e1] = self.a.clone();
        dir[self.e2] = prec.one();
        let mut dh = prec.zero();
        for i in 0..3 {
            let g = &self.grad_fd[i].eval(&pt, prec) + &(x * &self.grad_fd1[i].eval(&pt, prec));
            dh = &dh + &(&g * &dir[i]);
        }
        (h, dh)
    }

    fn newton(&self, x: &Cx, v: &Cx, w0: &Cx, prec: &Precision) -> Option<Cx> {
        let tol = prec.eps(32);
        let mut w = w0.clone();
        for _ in 0..60 {
            let (h, dh) = self.residual(x, v, &w, prec);
            if dh.is_zero() {
                return None;
            }
            let step = h.div(&dh);
            w = &w - &step;
            if step.abs() <= &tol * &v.abs() {
                return Some(w);
            }
        }
        None
    }

    fn point(&self, x: &Cx, v: &Cx, w: &Cx) -> [Cx; 3] {
        self.direction(v, w).map(|c| x * &c)
    }
}

fn norm(p: &[Cx; 3]) -> f64 {
    let n2 = p.iter().map(|c| c.norm2()).reduce(|a, b| a + b).expect("three coordinates");
    real_to_f64(&n2.sqrt())
}

fn dist(p: &[Cx; 3], q: &[Cx; 3]) -> f64 {
    let d: Vec<Cx> = p.iter().zip(q).map(|(a, b)| a - b).collect();
    let n2 = d.iter().map(|c| c.norm2()).reduce(|a, b| a + b).expect("three coordinates");
    real_to_f64(&n2.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContactSample {
    pub eps: f64,
    /// Measured norm of the lifted point.
    pub radius: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContactEstimate {
    pub k: u32,
    pub pair: (usize, usize),
    /// `μ` as `(re, im)`.
    pub mu: (String, String),
    pub digits: usize,
    pub samples: Vec<ContactSample>,
    pub slope: f64,
    /// Root mean square of the fit residuals in `ln d`.
    pub residual: f64,
    /// Slope fitted on every other sample.
    pub half_grid_slope: f64,
    pub stable: bool,
    #[serde(serialize_with = "ser_rational")]
    pub target: Rational,
    pub relative_error: f64,
    /// Relative error within [`SLOPE_TOLERANCE`].
    pub pass: bool,
    /// Inner rate of the Δ-node from the cluster engine.
    #[serde(serialize_with = "ser_rational")]
    pub inner_rate: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

/// Accepted relative error between the fitted slope and `(k+1)/k`.
pub const SLOPE_TOLERANCE: f64 = 0.02;

/// Relative slope change between the full and the halved grid above which
/// the estimate is flagged unstable.
pub const STABILITY_TOLERANCE: f64 = 0.005;

/// Least-squares slope and RMS residual.
fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    (slope, (rss / n).sqrt())
}

/// Smallest ε the precision resolves: evaluating `f_d` near `p` loses about
/// `-log10(ε)` digits, and half the digits are kept in reserve.
pub fn min_resolvable_eps(prec: &Precision) -> f64 {
    10f64.powi(-(prec.digits() as i32) / 2)
}

/// Log-spaced grid from `a` to `b` with `n` values, decreasing.
pub fn eps_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    let mut g: Vec<f64> = (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n.max(2) - 1) as f64).exp())
        .collect();
    g.sort_by(|x, y| y.total_cmp(x));
    g
}

/// Largest ratio between consecutive `|v|` during continuation.
const STEP: f64 = 1.25;

/// Ray angle for `v`.
const THETA: f64 = 0.3;

pub fn outer_contact_slope(
    input: &SisInput,
    record: &SingularPointRecord,
    pair: (usize, usize),
    mu: Option<usize>,
    epsilons: &[f64],
    prec: &Precision,
) -> Result<ContactEstimate, NumericError> {
    let tangent = record.tangent.as_ref().ok_or(NumericError::NotOrdinary)?;
    let k = record.multiplicity;
    let (j, l) = pair;
    if j == l || j >= k as usize || l >= k as usize {
        return Err(NumericError::BadPair(j, l, k as usize));
    }
    if epsilons.len() < 2 || epsilons.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(NumericError::BadGrid);
    }
    let min_eps = min_resolvable_eps(prec);
    if let Some(&e) = epsilons.iter().find(|&&e| e < min_eps) {
        return Err(NumericError::PrecisionAdvisory { eps: e, digits: prec.digits(), min: min_eps });
    }
    if mu.is_some_and(|i| i >= MU_SEQUENCE.len()) {
        return Err(NumericError::MuExhausted);
    }

    let field = record.field();
    let sigma = embeddings(field, prec)?.swap_remove(0);
    let base = record.point.coords.clone().map(|c| embed(&c, &sigma, prec));
    let chart = record.point.chart_index();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let grad = |p: &QPoly| [0, 1, 2].map(|i| NumPoly::new(&p.partial(i), prec));
    let model = Model {
        fd: NumPoly::new(&input.fd, prec),
        fd1: NumPoly::new(&input.fd1, prec),
        grad_fd: grad(&input.fd),
        grad_fd1: grad(&input.fd1),
        base,
        e1: others[0],
        e2: others[1],
        a: prec.int_cx(tangent.frame.0),
        b: prec.int_cx(tangent.frame.1),
    };

    let slopes: Vec<Cx> = tangent.slopes.iter().map(|c| embed(c, &sigma, prec)).collect();
    let c = embed(&tangent.lead, &sigma, prec);
    let g0 = model.fd1.eval(&model.base, prec);
    let scale = -&g0.div(&c);
    let (mu_index, lm) = match mu {
        Some(i) => (i, lambda_mu_roots(&slopes, &(&mu_value(i, prec) * &scale), prec)?),
        None => lambda_mu_with_retry(&slopes, &scale, prec)?,
    };
    let mu = mu_value(mu_index, prec);
    let lambdas = lm.lambdas;

    // |x| = |μ| ρ^k and |P| ≈ |x| |p|
    let scale = real_to_f64(&mu.abs()) * norm(&model.base);
    let rho_of = |e: f64| (e / scale).powf(1.0 / k as f64);
    let (cos, sin) = (THETA.cos(), THETA.sin());
    let v_of = |rho: f64| Cx { re: prec.from_f64(rho * cos), im: prec.from_f64(rho * sin) };
    let x_of = |v: &Cx| &mu * &v.powi(k, prec);

    // start far inside the grid, where w = λ v is accurate, and walk out
    let mut targets: Vec<f64> = epsilons.to_vec();
    targets.sort_by(|a, b| a.total_cmp(b));
    let mut rho = rho_of(targets[0]) / 16.0;
    let mut v = v_of(rho);
    let mut x = x_of(&v);
    let mut ws: Vec<Cx> = Vec::with_capacity(lambdas.len());
    for lam in &lambdas {
        let w = model
            .newton(&x, &v, &(lam * &v), prec)
            .ok_or_else(|| NumericError::NoConvergence("initial lift".into()))?;
        ws.push(w);
    }
    let mut samples = Vec::new();
    for &eps in &targets {
        let goal = rho_of(eps);
        while rho < goal {
            let mut next = (rho * STEP).min(goal);
            let mut halvings = 0;
            loop {
                let nv = v_of(next);
                let nx = x_of(&nv);
                let ratio = nv.div(&v);
                let predicted: Vec<Cx> = ws.iter().map(|w| w * &ratio).collect();
                let tracked: Option<Vec<Cx>> =
                    predicted.iter().map(|w0| model.newton(&nx, &nv, w0, prec)).collect();
                if let Some(t) = tracked.filter(|t| consistent(t, &predicted)) {
                    ws = t;
                    rho = next;
                    v = nv;
                    x = nx;
                    break;
                }
                halvings += 1;
                if halvings > 30 {
                    return Err(NumericError::BranchSwap(rho));
                }
                next = rho * (next / rho).sqrt();
            }
        }
        let pj = model.point(&x, &v, &ws[j]);
        let pl = model.point(&x, &v, &ws[l]);
        samples.push(ContactSample { eps, radius: (norm(&pj) + norm(&pl)) / 2.0, distance: dist(&pj, &pl) });
    }
    samples.sort_by(|a, b| b.eps.total_cmp(&a.eps));

    let xs: Vec<f64> = samples.iter().map(|s| s.eps.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.distance.ln()).collect();
    let (slope, residual) = fit(&xs, &ys);
    let even: Vec<usize> = (0..xs.len()).step_by(2).collect();
    let half_grid_slope = if even.len() >= 2 {
        let hx: Vec<f64> = even.iter().map(|&i| xs[i]).collect();
        let hy: Vec<f64> = even.iter().map(|&i| ys[i]).collect();
        fit(&hx, &hy).0
    } else {
        slope
    };
    let stable = ((slope - half_grid_slope) / slope).abs() < STABILITY_TOLERANCE;
    let target = Rational::new((k + 1).into(), k.into());
    let t = (k as f64 + 1.0) / k as f64;
    let relative_error = ((slope - t) / t).abs();
    let ((mr, mi), (nr, ni)) = MU_SEQUENCE[mu_index];
    Ok(ContactEstimate {
        k,
        pair,
        mu: (
            fmt_rational(&Rational::new(mr.into(), mi.into())),
            fmt_rational(&Rational::new(nr.into(), ni.into())),
        ),
        digits: prec.digits(),
        samples,
        slope,
        residual,
        half_grid_slope,
        stable,
        target,
        relative_error,
        pass: relative_error <= SLOPE_TOLERANCE,
        inner_rate: cusp_cluster(k as usize).inner_rate(k as usize),
    })
}

/// Each tracked root is nearer its own prediction than any other.
fn consistent(tracked: &[Cx], predicted: &[Cx]) -> bool {
    tracked.iter().enumerate().all(|(i, t)| {
        let own = real_to_f64(&(t - &predicted[i]).abs());
        predicted
            .iter()
            .enumerate()
            .all(|(j, p)| j == i || own < real_to_f64(&(t - p).abs()))
    })
}
