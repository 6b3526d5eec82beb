//! The pencil polynomials `P = sum a_i prod_{j != i} (w + a_j)` and
//! `Q = sum prod_{j != i} (w + a_j)`: the resultant identity, smoothness of
//! the pencil `t P + Q`, and the roots of `prod (λ + a_i) = μ`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::mpoly::var_names;
use crate::algebra::number_field::run_branches;
use crate::algebra::resultant::resultant;
use crate::algebra::{
    fmt_rational, rat, upoly, AlgebraError, MPolyRing, NumberField, Rational, Rationals, Ring,
};
use crate::curve::{pencil_samples, SingularPointRecord};

use super::mp::{eval_poly, real_to_f64, Cx, Precision};
use super::roots::{collision_threshold, embed, embeddings, min_separation, numerically_squarefree, poly_roots};
use super::NumericError;

/// `(P, Q)` from the `a_i` by the defining sums, constant term first.
pub fn pencil_polynomials<R: Ring>(r: &R, a: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>) {
    let mut p = Vec::new();
    let mut q = Vec::new();
    for i in 0..a.len() {
        let prod = a
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(vec![r.one()], |acc, (_, aj)| upoly::mul(r, &acc, &[aj.clone(), r.one()]));
        q = upoly::add(r, &q, &prod);
        p = upoly::add(r, &p, &upoly::scale(r, &prod, &a[i]));
    }
    (p, q)
}

/// `(P, Q)` from the monic `T(s) = prod (s + a_i)`: `Q = T'` and
/// `P = k T - s T'`.
pub fn pencil_from_slopes<R: Ring>(r: &R, t: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>) {
    let k = t.len() as i64 - 1;
    let dt = upoly::derivative(r, t);
    let s_dt = upoly::mul(r, &[r.zero(), r.one()], &dt);
    let p = upoly::sub(r, &upoly::scale(r, t, &r.from_int(k)), &s_dt);
    (upoly::trimmed(r, p), dt)
}

/// `Res(P, Q)` with both taken at formal degree `k - 1`; `P` loses its top
/// coefficient when the `a_i` sum to zero.
fn pencil_resultant<R: Ring>(r: &R, a: &[R::Elem]) -> Result<R::Elem, AlgebraError> {
    let (mut p, mut q) = pencil_polynomials(r, a);
    p.resize(a.len(), r.zero());
    q.resize(a.len(), r.zero());
    resultant(r, &p, &q)
}

fn discriminant_square(a: &[Rational]) -> Rational {
    let mut s = rat(1);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let d = &a[i] - &a[j];
            s *= &d * &d;
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymbolicCheck {
    pub degree: Option<u32>,
    pub homogeneous: bool,
    /// `Res(P, Q) = η · prod_{i<j} (a_i - a_j)^2` as polynomials.
    pub equals_eta_s: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim2Trial {
    #[serde(serialize_with = "ser_rationals")]
    pub a: Vec<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub resultant: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim2Report {
    pub k: usize,
    pub seed: u64,
    pub trials: Vec<Claim2Trial>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub eta: Option<Rational>,
    pub constant: bool,
    pub nonzero: bool,
    pub vanishes_on_diagonal: bool,
    pub symbolic: Option<SymbolicCheck>,
    pub pass: bool,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

fn ser_rationals<S: serde::Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(fmt_rational))
}

/// Largest `k` for which the resultant is also computed symbolically.
pub const SYMBOLIC_MAX_K: usize = 4;

fn random_distinct(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    let mut pool: Vec<Rational> = Vec::new();
    while pool.len() < k {
        let q = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into());
        if q != Rational::from_integer(0.into()) && !pool.contains(&q) {
            pool.push(q);
        }
    }
    pool.shuffle(rng);
    pool
}

fn symbolic_check(k: usize, eta: Option<&Rational>) -> Result<SymbolicCheck, AlgebraError> {
    let names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = MPolyRing::new(Rationals, var_names(&names));
    let a: Vec<_> = (0..k).map(|i| ring.var(i)).collect();
    let res = pencil_resultant(&ring, &a)?;
    let mut s = ring.one();
    for i in 0..k {
        for j in i + 1..k {
            let d = ring.sub(&a[i], &a[j]);
            s = ring.mul(&s, &ring.mul(&d, &d));
        }
    }
    let equals_eta_s = eta.is_some_and(|e| res == ring.scale(&s, e));
    Ok(SymbolicCheck { degree: res.total_degree(), homogeneous: res.is_homogeneous(), equals_eta_s })
}

/// Draws `trials` tuples of distinct small rationals, computes
/// `Res(P, Q) / prod_{i<j} (a_i - a_j)^2` exactly for each and checks that
/// the ratio is one nonzero constant.
pub fn claim2_experiment(k: usize, trials: usize, seed: u64) -> Result<Claim2Report, NumericError> {
    if k < 2 {
        return Err(NumericError::BadK(k));
    }
    if trials == 0 {
        return Err(NumericError::NoTrials);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let a = random_distinct(&mut rng, k);
        let res = pencil_resultant(&Rationals, &a)?;
        let ratio = &res / discriminant_square(&a);
        out.push(Claim2Trial { a, resultant: res, ratio });
    }
    let eta = out[0].ratio.clone();
    let constant = out.iter().all(|t| t.ratio == eta);
    let nonzero = eta != rat(0);

    let mut diag = random_distinct(&mut rng, k);
    diag[1] = diag[0].clone();
    let vanishes_on_diagonal = pencil_resultant(&Rationals, &diag)? == rat(0);

    let symbolic = if k <= SYMBOLIC_MAX_K {
        Some(symbolic_check(k, constant.then_some(&eta))?)
    } else {
        None
    };
    let degree = (k * (k - 1)) as u32;
    let symbolic_ok = symbolic
        .as_ref()
        .is_none_or(|s| s.degree == Some(degree) && s.homogeneous && s.equals_eta_s);
    let pass = constant && nonzero && vanishes_on_diagonal && symbolic_ok;
    Ok(Claim2Report {
        k,
        seed,
        trials: out,
        eta: constant.then_some(eta),
        constant,
        nonzero,
        vanishes_on_diagonal,
        symbolic,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PencilSample {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    /// `t P + Q` has degree `k - 1` and no repeated root, exactly.
    pub smooth: bool,
    /// The numeric root separation gives the same verdict in every embedding.
    pub numeric_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim1Report {
    pub k: u32,
    pub samples: Vec<PencilSample>,
    /// Members at distinct sampled `t` share no root.
    pub pairwise_coprime: bool,
    pub pass: bool,
}

/// Checks that `t P + Q` is squarefree of degree `k - 1` for every sampled
/// `t`, exactly over the point's field, and compares with root separation
/// in every complex embedding.
pub fn claim1_pencil_check(
    record: &SingularPointRecord,
    samples: &[Rational],
    prec: &Precision,
) -> Result<Claim1Report, NumericError> {
    let tangent = record.tangent.as_ref().ok_or(NumericError::NotOrdinary)?;
    let field = record.field().clone();
    let k = record.multiplicity;
    let member = |kf: &NumberField, t: &Rational| {
        let slopes: Vec<_> = tangent.slopes.iter().map(|c| kf.restrict(c)).collect();
        let (p, q) = pencil_from_slopes(kf, &slopes);
        upoly::add(kf, &upoly::scale(kf, &p, &kf.from_rational(t)), &q)
    };
    let roots = embeddings(&field, prec)?;
    let mut out = Vec::new();
    for t in samples {
        let verdicts = run_branches(field.clone(), |kf| {
            let f = member(kf, t);
            if f.len() != k as usize || !kf.is_unit(f.last().expect("nonzero"))? {
                return Ok::<bool, AlgebraError>(false);
            }
            upoly::is_squarefree(kf, &f)
        })?;
        let smooth = verdicts.iter().all(|(_, ok)| *ok);
        let f = member(&field, t);
        let mut numeric_agrees = true;
        for root in &roots {
            let fz: Vec<Cx> = f.iter().map(|c| embed(c, root, prec)).collect();
            let degree_ok = fz.len() == k as usize && !fz.last().expect("nonzero").is_zero();
            let numeric = degree_ok && numerically_squarefree(&fz, prec)?;
            numeric_agrees &= numeric == smooth;
        }
        out.push(PencilSample { t: t.clone(), smooth, numeric_agrees });
    }
    let mut pairwise_coprime = true;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let verdicts = run_branches(field.clone(), |kf| {
                let g = upoly::gcd(kf, &member(kf, &samples[i]), &member(kf, &samples[j]))?;
                Ok::<bool, AlgebraError>(g.len() <= 1)
            })?;
            pairwise_coprime &= verdicts.iter().all(|(_, ok)| *ok);
        }
    }
    let pass = pairwise_coprime && out.iter().all(|s| s.smooth && s.numeric_agrees);
    Ok(Claim1Report { k, samples: out, pairwise_coprime, pass })
}

/// Default pencil samples.
pub fn default_pencil_samples() -> Vec<Rational> {
    pencil_samples().to_vec()
}

/// Fixed sequence of `μ = re + i·im` values tried in order.
pub const MU_SEQUENCE: [((i64, i64), (i64, i64)); 6] =
    [((1, 1), (0, 1)), ((1, 2), (0, 1)), ((2, 1), (0, 1)), ((1, 1), (1, 2)), ((-1, 1), (1, 3)), ((3, 1), (-2, 1))];

pub fn mu_value(i: usize, prec: &Precision) -> Cx {
    let ((a, b), (c, d)) = MU_SEQUENCE[i];
    prec.cx(&Rational::new(a.into(), b.into()), &Rational::new(c.into(), d.into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaMu {
    pub mu: Cx,
    pub lambdas: Vec<Cx>,
    pub min_separation: f64,
}

/// Roots of `T(λ) - μ` for the numeric monic `T = prod (λ + a_i)`.
pub fn lambda_mu_roots(slopes: &[Cx], mu: &Cx, prec: &Precision) -> Result<LambdaMu, NumericError> {
    let (re, im) = mu.to_f64();
    if mu.is_zero() {
        return Err(NumericError::NonGenericMu("0".into()));
    }
    let mut poly = slopes.to_vec();
    poly[0] = &poly[0] - mu;
    let lambdas = poly_roots(&poly, prec)?;
    let sep = min_separation(&lambdas).unwrap_or(f64::INFINITY);
    let threshold = collision_threshold(prec);
    if sep <= threshold {
        return Err(NumericError::NonGenericMu(format!("{re}+{im}i")));
    }
    // residual check of every root
    for l in &lambdas {
        let r = real_to_f64(&eval_poly(&poly, l, prec).abs());
        if r > threshold {
            return Err(NumericError::NoConvergence("lambda roots".into()));
        }
    }
    Ok(LambdaMu { mu: mu.clone(), lambdas, min_separation: sep })
}

/// Tries the fixed μ sequence, scaled by `scale`, until the roots separate.
/// Returns the index into [`MU_SEQUENCE`] with the roots.
pub fn lambda_mu_with_retry(
    slopes: &[Cx],
    scale: &Cx,
    prec: &Precision,
) -> Result<(usize, LambdaMu), NumericError> {
    for i in 0..MU_SEQUENCE.len() {
        match lambda_mu_roots(slopes, &(&mu_value(i, prec) * scale), prec) {
            Err(NumericError::NonGenericMu(_)) => continue,
            other => return other.map(|lm| (i, lm)),
        }
    }
    Err(NumericError::MuExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn k2_by_hand() {
        let (p, q) = pencil_polynomials(&Rationals, &[rat(1), rat(2)]);
        assert_eq!((p.clone(), q.clone()), (vec![rat(4), rat(3)], vec![rat(3), rat(2)]));
        assert_eq!(resultant(&Rationals, &p, &q).unwrap(), rat(1));
        assert_eq!(discriminant_square(&[rat(1), rat(2)]), rat(1));
    }

    #[test]
    fn slopes_form_matches_sums() {
        let a = [ratio(1, 2), rat(-3), rat(5), ratio(7, 3)];
        let t = a.iter().fold(vec![rat(1)], |acc, ai| upoly::mul(&Rationals, &acc, &[ai.clone(), rat(1)]));
        assert_eq!(pencil_from_slopes(&Rationals, &t), pencil_polynomials(&Rationals, &a));
    }

    #[test]
    fn coincident_roots_kill_resultant() {
        let (p, q) = pencil_polynomials(&Rationals, &[rat(3), rat(3), rat(-1)]);
        assert_eq!(resultant(&Rationals, &p, &q).unwrap(), rat(0));
    }

    #[test]
    fn zero_sum_keeps_formal_degree() {
        let a = [rat(-1), rat(1)];
        let (p, _) = pencil_polynomials(&Rationals, &a);
        assert_eq!(p, vec![rat(-2)]);
        assert_eq!(pencil_resultant(&Rationals, &a).unwrap(), discriminant_square(&a));
    }

    #[test]
    fn claim2_small_k() {
        let r = claim2_experiment(2, 5, 7).unwrap();
        assert!(r.pass);
        assert_eq!(r.eta, Some(rat(1)));
        let r = claim2_experiment(3, 20, 1).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.symbolic.unwrap().degree, Some(6));
    }

    #[test]
    fn lambda_quadratic() {
        let prec = Precision::from_digits(50);
        // (λ + 1)(λ + 2) - 1 = λ^2 + 3λ + 1
        let slopes: Vec<Cx> = [2, 3, 1].iter().map(|&c| prec.int_cx(c)).collect();
        let lm = lambda_mu_roots(&slopes, &prec.one(), &prec).unwrap();
        let s5 = 5f64.sqrt();
        assert!((lm.lambdas[0].to_f64().0 - (-3.0 - s5) / 2.0).abs() < 1e-14);
        assert!(matches!(lambda_mu_roots(&slopes, &prec.zero(), &prec), Err(NumericError::NonGenericMu(_))));
        // μ = -1/4 makes a double root at -3/2
        let mu = prec.rational_cx(&ratio(-1, 4));
        assert!(matches!(lambda_mu_roots(&slopes, &mu, &prec), Err(NumericError::NonGenericMu(_))));
    }
}
