mod common;

use sis_lne::algebra::{ratio, Rational};
use sis_lne::numeric::claims::{claim1_pencil_check, claim2_experiment, default_pencil_samples, SYMBOLIC_MAX_K};
use sis_lne::numeric::contact::{eps_grid, outer_contact_slope, SLOPE_TOLERANCE};
use sis_lne::numeric::mp::Precision;
use sis_lne::numeric::{float_uses, DEFAULT_DIGITS};
use sis_lne::sis::decide_lne;

#[test]
fn eta_is_constant_for_small_k() {
    for k in 2..=6 {
        let report = claim2_experiment(k, 20, 7).unwrap();
        assert!(report.pass, "k = {k}");
        assert!(report.constant && report.nonzero && report.vanishes_on_diagonal, "k = {k}");
        assert_eq!(report.trials.len(), 20);
        if k == 2 {
            assert_eq!(report.eta, Some(Rational::from_integer(1.into())));
        }
        if k <= SYMBOLIC_MAX_K {
            let s = report.symbolic.as_ref().expect("symbolic check");
            assert_eq!(s.degree, Some((k * (k - 1)) as u32), "k = {k}");
            assert!(s.homogeneous && s.equals_eta_s, "k = {k}");
        }
    }
}

#[test]
fn eta_does_not_depend_on_the_seed() {
    for k in 2..=4 {
        let a = claim2_experiment(k, 5, 1).unwrap();
        let b = claim2_experiment(k, 5, 2).unwrap();
        assert_eq!(a.eta, b.eta, "k = {k}");
        assert_ne!(a.trials[0].a, b.trials[0].a);
    }
}

#[test]
fn pencil_members_are_squarefree_at_ordinary_points() {
    let prec = Precision::from_digits(DEFAULT_DIGITS);
    let samples = [
        Rational::from_integer(0.into()),
        Rational::from_integer(1.into()),
        ratio(1, 2),
        Rational::from_integer(2.into()),
    ];
    let mut checked = 0;
    for name in common::valid_fixtures() {
        let report = decide_lne(&common::load(name)).unwrap();
        for rec in report.records().filter(|r| r.ordinary) {
            let c1 = claim1_pencil_check(rec, &samples, &prec).unwrap();
            assert!(c1.pass, "{name}: {c1:?}");
            assert!(c1.samples.iter().all(|s| s.smooth && s.numeric_agrees));
            let d = claim1_pencil_check(rec, &default_pencil_samples(), &prec).unwrap();
            assert!(d.pass, "{name}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "{checked}");
}

#[test]
fn pencil_check_rejects_non_ordinary_points() {
    let prec = Precision::from_digits(DEFAULT_DIGITS);
    let report = decide_lne(&common::load("cusp.json")).unwrap();
    let rec = report.records().find(|r| !r.ordinary).unwrap();
    assert!(claim1_pencil_check(rec, &default_pencil_samples(), &prec).is_err());
}

#[test]
fn contact_slopes_on_fixtures() {
    let prec = Precision::from_digits(DEFAULT_DIGITS);
    let grid = eps_grid(1e-5, 1e-2, 7);
    for (name, k) in [("concurrent_lines.json", 4u32), ("lines_imaginary_conic.json", 2)] {
        let input = common::load(name);
        let report = decide_lne(&input).unwrap();
        let rec = report.records().find(|r| r.multiplicity == k).unwrap();
        let est = outer_contact_slope(&input, rec, (0, 1), None, &grid, &prec).unwrap();
        let target = f64::from(k + 1) / f64::from(k);
        assert!((est.slope - target).abs() / target < SLOPE_TOLERANCE, "{name}: {}", est.slope);
        assert!(est.stable && est.pass, "{name}");
        assert_eq!(est.inner_rate, ratio(i64::from(k) + 1, i64::from(k)));
    }
}

#[test]
fn verdict_is_exact() {
    let before = float_uses();
    for name in common::valid_fixtures() {
        decide_lne(&common::load(name)).unwrap();
    }
    assert_eq!(float_uses(), before);
}

#[test]
fn conjugate_points_are_grouped() {
    let report = decide_lne(&common::load("lines_imaginary_conic.json")).unwrap();
    assert_eq!(report.r, 5);
    let pair = report.points.iter().find(|p| p.record.field().degree() == 2).expect("conjugate pair");
    assert_eq!(pair.record.multiplicity, 2);
    assert!(pair.superisolated && pair.record.ordinary);
}
