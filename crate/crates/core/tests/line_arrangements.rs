use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sis_lne::algebra::{MPolyRing, Rational};
use sis_lne::curve::{singular_points, singular_points_from, SingularPointRecord};
use sis_lne::graph::{build_g0, build_t, check_h_relation};
use sis_lne::oracle::{bezout_sum, eval_linear, line_intersections, line_text, random_lines, rational_points};
use sis_lne::sis::{decide_lne, CaseTag, SisInput};

const CASES: u64 = 100;

fn arrangement(seed: u64) -> (Vec<[i64; 3]>, [i64; 3]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=6);
    let lines = random_lines(&mut rng, n);
    let l = [rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(1..=4)];
    (lines, l)
}

fn located(records: &[SingularPointRecord]) -> BTreeMap<[Rational; 3], u32> {
    let mut out = BTreeMap::new();
    for r in records {
        for p in rational_points(r).expect("intersection points of rational lines are rational") {
            assert!(out.insert(p, r.multiplicity).is_none(), "point reported twice");
        }
    }
    out
}

fn factored(lines: &[[i64; 3]], tail: &str) -> SisInput {
    let texts: Vec<String> = lines.iter().map(line_text).collect();
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    SisInput::parse_factored(&refs, tail).unwrap()
}

#[test]
fn singular_locus_matches_pairwise_intersections() {
    for seed in 0..CASES {
        let (lines, _) = arrangement(seed);
        let input = factored(&lines, &format!("z^{}", lines.len() + 1));
        let records = singular_points(&input.fd).unwrap();
        let oracle = line_intersections(&lines);
        assert_eq!(located(&records), oracle, "seed {seed}: {lines:?}");
        assert!(records.iter().all(|r| r.ordinary), "seed {seed}");
        let d = lines.len() as i64;
        assert_eq!(bezout_sum(&oracle), d * (d - 1), "seed {seed}");
    }
}

#[test]
fn returned_points_are_singular() {
    for seed in 0..CASES / 4 {
        let (lines, _) = arrangement(seed);
        let input = factored(&lines, &format!("z^{}", lines.len() + 1));
        for r in singular_points(&input.fd).unwrap() {
            let k = r.field().clone();
            let ring = MPolyRing::new(k.clone(), input.fd.vars.clone());
            let mut polys = vec![input.fd.clone()];
            polys.extend((0..3).map(|i| input.fd.partial(i)));
            for p in &polys {
                let v = ring.eval(&ring.from_rational_poly(p), &r.point.coords);
                assert!(v.is_empty(), "seed {seed}: nonzero value {v:?}");
            }
        }
    }
}

#[test]
fn ordinariness_does_not_depend_on_the_shear() {
    for seed in 0..CASES / 5 {
        let (lines, _) = arrangement(seed);
        let input = factored(&lines, &format!("z^{}", lines.len() + 1));
        let a = located(&singular_points_from(&input.fd, 0).unwrap());
        let b = located(&singular_points_from(&input.fd, 11).unwrap());
        assert_eq!(a, b, "seed {seed}");
    }
}

#[test]
fn verdict_with_linear_power_tail() {
    for seed in 0..CASES {
        let (lines, l) = arrangement(seed);
        let d = lines.len() as u32;
        let input = factored(&lines, &format!("({})^{}", line_text(&l), d + 1));
        let report = decide_lne(&input).unwrap();
        let oracle = line_intersections(&lines);
        let avoids = oracle.keys().all(|p| eval_linear(&l, p) != Rational::from_integer(0.into()));
        assert_eq!(report.superisolated, avoids, "seed {seed}");
        if !avoids {
            assert_eq!(report.lne, None);
            continue;
        }
        assert_eq!(report.lne, Some(true), "seed {seed}");
        assert_eq!(report.case_tag, Some(CaseTag::Case1), "seed {seed}");
        assert_eq!(report.polar.as_ref().unwrap().n0, 0);

        let data = report.components.as_ref().unwrap();
        for (rec, b) in report.records().zip(&data.branch_counts) {
            assert_eq!(b.iter().sum::<u32>(), rec.multiplicity, "seed {seed}");
        }
        let g0 = build_g0(&report).unwrap();
        assert!(check_h_relation(&g0, &data.degrees), "seed {seed}");
        let t = build_t(&report).unwrap();
        let ks: i64 = report.k_list().iter().map(|&k| i64::from(k)).sum();
        assert_eq!(t.root().unwrap().weight, -1 - ks, "seed {seed}");
        assert!(t.is_tree() && t.complement_is_strings());
    }
}

#[test]
fn conic_makes_n0_positive() {
    // N0 = sum d_j (d_j - 1) whenever the verdict is positive
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for seed in 0..40 {
        let (lines, _) = arrangement(seed);
        let lines = &lines[..lines.len().min(3)];
        let a: i64 = rng.gen_range(1..=3);
        let b: i64 = rng.gen_range(1..=3);
        let conic = format!("{a}*x^2 + {b}*y^2 - z^2 + x*y");
        let mut texts: Vec<String> = lines.iter().map(line_text).collect();
        texts.push(conic);
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let d = lines.len() as u32 + 2;
        let tail = format!("(x + 2*y + 7*z)^{}", d + 1);
        let Ok(input) = SisInput::parse_factored(&refs, &tail) else { continue };
        let Ok(report) = decide_lne(&input) else { continue };
        if report.lne != Some(true) {
            continue;
        }
        let data = report.components.as_ref().unwrap();
        let expected: i64 = data.degrees.iter().map(|&d| i64::from(d) * (i64::from(d) - 1)).sum();
        assert_eq!(report.polar.as_ref().unwrap().n0, expected, "seed {seed}");
        assert_eq!(report.case_tag, Some(CaseTag::Case2));
        assert!(check_h_relation(&build_g0(&report).unwrap(), &data.degrees));
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} usable conic arrangements");
}

#[test]
fn scaling_does_not_change_the_verdict() {
    for seed in 0..20 {
        let (lines, l) = arrangement(seed);
        let d = lines.len() as u32;
        let fd: Vec<String> = lines.iter().map(line_text).collect();
        let fd = fd.join(")*(");
        let tail = format!("({})^{}", line_text(&l), d + 1);
        let base = decide_lne(&SisInput::parse(&format!("({fd})"), &tail).unwrap()).unwrap();
        let scaled = decide_lne(&SisInput::parse(&format!("-3/7*({fd})"), &format!("5*{tail}")).unwrap()).unwrap();
        assert_eq!(
            (base.superisolated, base.lne, base.r, base.k_list()),
            (scaled.superisolated, scaled.lne, scaled.r, scaled.k_list())
        );
    }
}
