mod common;

use sis_lne::algebra::{ratio, Rational};
use sis_lne::cluster::{cusp_cluster, matrix_oracle};
use sis_lne::graph::{build_g0, build_t, build_ti, check_h_relation, VertexKind};
use sis_lne::sis::decide_lne;

#[test]
fn cusp_trees_for_small_k() {
    for k in 2u32..=6 {
        let g = build_ti(k).unwrap();
        let delta: Vec<_> = g.of_kind(VertexKind::DeltaNode).collect();
        assert_eq!(delta.len(), 1);
        let d = delta[0];
        assert_eq!(d.m, u64::from(k));
        assert_eq!(d.q, Some(ratio(i64::from(k) + 1, i64::from(k))));
        assert_eq!(d.arrows, u64::from(k) - 1);
        assert_eq!(g.valency(d.id), u64::from(k) + 1);
        assert_eq!(g.root().unwrap().weight, -1 - i64::from(k));

        // matrix oracle on the same cluster
        let c = cusp_cluster(k as usize);
        let (m, q) = matrix_oracle(&c).unwrap();
        let v = d.id;
        assert_eq!(m[v], Rational::from_integer(k.into()));
        assert_eq!(q[v], ratio(i64::from(k) + 1, i64::from(k)));
        assert_eq!(c.inner_rate(v), q[v]);
        assert!(g.is_tree() && g.complement_is_strings());
    }
}

#[test]
fn bouquet_root_weights() {
    for (name, root, case2) in [
        ("concurrent_lines.json", -5, false),
        ("concurrent_quartic.json", -5, false),
        ("lines_triple_point.json", -10, false),
        ("lines_imaginary_conic.json", -16, true),
        ("conic_two_lines.json", -16, true),
        ("two_conics.json", -13, true),
        ("smooth_cubic.json", -1, true),
    ] {
        let report = decide_lne(&common::load(name)).unwrap();
        let t = build_t(&report).unwrap();
        assert_eq!(t.root().unwrap().weight, root, "{name}");
        let ks: i64 = report.k_list().iter().map(|&k| i64::from(k)).sum();
        let r = report.r as i64;
        assert_eq!(root, -1 - ks - if case2 { r } else { 0 }, "{name}");
        assert_eq!(t.of_kind(VertexKind::SeparationNode).count() as i64, if case2 { r } else { 0 });

        // arrows: k_i - 1 per Delta-node plus N0 at the root in Case 2
        let n0 = report.polar.as_ref().unwrap().n0;
        let arrows: u64 = t.vertices.iter().map(|v| v.arrows).sum();
        let expected: i64 = report.k_list().iter().map(|&k| i64::from(k) - 1).sum::<i64>() + if case2 { n0 } else { 0 };
        assert_eq!(arrows as i64, expected, "{name}");
        assert!(t.is_tree() && t.complement_is_strings(), "{name}");
    }
}

#[test]
fn h_relation_on_factored_fixtures() {
    for name in ["concurrent_lines.json", "lines_imaginary_conic.json", "lines_triple_point.json", "conic_two_lines.json", "two_conics.json", "smooth_cubic.json"] {
        let report = decide_lne(&common::load(name)).unwrap();
        let data = report.components.clone().unwrap();
        let g0 = build_g0(&report).unwrap();
        assert!(check_h_relation(&g0, &data.degrees), "{name}");
        for (rec, b) in report.records().zip(&data.branch_counts) {
            assert_eq!(b.iter().sum::<u32>(), rec.multiplicity, "{name}");
        }
        // one P-node per geometric point
        assert_eq!(g0.of_kind(VertexKind::PNode).count(), report.r, "{name}");
    }
}

#[test]
fn lne_implies_ordinary_and_superisolated() {
    for name in common::valid_fixtures() {
        let report = decide_lne(&common::load(name)).unwrap();
        if report.lne == Some(true) {
            assert!(report.superisolated);
            assert!(report.points.iter().all(|p| p.record.ordinary && p.superisolated), "{name}");
        }
        let d = i64::from(report.d);
        let local: i64 = report.k_list().iter().map(|&k| i64::from(k) * (i64::from(k) - 1)).sum();
        assert!(local <= d * (d - 1), "{name}");
    }
}
