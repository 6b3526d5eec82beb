use std::collections::VecDeque;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sis_lne::algebra::resultant::determinant;
use sis_lne::algebra::{Rational, Rationals};
use sis_lne::cluster::{matrix_oracle, Cluster};
use sis_lne::oracle::random_cluster;

fn cluster(seed: u64, n: usize) -> Cluster {
    random_cluster(&mut ChaCha8Rng::seed_from_u64(seed), n).unwrap()
}

/// Leading principal minors of `-I` are all positive.
fn negative_definite(c: &Cluster) -> bool {
    let a: Vec<Vec<Rational>> = c
        .intersection_matrix()
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer((-x).into())).collect())
        .collect();
    (1..=a.len()).all(|k| {
        let minor: Vec<Vec<Rational>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&Rationals, minor).unwrap() > Rational::from_integer(0.into())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn bookkeeping_matches_matrix_oracle(seed in any::<u64>(), n in 1usize..=12) {
        let c = cluster(seed, n);
        let (m, q) = matrix_oracle(&c).unwrap();
        for (v, d) in c.decorations().iter().enumerate() {
            prop_assert_eq!(Rational::from_integer(d.m.into()), m[v].clone(), "m at {}", v);
            prop_assert_eq!(&d.q, &q[v], "q at {}", v);
        }
    }

    #[test]
    fn stays_negative_definite(seed in any::<u64>(), n in 1usize..=12) {
        prop_assert!(negative_definite(&cluster(seed, n)));
    }

    #[test]
    fn dual_graph_is_a_tree(seed in any::<u64>(), n in 1usize..=12) {
        let c = cluster(seed, n);
        prop_assert_eq!(c.edges().count() + 1, c.len());
    }

    #[test]
    fn rate_increases_away_from_root(seed in any::<u64>(), n in 2usize..=12) {
        let c = cluster(seed, n);
        let dec = c.decorations();
        let mut seen = vec![false; c.len()];
        let mut queue = VecDeque::from([Cluster::ROOT]);
        seen[Cluster::ROOT] = true;
        while let Some(v) = queue.pop_front() {
            for u in c.neighbours(v) {
                if !seen[u] {
                    prop_assert!(dec[u].q > dec[v].q, "q({}) = {} after q({}) = {}", u, dec[u].q, v, dec[v].q);
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
    }
}
