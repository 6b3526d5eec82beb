//! Random inputs and brute-force oracles used to cross-check the exact
//! pipeline.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::algebra::roots::rational_roots;
use crate::algebra::{rat, upoly, Rational, Rationals};
use crate::cluster::{Cluster, ClusterError};
use crate::curve::SingularPointRecord;

pub type Line = [i64; 3];

/// `n` pairwise distinct lines with small integer coefficients.
pub fn random_lines<R: Rng>(rng: &mut R, n: usize) -> Vec<Line> {
    let mut lines: Vec<Line> = Vec::with_capacity(n);
    while lines.len() < n {
        let l = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        if l == [0, 0, 0] || lines.iter().any(|m| cross(m, &l) == [0, 0, 0]) {
            continue;
        }
        lines.push(l);
    }
    lines
}

fn cross(a: &Line, b: &Line) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Scales so the last nonzero coordinate is 1.
pub fn normalize(p: [Rational; 3]) -> [Rational; 3] {
    let last = p.iter().rev().find(|c| !c.is_zero()).expect("nonzero point").clone();
    p.map(|c| c / &last)
}

pub fn line_text(l: &Line) -> String {
    format!("({})*x + ({})*y + ({})*z", l[0], l[1], l[2])
}

/// Every pairwise intersection point with the number of lines through it.
pub fn line_intersections(lines: &[Line]) -> BTreeMap<[Rational; 3], u32> {
    let mut points = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = normalize(cross(&lines[i], &lines[j]).map(rat));
            let through = lines
                .iter()
                .filter(|l| l.iter().zip(&p).map(|(&a, c)| rat(a) * c).sum::<Rational>().is_zero())
                .count();
            points.insert(p, through as u32);
        }
    }
    points
}

/// The geometric points of a record whose modulus splits into rational
/// linear factors. `None` when some root is irrational.
pub fn rational_points(record: &SingularPointRecord) -> Option<Vec<[Rational; 3]>> {
    let m = record.field().modulus();
    let roots = rational_roots(m).ok()?;
    if roots.len() != m.len() - 1 {
        return None;
    }
    Some(
        roots
            .iter()
            .map(|r| normalize(record.point.coords.clone().map(|c| upoly::eval(&Rationals, &c, r))))
            .collect(),
    )
}

/// A random sequence of `n` blow-ups: each step is a free point on a random
/// divisor, or a satellite point at a random intersection of two adjacent
/// divisors.
pub fn random_cluster<R: Rng>(rng: &mut R, n: usize) -> Result<Cluster, ClusterError> {
    let mut c = Cluster::new();
    while c.len() < n {
        let edges: Vec<(usize, usize)> = c.edges().collect();
        c = if !edges.is_empty() && rng.gen_bool(0.5) {
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            c.blow_up_satellite(a, b)?
        } else {
            c.blow_up_free(rng.gen_range(0..c.len()))?
        };
    }
    Ok(c)
}

/// `sum k_i (k_i - 1)` over the oracle points.
pub fn bezout_sum(points: &BTreeMap<[Rational; 3], u32>) -> i64 {
    points.values().map(|&k| i64::from(k) * (i64::from(k) - 1)).sum()
}

/// A linear form value at a point.
pub fn eval_linear(l: &Line, p: &[Rational; 3]) -> Rational {
    l.iter().zip(p).fold(Rational::zero(), |acc, (&a, c)| acc + rat(a) * c)
}

