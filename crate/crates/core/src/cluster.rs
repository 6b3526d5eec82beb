//! Clusters of infinitely near points over a smooth surface point.
//!
//! Point `i` is blown up to create divisor `E_i`; point 0 is the origin.
//! Every cluster carries two independent ways to decorate its divisors:
//! blow-up bookkeeping with the proximity recursion, and inversion of the
//! intersection matrix. [`Cluster::decorations`] and [`matrix_oracle`] must
//! agree.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{inverse, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("no divisor with index {0}")]
    UnknownDivisor(usize),
    #[error("divisors {0} and {1} do not intersect")]
    NotAdjacent(usize, usize),
    #[error("intersection matrix is singular")]
    Singular,
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
}

/// A blown-up point, addressed by creation index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPoint {
    /// Earlier divisors the point lies on: one for a free point, two for a
    /// satellite point, none for the origin. These are also the points it is
    /// proximate to.
    pub proximate_to: Vec<usize>,
}

impl ClusterPoint {
    pub fn is_free(&self) -> bool {
        self.proximate_to.len() == 1
    }

    pub fn is_satellite(&self) -> bool {
        self.proximate_to.len() == 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoration {
    pub euler_weight: i64,
    /// Multiplicity of a generic linear form along the divisor.
    pub m: u64,
    /// Inner rate.
    pub q: Rational,
}

/// Immutable cluster; each blow-up returns a new value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    points: Vec<ClusterPoint>,
    weights: Vec<i64>,
    m: Vec<u64>,
    edges: BTreeSet<(usize, usize)>,
}

impl Default for Cluster {
    fn default() -> Self {
        Self::new()
    }
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Cluster {
    /// The single blow-up of the origin.
    pub fn new() -> Self {
        Cluster {
            points: vec![ClusterPoint { proximate_to: Vec::new() }],
            weights: vec![-1],
            m: vec![1],
            edges: BTreeSet::new(),
        }
    }

    pub const ROOT: usize = 0;

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[ClusterPoint] {
        &self.points
    }

    /// Current intersections between divisors, as sorted pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&edge(a, b))
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn euler_weight(&self, v: usize) -> i64 {
        self.weights[v]
    }

    /// Multiplicity from the blow-up bookkeeping (sum over the parents).
    pub fn m(&self, v: usize) -> u64 {
        self.m[v]
    }

    fn check(&self, v: usize) -> Result<(), ClusterError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(ClusterError::UnknownDivisor(v))
        }
    }

    /// Blows up a general point of `E_v`.
    pub fn blow_up_free(&self, v: usize) -> Result<Cluster, ClusterError> {
        self.check(v)?;
        let mut c = self.clone();
        let n = c.len();
        c.points.push(ClusterPoint { proximate_to: vec![v] });
        c.weights[v] -= 1;
        c.weights.push(-1);
        c.m.push(c.m[v]);
        c.edges.insert(edge(v, n));
        Ok(c)
    }

    /// Blows up the intersection point of `E_a` and `E_b`.
    pub fn blow_up_satellite(&self, a: usize, b: usize) -> Result<Cluster, ClusterError> {
        self.check(a)?;
        self.check(b)?;
        if !self.adjacent(a, b) {
            return Err(ClusterError::NotAdjacent(a, b));
        }
        let mut c = self.clone();
        let n = c.len();
        c.points.push(ClusterPoint { proximate_to: vec![a.min(b), a.max(b)] });
        c.weights[a] -= 1;
        c.weights[b] -= 1;
        c.weights.push(-1);
        c.m.push(c.m[a] + c.m[b]);
        c.edges.remove(&edge(a, b));
        c.edges.insert(edge(a, n));
        c.edges.insert(edge(b, n));
        Ok(c)
    }

    /// Multiplicities at the cluster points of a curvette of `E_v`, by the
    /// reverse proximity recursion.
    pub fn curvette_multiplicities(&self, v: usize) -> Vec<u64> {
        let mut mult = vec![0u64; self.len()];
        mult[v] = 1;
        for j in (0..v).rev() {
            mult[j] = (j + 1..=v)
                .filter(|&i| self.points[i].proximate_to.contains(&j))
                .map(|i| mult[i])
                .sum();
        }
        mult
    }

    /// Inner rate of `E_v`: intersection number of two curvettes through
    /// distinct points of `E_v` (Noether's formula) over `m^2`.
    pub fn inner_rate(&self, v: usize) -> Rational {
        let mult = self.curvette_multiplicities(v);
        let meet: u64 = mult.iter().map(|x| x * x).sum();
        Rational::new(meet.into(), (mult[0] * mult[0]).into())
    }

    pub fn decorations(&self) -> Vec<Decoration> {
        (0..self.len())
            .map(|v| Decoration {
                euler_weight: self.weights[v],
                m: self.m[v],
                q: self.inner_rate(v),
            })
            .collect()
    }

    /// Intersection matrix of the exceptional curves.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut a = vec![vec![0; n]; n];
        for (v, row) in a.iter_mut().enumerate() {
            row[v] = self.weights[v];
        }
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }
}

/// Exact `L D L^T` pivots of a symmetric matrix, without pivoting.
fn ldl_pivots(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut a = a.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = a[k][k].clone();
        pivots.push(p.clone());
        if p.is_zero() {
            break;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for j in k + 1..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    pivots
}

/// `m` and `q` from the inverse of the intersection matrix:
/// `m_v = -(I^-1)_{v,root}` and `q_v = -(I^-1)_{vv} / m_v^2`.
pub fn matrix_oracle(cluster: &Cluster) -> Result<(Vec<Rational>, Vec<Rational>), ClusterError> {
    let a: Vec<Vec<Rational>> = cluster
        .intersection_matrix()
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    if ldl_pivots(&a).iter().any(|p| !p.is_negative()) {
        return Err(ClusterError::NotNegativeDefinite);
    }
    let inv = inverse(&a).ok_or(ClusterError::Singular)?;
    let m: Vec<Rational> = (0..a.len()).map(|v| -inv[v][Cluster::ROOT].clone()).collect();
    let q = (0..a.len()).map(|v| -inv[v][v].clone() / (&m[v] * &m[v])).collect();
    Ok((m, q))
}

/// The minimal resolution cluster of the `(k, k+1)`-cusp: a free point on
/// the root, then `k - 1` satellites on the root and the last divisor.
/// The last divisor has `m = k` and `q = (k+1)/k`.
pub fn cusp_cluster(k: usize) -> Cluster {
    let mut c = Cluster::new();
    attach_cusp(&mut c, k);
    c
}

/// Appends a `(k, k+1)`-cusp sequence at a fresh free point of the root and
/// returns the indices of the created divisors, the last one first.
pub fn attach_cusp(c: &mut Cluster, k: usize) -> Vec<usize> {
    let first = c.len();
    *c = c.blow_up_free(Cluster::ROOT).expect("root exists");
    for _ in 1..k {
        let last = c.len() - 1;
        *c = c.blow_up_satellite(Cluster::ROOT, last).expect("root meets the last divisor");
    }
    (first..c.len()).rev().collect()
}
