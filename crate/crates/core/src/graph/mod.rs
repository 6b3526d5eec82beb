//! Decorated graphs: the trees `T_k`, the bouquet `T` of discriminant
//! base points and the graph `G0` of the blown-up tangent cone.

mod emit;

pub use emit::{emit_dot, emit_json, parse_json};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Rational;
use crate::cluster::{attach_cusp, matrix_oracle, Cluster, ClusterError};
use crate::curve::ComponentData;
use crate::sis::{CaseTag, SisReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("T_k needs k >= 2, got {0}")]
    BadK(u32),
    #[error("graphs are only defined when the tangent cone has ordinary singularities")]
    NotLne,
    #[error("G0 needs the components of f_d")]
    MissingComponents,
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("component {0} gets a negative number of polar arrows")]
    NegativeArrows(usize),
    #[error("bookkeeping and intersection matrix disagree at vertex {0}")]
    OracleMismatch(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum VertexKind {
    Root,
    DeltaNode,
    SeparationNode,
    StringVertex,
    #[serde(rename = "LNode")]
    LNode,
    #[serde(rename = "PNode")]
    PNode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
    pub weight: i64,
    pub m: u64,
    #[serde(with = "opt_rational")]
    pub q: Option<Rational>,
    pub genus: Option<i64>,
    pub arrows: u64,
    #[serde(rename = "inTPrime")]
    pub in_t_prime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Meta {
    pub graph: String,
    pub case: Option<String>,
    pub r: usize,
    pub k_list: Vec<u32>,
    #[serde(rename = "N0")]
    pub n0: Option<i64>,
    /// Decorations computed here rather than read off a closed formula.
    pub derived: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub meta: Meta,
}

mod opt_rational {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::algebra::{fmt_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&fmt_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse::<Rational>().map_err(D::Error::custom))
            .transpose()
    }
}

impl DualGraph {
    pub fn vertex(&self, id: usize) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn root(&self) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.kind == VertexKind::Root)
    }

    pub fn of_kind(&self, kind: VertexKind) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(move |v| v.kind == kind)
    }

    /// Neighbours with edge multiplicity.
    pub fn neighbours(&self, id: usize) -> Vec<(usize, u32)> {
        self.edges
            .iter()
            .filter_map(|e| match (e.a == id, e.b == id) {
                (true, _) => Some((e.b, e.mult)),
                (_, true) => Some((e.a, e.mult)),
                _ => None,
            })
            .collect()
    }

    /// Degree counting edge multiplicity and arrows.
    pub fn valency(&self, id: usize) -> u64 {
        let edges: u64 = self.neighbours(id).iter().map(|&(_, m)| m as u64).sum();
        edges + self.vertex(id).map_or(0, |v| v.arrows)
    }

    /// Vertices whose divisor meets the strict transform of the
    /// discriminant: Δ-nodes, and the root when it carries arrows.
    pub fn is_delta_node(&self, v: &Vertex) -> bool {
        v.kind == VertexKind::DeltaNode || (v.kind == VertexKind::Root && v.arrows > 0)
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        let edges: usize = self.edges.iter().map(|e| e.mult as usize).sum();
        n > 0 && edges + 1 == n && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.first() else { return true };
        let mut seen = std::collections::BTreeSet::from([start.id]);
        let mut stack = vec![start.id];
        while let Some(v) = stack.pop() {
            for (u, _) in self.neighbours(v) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Removing the vertices in `T'` leaves strings: each connected piece is
    /// a path of vertices of valency at most 2, ending in a valency-1 vertex.
    pub fn complement_is_strings(&self) -> bool {
        let outside: Vec<&Vertex> = self.vertices.iter().filter(|v| !v.in_t_prime).collect();
        let ids: std::collections::BTreeSet<usize> = outside.iter().map(|v| v.id).collect();
        let mut seen = std::collections::BTreeSet::new();
        for v in &outside {
            if self.valency(v.id) > 2 || v.arrows > 0 {
                return false;
            }
            if seen.contains(&v.id) {
                continue;
            }
            // collect the piece and count its vertices of valency 1
            let mut piece = vec![v.id];
            let mut stack = vec![v.id];
            seen.insert(v.id);
            while let Some(x) = stack.pop() {
                for (u, _) in self.neighbours(x) {
                    if ids.contains(&u) && seen.insert(u) {
                        piece.push(u);
                        stack.push(u);
                    }
                }
            }
            let attachments: usize = piece
                .iter()
                .map(|&x| self.neighbours(x).iter().filter(|(u, _)| !ids.contains(u)).count())
                .sum();
            let ends = piece.iter().filter(|&&x| self.valency(x) == 1).count();
            if attachments != 1 || ends != 1 {
                return false;
            }
        }
        true
    }
}

fn check_oracles(c: &Cluster) -> Result<(), GraphError> {
    let (m, q) = matrix_oracle(c)?;
    for (v, d) in c.decorations().iter().enumerate() {
        if Rational::from_integer(d.m.into()) != m[v] || d.q != q[v] {
            return Err(GraphError::OracleMismatch(v));
        }
    }
    Ok(())
}

/// Vertices of a cluster with kinds assigned by the caller.
fn tree_from_cluster(
    c: &Cluster,
    kind: impl Fn(usize) -> VertexKind,
    arrows: impl Fn(usize) -> u64,
    meta: Meta,
) -> Result<DualGraph, GraphError> {
    check_oracles(c)?;
    let vertices = c
        .decorations()
        .into_iter()
        .enumerate()
        .map(|(v, d)| {
            let kind = kind(v);
            Vertex {
                id: v,
                kind,
                weight: d.euler_weight,
                m: d.m,
                q: Some(d.q),
                genus: None,
                arrows: arrows(v),
                in_t_prime: kind != VertexKind::StringVertex,
            }
        })
        .collect();
    let edges = c.edges().map(|(a, b)| Edge { a, b, mult: 1 }).collect();
    Ok(DualGraph { vertices, edges, meta })
}

/// The tree of the `(k, k+1)`-cusp with `k - 1` arrows at its Δ-node.
pub fn build_ti(k: u32) -> Result<DualGraph, GraphError> {
    if k < 2 {
        return Err(GraphError::BadK(k));
    }
    let mut c = Cluster::new();
    let created = attach_cusp(&mut c, k as usize);
    let delta = created[0];
    let meta = Meta {
        graph: "T_k".into(),
        case: None,
        r: 1,
        k_list: vec![k],
        n0: None,
        derived: Vec::new(),
    };
    tree_from_cluster(
        &c,
        |v| match v {
            0 => VertexKind::Root,
            v if v == delta => VertexKind::DeltaNode,
            _ => VertexKind::StringVertex,
        },
        |v| if v == delta { k as u64 - 1 } else { 0 },
        meta,
    )
}

fn check_lne(report: &SisReport) -> Result<(CaseTag, i64), GraphError> {
    match (report.lne, report.case_tag, &report.polar) {
        (Some(true), Some(tag), Some(p)) => Ok((tag, p.n0)),
        _ => Err(GraphError::NotLne),
    }
}

/// The bouquet of the `T_{k_i}` on a common root. In the second case the
/// root carries the `N0` smooth discriminant arrows and every root–Δ edge is
/// blown up once more.
pub fn build_t(report: &SisReport) -> Result<DualGraph, GraphError> {
    let (tag, n0) = check_lne(report)?;
    let ks = report.k_list();
    let mut c = Cluster::new();
    let mut deltas = Vec::new();
    for &k in &ks {
        deltas.push((attach_cusp(&mut c, k as usize)[0], k));
    }
    let mut separations = Vec::new();
    if tag == CaseTag::Case2 {
        for &(delta, _) in &deltas {
            c = c.blow_up_satellite(Cluster::ROOT, delta)?;
            separations.push(c.len() - 1);
        }
    }
    let mut derived = Vec::new();
    if !separations.is_empty() {
        derived.push("separationNode.q".to_string());
    }
    let meta = Meta {
        graph: "T".into(),
        case: Some(tag.as_str().into()),
        r: report.r,
        k_list: ks,
        n0: Some(n0),
        derived,
    };
    tree_from_cluster(
        &c,
        |v| {
            if v == Cluster::ROOT {
                VertexKind::Root
            } else if deltas.iter().any(|&(d, _)| d == v) {
                VertexKind::DeltaNode
            } else if separations.contains(&v) {
                VertexKind::SeparationNode
            } else {
                VertexKind::StringVertex
            }
        },
        |v| {
            if v == Cluster::ROOT {
                if tag == CaseTag::Case2 { n0 as u64 } else { 0 }
            } else {
                deltas.iter().find(|&&(d, _)| d == v).map_or(0, |&(_, k)| k as u64 - 1)
            }
        },
        meta,
    )
}

/// One L-node per component and one P-node per geometric singular point,
/// joined by edges of multiplicity `b_ij`.
pub fn build_g0(report: &SisReport) -> Result<DualGraph, GraphError> {
    let (tag, n0) = check_lne(report)?;
    let comp: &ComponentData = report.components.as_ref().ok_or(GraphError::MissingComponents)?;
    let d = report.d as i64;
    // geometric points: (k_i, b_i.)
    let points: Vec<(u32, &Vec<u32>)> = report
        .records()
        .zip(&comp.branch_counts)
        .flat_map(|(rec, b)| std::iter::repeat_n((rec.multiplicity, b), rec.point.conjugates()))
        .collect();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (j, &dj) in comp.degrees.iter().enumerate() {
        let dj = dj as i64;
        let (mut w, mut g, mut arrows) = (-dj, (dj - 1) * (dj - 2) / 2, dj * (d - 1));
        for &(k, b) in &points {
            let (k, b) = (k as i64, b[j] as i64);
            w -= k * b;
            g -= b * (b - 1) / 2;
            arrows -= b * (k - 1);
        }
        vertices.push(Vertex {
            id: j,
            kind: VertexKind::LNode,
            weight: w,
            m: 1,
            q: None,
            genus: Some(g),
            arrows: u64::try_from(arrows).map_err(|_| GraphError::NegativeArrows(j))?,
            in_t_prime: false,
        });
    }
    let base = comp.degrees.len();
    for (i, &(k, b)) in points.iter().enumerate() {
        vertices.push(Vertex {
            id: base + i,
            kind: VertexKind::PNode,
            weight: -1,
            m: k as u64,
            q: None,
            genus: None,
            arrows: k as u64 - 1,
            in_t_prime: false,
        });
        for (j, &bij) in b.iter().enumerate() {
            if bij > 0 {
                edges.push(Edge { a: j, b: base + i, mult: bij });
            }
        }
    }
    edges.sort();
    let meta = Meta {
        graph: "G0".into(),
        case: Some(tag.as_str().into()),
        r: report.r,
        k_list: report.k_list(),
        n0: Some(n0),
        derived: vec!["LNode.weight".into(), "LNode.genus".into(), "LNode.arrows".into()],
    };
    Ok(DualGraph { vertices, edges, meta })
}

/// `m_v w_v + sum over edges of m_u * mult + (degree of the component for
/// L-nodes) = 0` at every vertex of `G0`.
pub fn check_h_relation(g: &DualGraph, degrees: &[u32]) -> bool {
    g.vertices.iter().all(|v| {
        let mut total = v.m as i64 * v.weight;
        for (u, mult) in g.neighbours(v.id) {
            total += g.vertex(u).map_or(0, |u| u.m as i64) * mult as i64;
        }
        if v.kind == VertexKind::LNode {
            total += degrees.get(v.id).copied().unwrap_or(0) as i64;
        }
        total == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::sis::{decide_lne, SisInput};

    #[test]
    fn t2_shape() {
        let g = build_ti(2).unwrap();
        let w: Vec<i64> = g.vertices.iter().map(|v| v.weight).collect();
        assert_eq!(w, vec![-3, -2, -1]);
        let delta = g.of_kind(VertexKind::DeltaNode).next().unwrap();
        assert_eq!((delta.m, delta.arrows, delta.q.clone()), (2, 1, Some(ratio(3, 2))));
        assert!(g.is_tree());
    }

    #[test]
    fn ti_family() {
        for k in 2..=6u32 {
            let g = build_ti(k).unwrap();
            let delta = g.of_kind(VertexKind::DeltaNode).next().unwrap();
            assert_eq!(delta.m, k as u64);
            assert_eq!(delta.q, Some(ratio(k as i64 + 1, k as i64)));
            assert_eq!(g.valency(delta.id), k as u64 + 1);
            assert_eq!(g.root().unwrap().weight, -1 - k as i64);
            assert_eq!(g.of_kind(VertexKind::StringVertex).count(), k as usize - 1);
            assert!(g.of_kind(VertexKind::StringVertex).all(|v| v.weight == -2));
            assert!(g.complement_is_strings());
        }
        assert_eq!(build_ti(1), Err(GraphError::BadK(1)));
    }

    #[test]
    fn four_lines_tree_and_g0() {
        let rep = decide_lne(
            &SisInput::parse_factored(&["x", "y", "x+y", "x-y"], "z^5").unwrap(),
        )
        .unwrap();
        let t = build_t(&rep).unwrap();
        assert_eq!(t.root().unwrap().weight, -5);
        assert_eq!(t.root().unwrap().arrows, 0);
        let g0 = build_g0(&rep).unwrap();
        assert_eq!(g0.of_kind(VertexKind::LNode).map(|v| v.weight).collect::<Vec<_>>(), vec![-5; 4]);
        let p = g0.of_kind(VertexKind::PNode).next().unwrap();
        assert_eq!((p.weight, p.m, p.arrows), (-1, 4, 3));
        assert!(check_h_relation(&g0, &[1, 1, 1, 1]));
        assert!(g0.is_connected());
    }

    #[test]
    fn lines_and_conic_case2() {
        let rep = decide_lne(
            &SisInput::parse_factored(&["x", "y", "x^2+y^2+z^2"], "z^5").unwrap(),
        )
        .unwrap();
        let t = build_t(&rep).unwrap();
        assert_eq!(t.root().unwrap().weight, -16);
        assert_eq!(t.root().unwrap().arrows, 2);
        let seps: Vec<&Vertex> = t.of_kind(VertexKind::SeparationNode).collect();
        assert_eq!(seps.len(), 5);
        assert!(seps.iter().all(|v| v.weight == -1 && v.m == 3 && v.q == Some(ratio(4, 3))));
        assert!(t.of_kind(VertexKind::DeltaNode).all(|v| v.weight == -2));
        assert!(t.complement_is_strings());
        assert!(t.is_tree());

        let g0 = build_g0(&rep).unwrap();
        let l: Vec<(i64, u64)> = g0.of_kind(VertexKind::LNode).map(|v| (v.weight, v.arrows)).collect();
        assert_eq!(l, vec![(-7, 0), (-7, 0), (-10, 2)]);
        assert!(check_h_relation(&g0, &[1, 1, 2]));
    }

    #[test]
    fn smooth_cone() {
        let rep = decide_lne(&SisInput::parse_factored(&["x^3+y^3+z^3"], "x^4").unwrap()).unwrap();
        let t = build_t(&rep).unwrap();
        assert_eq!(t.vertices.len(), 1);
        assert_eq!(t.root().unwrap().arrows, 6);
        let g0 = build_g0(&rep).unwrap();
        assert_eq!(g0.vertices.len(), 1);
        let l = &g0.vertices[0];
        assert_eq!((l.weight, l.genus, l.arrows), (-3, Some(1), 6));
    }

    #[test]
    fn refuses_non_ordinary() {
        let rep = decide_lne(&SisInput::parse("z*x^2+y^3", "(x+y+z)^4").unwrap()).unwrap();
        assert_eq!(build_t(&rep), Err(GraphError::NotLne));
        let rep = decide_lne(&SisInput::parse("x*y*(x+y)*(x-y)", "z^5").unwrap()).unwrap();
        assert_eq!(build_g0(&rep), Err(GraphError::MissingComponents));
    }
}
