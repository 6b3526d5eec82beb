use std::fmt::Write;

use crate::algebra::fmt_rational;

use super::{DualGraph, VertexKind};

pub const GRAPH_SCHEMA_VERSION: &str = "1";

/// Pretty JSON with vertices sorted by id and a trailing newline.
pub fn emit_json(g: &DualGraph) -> String {
    let mut g = g.clone();
    g.vertices.sort_by_key(|v| v.id);
    g.edges.sort();
    let mut v = serde_json::to_value(&g).expect("graph serializes");
    v["schemaVersion"] = GRAPH_SCHEMA_VERSION.into();
    let mut s = serde_json::to_string_pretty(&v).expect("graph serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<DualGraph, serde_json::Error> {
    serde_json::from_str(text)
}

/// Graphviz text. Root and L-nodes are drawn double-circled, arrows become
/// point-shaped pseudo-vertices, and a multi-edge is repeated.
pub fn emit_dot(g: &DualGraph) -> String {
    let mut vertices = g.vertices.clone();
    vertices.sort_by_key(|v| v.id);
    let mut edges = g.edges.clone();
    edges.sort();

    let mut out = String::new();
    let name = g.meta.graph.replace(|c: char| !c.is_ascii_alphanumeric(), "_");
    writeln!(out, "graph {name} {{").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in &vertices {
        let shape = match v.kind {
            VertexKind::Root | VertexKind::LNode => "doublecircle",
            _ => "circle",
        };
        let mut label = format!("w={}, m={}", v.weight, v.m);
        if let Some(q) = &v.q {
            write!(label, ", q={}", fmt_rational(q)).unwrap();
        }
        if let Some(genus) = v.genus {
            write!(label, ", g={genus}").unwrap();
        }
        writeln!(out, "  v{} [shape={shape}, label=\"{label}\"];", v.id).unwrap();
    }
    for e in &edges {
        for _ in 0..e.mult {
            writeln!(out, "  v{} -- v{};", e.a, e.b).unwrap();
        }
    }
    for v in &vertices {
        for i in 0..v.arrows {
            writeln!(out, "  a{}_{i} [shape=point, label=\"\"];", v.id).unwrap();
            writeln!(out, "  v{} -- a{}_{i} [dir=forward];", v.id, v.id).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_ti;

    #[test]
    fn json_round_trip() {
        let g = build_ti(3).unwrap();
        assert_eq!(parse_json(&emit_json(&g)).unwrap(), g);
    }

    #[test]
    fn dot_for_t2() {
        let dot = emit_dot(&build_ti(2).unwrap());
        assert_eq!(dot.matches("shape=circle,").count() + dot.matches("doublecircle").count(), 3);
        assert_eq!(dot.matches("shape=point").count(), 1);
        assert!(dot.contains("label=\"w=-1, m=2, q=3/2\""));
        assert!(dot.starts_with("graph T_k {"));
    }
}
