use std::path::PathBuf;

use serde_json::Value;
use sis_lne::sis::SisInput;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Reads a fixture document into an input.
pub fn load(name: &str) -> SisInput {
    let text = std::fs::read_to_string(fixtures_dir().join(name)).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    let fd1 = doc["fd1"].as_str().unwrap();
    match &doc["fd"] {
        Value::String(s) => SisInput::parse(s, fd1).unwrap(),
        other => {
            let fs: Vec<&str> = other["factors"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
            SisInput::parse_factored(&fs, fd1).unwrap()
        }
    }
}

/// Fixtures with a valid equation.
pub fn valid_fixtures() -> Vec<&'static str> {
    vec![
        "concurrent_lines.json",
        "lines_imaginary_conic.json",
        "concurrent_quartic.json",
        "lines_triple_point.json",
        "cusp.json",
        "smooth_cubic.json",
        "conic_two_lines.json",
        "two_conics.json",
        "tacnode.json",
        "not_superisolated.json",
    ]
}
