//! Machine-readable verdict report.

use serde::Serialize;

use crate::sis::SisReport;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PointSummary {
    /// Projective coordinates, elements of `Q[t]/(modulus)`.
    pub coords: Vec<String>,
    pub modulus: Option<String>,
    /// Number of geometric points the entry stands for.
    pub conjugates: usize,
    pub k: u32,
    pub ordinary: bool,
    pub superisolated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    #[serde(rename = "schemaVersion")]
    pub schema_version: &'static str,
    pub d: u32,
    pub superisolated: bool,
    pub lne: Option<bool>,
    pub r: usize,
    pub points: Vec<PointSummary>,
    pub case: Option<&'static str>,
    #[serde(rename = "N0")]
    pub n0: Option<i64>,
    /// Index into `points` of the entry that decides a negative answer.
    pub witness: Option<usize>,
}

impl CheckReport {
    pub fn new(report: &SisReport) -> Self {
        let points = report
            .points
            .iter()
            .map(|p| {
                let (coords, modulus) = p.record.point.display();
                PointSummary {
                    coords,
                    modulus,
                    conjugates: p.record.point.conjugates(),
                    k: p.record.multiplicity,
                    ordinary: p.record.ordinary,
                    superisolated: p.superisolated,
                }
            })
            .collect();
        CheckReport {
            schema_version: SCHEMA_VERSION,
            d: report.d,
            superisolated: report.superisolated,
            lne: report.lne,
            r: report.r,
            points,
            case: report.case_tag.map(|c| c.as_str()),
            n0: report.polar.as_ref().map(|p| p.n0),
            witness: report.witness,
        }
    }

    /// One-paragraph plain-text summary.
    pub fn summary(&self) -> String {
        let verdict = match self.lne {
            Some(true) => "LNE",
            Some(false) => "not LNE",
            None => "no verdict (not superisolated)",
        };
        let mut out = format!(
            "degree {}, {} singular point(s) of the tangent cone, {}",
            self.d, self.r, verdict
        );
        if let (Some(case), Some(n0)) = (self.case, self.n0) {
            out.push_str(&format!(", {case}, N0 = {n0}"));
        }
        for (i, p) in self.points.iter().enumerate() {
            out.push_str(&format!("\n  [{}] [{}] k={}", i, p.coords.join(" : "), p.k));
            if let Some(m) = &p.modulus {
                out.push_str(&format!(" where {m} = 0 ({} points)", p.conjugates));
            }
            if !p.ordinary {
                out.push_str(" not ordinary");
            }
            if !p.superisolated {
                out.push_str(" f_(d+1) vanishes");
            }
        }
        out
    }
}
