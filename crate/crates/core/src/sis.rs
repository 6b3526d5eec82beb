//! The superisolated model `f_d + f_{d+1} = 0`: input validation, the
//! superisolatedness check, the LNE verdict and the polar counts.

use thiserror::Error;

use crate::algebra::mpoly::var_names;
use crate::algebra::{parse_polynomial, MPolyRing, ParseError, QPoly};
use crate::curve::{
    refine_records, singular_points_from, validate_components, ComponentData, CurveError,
    SingularPointRecord,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SisError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{0} is not homogeneous")]
    NotHomogeneous(&'static str),
    #[error("f_d must have degree at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("degree of f_(d+1) is {got}, expected {expected}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("f_(d+1) must be nonzero")]
    ZeroTail,
    #[error("equation has homogeneous pieces in degrees {0:?}; only f_d + f_(d+1) is supported")]
    UnsupportedShape(Vec<u32>),
    #[error("polar counts need an LNE verdict with only ordinary points")]
    NotOrdinary,
    #[error("case classification disagrees with component degrees (N0 = {n0}, degrees {degrees:?})")]
    CaseMismatch { n0: i64, degrees: Vec<u32> },
}

/// A validated pair `(f_d, f_{d+1})` with optional components of `f_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SisInput {
    pub fd: QPoly,
    pub fd1: QPoly,
    pub d: u32,
    pub factors: Option<Vec<QPoly>>,
    /// Where the shear search starts; the verdict does not depend on it.
    pub shear_offset: usize,
}

pub fn xyz() -> Vec<String> {
    var_names(&["x", "y", "z"])
}

impl SisInput {
    pub fn new(fd: QPoly, fd1: QPoly, factors: Option<Vec<QPoly>>) -> Result<Self, SisError> {
        if !fd.is_homogeneous() {
            return Err(SisError::NotHomogeneous("f_d"));
        }
        if !fd1.is_homogeneous() {
            return Err(SisError::NotHomogeneous("f_(d+1)"));
        }
        let d = fd.total_degree().unwrap_or(0);
        if d < 2 {
            return Err(SisError::DegreeTooSmall(d));
        }
        let d1 = fd1.total_degree().ok_or(SisError::ZeroTail)?;
        if d1 != d + 1 {
            return Err(SisError::DegreeMismatch { expected: d + 1, got: d1 });
        }
        Ok(SisInput { fd, fd1, d, factors, shear_offset: 0 })
    }

    /// Parses `f_d` and `f_{d+1}` over the variables `x, y, z`.
    pub fn parse(fd: &str, fd1: &str) -> Result<Self, SisError> {
        let vars = xyz();
        Self::new(parse_polynomial(fd, &vars)?, parse_polynomial(fd1, &vars)?, None)
    }

    /// Like [`parse`](Self::parse) with `f_d` given as a product of factors.
    pub fn parse_factored(factors: &[&str], fd1: &str) -> Result<Self, SisError> {
        let vars = xyz();
        let fs = factors
            .iter()
            .map(|s| parse_polynomial(s, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        let ring = MPolyRing::new(crate::algebra::Rationals, vars.clone());
        let fd = fs.iter().fold(crate::algebra::Ring::one(&ring), |acc, g| &acc * g);
        Self::new(fd, parse_polynomial(fd1, &vars)?, Some(fs))
    }

    /// Splits a full equation `f` into its two homogeneous pieces.
    pub fn from_equation(f: &QPoly) -> Result<Self, SisError> {
        let comps = f.homogeneous_components();
        let degs: Vec<u32> = comps.keys().copied().collect();
        match degs.as_slice() {
            [d, d1] if d + 1 == *d1 => Self::new(comps[d].clone(), comps[d1].clone(), None),
            _ => Err(SisError::UnsupportedShape(degs)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Every component of the tangent cone is a line.
    Case1,
    Case2,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2 => "Case2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarCounts {
    /// `k_i - 1` per record.
    pub per_point: Vec<u32>,
    /// Smooth-polar count `d(d-1) - sum k_i(k_i-1)` over geometric points.
    pub n0: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub record: SingularPointRecord,
    /// `f_{d+1}` does not vanish at the point.
    pub superisolated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SisReport {
    pub d: u32,
    pub superisolated: bool,
    /// `None` when the input is not superisolated.
    pub lne: Option<bool>,
    pub points: Vec<PointReport>,
    /// Number of geometric singular points.
    pub r: usize,
    pub case_tag: Option<CaseTag>,
    pub polar: Option<PolarCounts>,
    /// Index into `points` of the point that makes the verdict negative.
    pub witness: Option<usize>,
    pub components: Option<ComponentData>,
}

impl SisReport {
    pub fn records(&self) -> impl Iterator<Item = &SingularPointRecord> {
        self.points.iter().map(|p| &p.record)
    }

    /// Multiplicities of the geometric singular points, conjugates repeated.
    pub fn k_list(&self) -> Vec<u32> {
        self.records()
            .flat_map(|r| std::iter::repeat_n(r.multiplicity, r.point.conjugates()))
            .collect()
    }
}

/// Records with a per-point flag `f_{d+1}(p) != 0`, decided exactly in the
/// point's number field.
pub fn check_superisolated(
    input: &SisInput,
    records: &[SingularPointRecord],
) -> Result<Vec<PointReport>, SisError> {
    let flags = refine_records(records, |rec| {
        let k = rec.field();
        let ring = MPolyRing::new(k.clone(), input.fd1.vars.clone());
        let v = ring.eval(&ring.from_rational_poly(&input.fd1), &rec.point.coords);
        k.decide_zero(&v).map(|zero| !zero)
    })
    .map_err(CurveError::from)?;
    Ok(flags
        .into_iter()
        .map(|(record, superisolated)| PointReport { record, superisolated })
        .collect())
}

/// Smooth-polar count and per-point polar components; needs ordinary points.
pub fn polar_counts(report: &SisReport) -> Result<PolarCounts, SisError> {
    if report.lne != Some(true) {
        return Err(SisError::NotOrdinary);
    }
    let d = report.d as i64;
    let local: i64 = report.k_list().iter().map(|&k| (k as i64) * (k as i64 - 1)).sum();
    Ok(PolarCounts {
        per_point: report.records().map(|r| r.multiplicity - 1).collect(),
        n0: d * (d - 1) - local,
    })
}

/// Full verdict: singular points, superisolatedness and LNE.
pub fn decide_lne(input: &SisInput) -> Result<SisReport, SisError> {
    let records = singular_points_from(&input.fd, input.shear_offset)?;
    let mut points = check_superisolated(input, &records)?;
    let mut components = None;
    if let Some(factors) = &input.factors {
        let recs: Vec<SingularPointRecord> = points.iter().map(|p| p.record.clone()).collect();
        let (refined, data) = validate_components(&input.fd, factors, &recs)?;
        if refined.len() != points.len() {
            // component data split some conjugate family; redo the flags
            points = check_superisolated(input, &refined)?;
        }
        components = Some(data);
    }
    let superisolated = points.iter().all(|p| p.superisolated);
    let lne = superisolated.then(|| points.iter().all(|p| p.record.ordinary));
    let witness = if !superisolated {
        points.iter().position(|p| !p.superisolated)
    } else {
        points.iter().position(|p| !p.record.ordinary)
    };
    let r = points.iter().map(|p| p.record.point.conjugates()).sum();
    let mut report = SisReport {
        d: input.d,
        superisolated,
        lne,
        points,
        r,
        case_tag: None,
        polar: None,
        witness,
        components,
    };
    if lne == Some(true) {
        let polar = polar_counts(&report)?;
        let tag = if polar.n0 == 0 { CaseTag::Case1 } else { CaseTag::Case2 };
        if let Some(data) = &report.components {
            let all_lines = data.degrees.iter().all(|&d| d == 1);
            if all_lines != (tag == CaseTag::Case1) {
                return Err(SisError::CaseMismatch { n0: polar.n0, degrees: data.degrees.clone() });
            }
        }
        report.case_tag = Some(tag);
        report.polar = Some(polar);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn four_lines_are_lne_case1() {
        let input = SisInput::parse("x*y*(x+y)*(x-y)", "z^5").unwrap();
        let rep = decide_lne(&input).unwrap();
        assert!(rep.superisolated);
        assert_eq!(rep.lne, Some(true));
        assert_eq!(rep.case_tag, Some(CaseTag::Case1));
        assert_eq!(rep.polar.unwrap(), PolarCounts { per_point: vec![3], n0: 0 });
    }

    #[test]
    fn cusp_is_superisolated_not_lne() {
        let input = SisInput::parse("z*x^2+y^3", "(x+y+z)^4").unwrap();
        let rep = decide_lne(&input).unwrap();
        assert!(rep.superisolated);
        assert_eq!(rep.lne, Some(false));
        assert_eq!(rep.witness, Some(0));
        assert_eq!(
            rep.points[0].record.point.rational_coords().unwrap(),
            [rat(0), rat(0), rat(1)]
        );
    }

    #[test]
    fn smooth_cone_is_vacuously_lne() {
        let rep = decide_lne(&SisInput::parse("x^4+y^4+z^4", "x^5").unwrap()).unwrap();
        assert_eq!((rep.superisolated, rep.lne, rep.r), (true, Some(true), 0));
        assert_eq!(rep.polar.unwrap().n0, 12);
        let rep = decide_lne(&SisInput::parse("x^2+y^2+z^2", "x^3").unwrap()).unwrap();
        assert_eq!(rep.polar.unwrap().n0, 2);
    }

    #[test]
    fn tail_through_singular_point_is_not_superisolated() {
        let rep = decide_lne(&SisInput::parse("x*y", "x^3").unwrap()).unwrap();
        assert!(!rep.superisolated);
        assert_eq!(rep.lne, None);
        assert_eq!(rep.witness, Some(0));
    }

    #[test]
    fn lines_and_conic_case2() {
        let input = SisInput::parse_factored(&["x", "y", "x^2+y^2+z^2"], "z^5").unwrap();
        let rep = decide_lne(&input).unwrap();
        assert_eq!(rep.lne, Some(true));
        assert_eq!(rep.r, 5);
        assert_eq!(rep.k_list(), vec![2; 5]);
        assert_eq!(rep.polar.as_ref().unwrap().n0, 2);
        assert_eq!(rep.case_tag, Some(CaseTag::Case2));
    }

    #[test]
    fn input_validation() {
        assert!(matches!(SisInput::parse("x*y", "x^4"), Err(SisError::DegreeMismatch { .. })));
        assert!(matches!(SisInput::parse("x*y + z", "x^3"), Err(SisError::NotHomogeneous(_))));
        assert!(matches!(SisInput::parse("x*y", "0"), Err(SisError::ZeroTail)));
        let f = parse_polynomial("x*y + x^3 + z^4", &xyz()).unwrap();
        assert_eq!(SisInput::from_equation(&f), Err(SisError::UnsupportedShape(vec![2, 3, 4])));
    }
}
