//! User-supplied decomposition of the curve into components.

use crate::algebra::QPoly;

use super::{
    is_squarefree_homogeneous, multiplicity_and_initial_form, refine_records, CurveError,
    SingularPointRecord,
};

/// Components `g_j` of the curve and the branch counts `b[i][j]`, the
/// multiplicity of component `j` at singular record `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentData {
    pub factors: Vec<QPoly>,
    pub degrees: Vec<u32>,
    pub branch_counts: Vec<Vec<u32>>,
}

/// Checks the factorization and computes branch counts. Records may be
/// refined when a branch count differs between conjugate points, so the
/// validated records are returned alongside.
pub fn validate_components(
    f: &QPoly,
    factors: &[QPoly],
    records: &[SingularPointRecord],
) -> Result<(Vec<SingularPointRecord>, ComponentData), CurveError> {
    let mut degrees = Vec::with_capacity(factors.len());
    for (j, g) in factors.iter().enumerate() {
        match g.total_degree() {
            Some(d) if d >= 1 && g.is_homogeneous() => degrees.push(d),
            _ => return Err(CurveError::BadFactor(j)),
        }
    }
    let product = factors
        .iter()
        .skip(1)
        .fold(factors.first().cloned().ok_or(CurveError::ProductMismatch)?, |acc, g| &acc * g);
    if product.primitive_normal() != f.primitive_normal() {
        return Err(CurveError::ProductMismatch);
    }
    for (j, g) in factors.iter().enumerate() {
        if !is_squarefree_homogeneous(g)? {
            return Err(CurveError::NonSquarefreeFactor(j));
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if !is_squarefree_homogeneous(&(&factors[i] * &factors[j]))? {
                return Err(CurveError::SharedFactor(i, j));
            }
        }
    }

    let refined = refine_records(records, |rec| {
        factors
            .iter()
            .map(|g| match multiplicity_and_initial_form(g, &rec.point) {
                Ok((k, _)) => Ok(k),
                Err(CurveError::NotOnCurve) => Ok(0),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<u32>, CurveError>>()
    })?;
    let mut out_records = Vec::with_capacity(refined.len());
    let mut branch_counts = Vec::with_capacity(refined.len());
    for (i, (rec, b)) in refined.into_iter().enumerate() {
        let got: u32 = b.iter().sum();
        if got != rec.multiplicity {
            return Err(CurveError::BranchCountMismatch { point: i, expected: rec.multiplicity, got });
        }
        out_records.push(rec);
        branch_counts.push(b);
    }
    Ok((
        out_records,
        ComponentData { factors: factors.to_vec(), degrees, branch_counts },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::var_names;
    use crate::algebra::parse_polynomial;
    use crate::curve::singular_points;

    fn xyz(s: &str) -> QPoly {
        parse_polynomial(s, &var_names(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn four_lines() {
        let f = xyz("x*y*(x+y)*(x-y)");
        let recs = singular_points(&f).unwrap();
        let factors: Vec<QPoly> = ["x", "y", "x+y", "x-y"].iter().map(|s| xyz(s)).collect();
        let (_, data) = validate_components(&f, &factors, &recs).unwrap();
        assert_eq!(data.branch_counts, vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn lines_and_conic() {
        let f = xyz("x*y*(x^2+y^2+z^2)");
        let recs = singular_points(&f).unwrap();
        let factors: Vec<QPoly> = ["x", "y", "x^2+y^2+z^2"].iter().map(|s| xyz(s)).collect();
        let (recs, data) = validate_components(&f, &factors, &recs).unwrap();
        for (rec, b) in recs.iter().zip(&data.branch_counts) {
            let expected = match rec.point.rational_coords() {
                Some(_) => vec![1, 1, 0],
                None if rec.point.coords[0].is_empty() => vec![1, 0, 1],
                None => vec![0, 1, 1],
            };
            assert_eq!(b, &expected);
        }
        assert_eq!(data.degrees, vec![1, 1, 2]);
    }

    #[test]
    fn rejects_bad_factorizations() {
        let f = xyz("x*y*(x+y)");
        let recs = singular_points(&f).unwrap();
        let wrong: Vec<QPoly> = ["x", "y", "x-y"].iter().map(|s| xyz(s)).collect();
        assert_eq!(validate_components(&f, &wrong, &recs), Err(CurveError::ProductMismatch));
        let scaled: Vec<QPoly> = ["2*x", "y/3", "x+y"].iter().map(|s| xyz(s)).collect();
        assert!(validate_components(&f, &scaled, &recs).is_ok());
        let g = xyz("x^2*y");
        let twice: Vec<QPoly> = ["x", "x*y"].iter().map(|s| xyz(s)).collect();
        assert!(validate_components(&g, &twice, &[]).is_err());
    }
}
