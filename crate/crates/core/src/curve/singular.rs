//! Singular locus of a reduced plane curve by resultants and a triangular
//! decomposition over number fields.

use crate::algebra::number_field::run_branches;
use crate::algebra::resultant::resultant_in_y;
use crate::algebra::roots::rational_roots;
use crate::algebra::{
    rat, upoly, AlgebraError, Field, MPolyRing, NfElem, NumberField, QPoly, Rational, Rationals,
    Ring, UPolyRing,
};

use super::{
    is_ordinary, multiplicity_and_initial_form, tangent_slopes, CurveError, ProjectivePoint,
    Shear, SingularPointRecord, TriangularData,
};

/// `f(x, y, 1)` as a polynomial in `y` with coefficients in `Q[x]`.
fn dehomogenize(f: &QPoly) -> Vec<Vec<Rational>> {
    let ring = MPolyRing::new(Rationals, f.vars.clone());
    let fa = ring.substitute(f, &[ring.var(0), ring.var(1), ring.one()], &ring);
    ring.coefficients_in(&fa, 1)
        .iter()
        .map(|c| ring.to_univariate(c, 0).expect("only x remains"))
        .collect()
}

fn check_homogeneous(f: &QPoly) -> Result<u32, CurveError> {
    if !f.is_homogeneous() {
        return Err(CurveError::NotHomogeneous);
    }
    f.total_degree().ok_or(CurveError::DegreeTooSmall(0))
}

fn y_leading_nonzero(g: &QPoly) -> bool {
    g.eval(&[rat(0), rat(1), rat(0)]) != rat(0)
}

/// Whether a homogeneous ternary form has no repeated factor. After a shear
/// with `g(0, 1, 0) != 0`, the dehomogenization `g(x, y, 1)` is monic in `y`
/// up to a constant and the form is squarefree iff its discriminant
/// `Res_y(g, g_y)` is a nonzero polynomial in `x`.
pub fn is_squarefree_homogeneous(f: &QPoly) -> Result<bool, CurveError> {
    let d = check_homogeneous(f)?;
    if d == 0 {
        return Err(CurveError::DegreeTooSmall(0));
    }
    let shear = super::shear_sequence()
        .find(|m| y_leading_nonzero(&m.apply(f)))
        .ok_or_else(|| CurveError::ShearsExhausted("every shear meets (0:1:0)".into()))?;
    let g = shear.apply(f);
    let fa = dehomogenize(&g);
    let fa_y = upoly::derivative(&UPolyRing::new(Rationals), &fa);
    if fa_y.is_empty() {
        return Ok(false);
    }
    Ok(!resultant_in_y(&fa, &fa_y)?.is_empty())
}

/// Univariate restriction of the curve and its partials to the line `z = 0`
/// in the chart `x = 1`.
fn singular_on_line_at_infinity(g: &QPoly) -> Result<bool, CurveError> {
    let ring = MPolyRing::new(Rationals, g.vars.clone());
    let on_line = |p: &QPoly| {
        let h = ring.substitute(p, &[ring.one(), ring.var(1), ring.zero()], &ring);
        ring.to_univariate(&h, 1).expect("only y remains")
    };
    let polys: Vec<Vec<Rational>> = std::iter::once(on_line(g))
        .chain((0..3).map(|i| on_line(&g.partial(i))))
        .collect();
    let gcd = upoly::gcd_many(&Rationals, &polys)?;
    Ok(gcd.len() != 1)
}

enum ChartBranch {
    /// No singular point over this branch.
    Empty,
    /// The singular point `y = y(t)`.
    Point(NfElem),
    /// The fibre holds more than one singular point; try another shear.
    Degenerate,
}

fn eval_in_field(k: &NumberField, c: &[Rational]) -> NfElem {
    k.reduce(c)
}

fn chart_fibre(
    k: &NumberField,
    fa: &[Vec<Rational>],
    fa_x: &[Vec<Rational>],
    fa_y: &[Vec<Rational>],
) -> Result<ChartBranch, AlgebraError> {
    let lift = |p: &[Vec<Rational>]| -> Vec<NfElem> {
        upoly::trimmed(k, p.iter().map(|c| eval_in_field(k, c)).collect())
    };
    let g = upoly::gcd_many(k, &[lift(fa), lift(fa_x), lift(fa_y)])?;
    if g.len() <= 1 {
        return Ok(ChartBranch::Empty);
    }
    // a point of multiplicity k is a root of order k - 1
    let g = upoly::squarefree_part(k, &g)?;
    Ok(match g.len() {
        0 | 1 => ChartBranch::Empty,
        2 => ChartBranch::Point(k.neg(&g[0])),
        _ => ChartBranch::Degenerate,
    })
}

/// Candidate chart points for one shear, or `None` when the shear fails the
/// genericity checks.
fn chart_points(g: &QPoly, shear: Shear) -> Result<Option<Vec<ProjectivePoint>>, CurveError> {
    if !y_leading_nonzero(g) || g.eval(&[rat(1), rat(0), rat(0)]) == rat(0) {
        return Ok(None);
    }
    if singular_on_line_at_infinity(g)? {
        return Ok(None);
    }
    let qx = UPolyRing::new(Rationals);
    let fa = dehomogenize(g);
    let fa_x: Vec<Vec<Rational>> = fa.iter().map(|c| upoly::derivative(&Rationals, c)).collect();
    let fa_x = upoly::trimmed(&qx, fa_x);
    let fa_y = upoly::derivative(&qx, &fa);
    if fa_x.is_empty() || fa_y.is_empty() {
        return Ok(None);
    }
    let r1 = resultant_in_y(&fa, &fa_x)?;
    let r2 = resultant_in_y(&fa, &fa_y)?;
    if r1.is_empty() || r2.is_empty() {
        return Ok(None);
    }
    let common = upoly::gcd(&Rationals, &r1, &r2)?;
    if common.len() <= 1 {
        return Ok(Some(Vec::new()));
    }
    let p = upoly::squarefree_part(&Rationals, &common)?;

    // rational roots first, then the remaining algebraic part as one field
    let mut fields = Vec::new();
    let mut rest = p.clone();
    for r in rational_roots(&p)? {
        let lin = vec![-r.clone(), rat(1)];
        rest = upoly::div_exact(&Rationals, &rest, &lin)?;
        fields.push(NumberField::new("t", lin)?);
    }
    if rest.len() > 1 {
        fields.push(NumberField::new("t", rest)?);
    }

    let mut points = Vec::new();
    for field in fields {
        let branches = run_branches(field, |k| chart_fibre(k, &fa, &fa_x, &fa_y))?;
        for (k, b) in branches {
            match b {
                ChartBranch::Empty => {}
                ChartBranch::Degenerate => return Ok(None),
                ChartBranch::Point(y) => {
                    validate(g, &k, &y)?;
                    let chart_pt = [k.generator(), y.clone(), k.one()];
                    let coords = shear.map_point(&k, &chart_pt);
                    points.extend(normalize(&k, coords, TriangularData { shear, y_of_t: y })?);
                }
            }
        }
    }
    Ok(Some(points))
}

/// Re-evaluates the curve and its partials at the chart point.
fn validate(g: &QPoly, k: &NumberField, y: &NfElem) -> Result<(), CurveError> {
    let ring = MPolyRing::new(k.clone(), g.vars.clone());
    let pt = [k.generator(), y.clone(), k.one()];
    let gk = ring.from_rational_poly(g);
    let mut vals = vec![ring.eval(&gk, &pt)];
    vals.extend((0..3).map(|i| ring.eval(&ring.partial_derivative(&gk, i), &pt)));
    if vals.iter().all(|v| v.is_empty()) {
        Ok(())
    } else {
        Err(CurveError::Validation(format!(
            "partials do not vanish at t with modulus {}",
            upoly::fmt_qpoly(k.modulus(), "t")
        )))
    }
}

/// Splits by the zero pattern of the coordinates and scales the last
/// nonzero coordinate to 1.
fn normalize(
    k: &NumberField,
    coords: [NfElem; 3],
    chart: TriangularData,
) -> Result<Vec<ProjectivePoint>, CurveError> {
    let branches = run_branches(k.clone(), |kb| {
        let c = coords.clone().map(|e| kb.restrict(&e));
        let zeros = kb.decide_zero_all(&c)?;
        let last = (0..3).rev().find(|&i| !zeros[i]).expect("projective point");
        let inv = kb.inv(&c[last])?;
        let normalized = c.map(|e| kb.mul(&e, &inv));
        Ok::<_, AlgebraError>(normalized)
    })?;
    Ok(branches
        .into_iter()
        .map(|(kb, coords)| ProjectivePoint {
            chart: TriangularData { shear: chart.shear, y_of_t: kb.restrict(&chart.y_of_t) },
            field: kb,
            coords,
        })
        .collect())
}

fn sort_key(p: &ProjectivePoint) -> (usize, Vec<Vec<Rational>>, Vec<Rational>) {
    (p.field.degree(), p.coords.to_vec(), p.field.modulus().to_vec())
}

/// Singular points of the reduced curve `{f = 0}` in the projective plane,
/// grouped into conjugate families, with multiplicity, initial form and
/// ordinariness. Records are split further whenever the local analysis
/// separates conjugates.
pub fn singular_points(f: &QPoly) -> Result<Vec<SingularPointRecord>, CurveError> {
    singular_points_from(f, 0)
}

/// [`singular_points`] starting the shear search at position `offset` of
/// the shear sequence. The answer does not depend on the offset.
pub fn singular_points_from(f: &QPoly, offset: usize) -> Result<Vec<SingularPointRecord>, CurveError> {
    let d = check_homogeneous(f)?;
    if d < 2 {
        return Err(CurveError::DegreeTooSmall(d));
    }
    if !is_squarefree_homogeneous(f)? {
        return Err(CurveError::NotSquarefree);
    }
    let mut tried = 0;
    let mut points = None;
    for shear in super::shear_sequence().skip(offset) {
        tried += 1;
        if let Some(p) = chart_points(&shear.apply(f), shear)? {
            points = Some(p);
            break;
        }
    }
    let mut points = points.ok_or_else(|| {
        CurveError::ShearsExhausted(format!("{tried} shears tried, none generic"))
    })?;
    points.sort_by_key(sort_key);

    let mut records = Vec::new();
    for p in points {
        let branches = run_branches(p.field.clone(), |k| analyse_point(f, &p.restrict(k)))?;
        records.extend(branches.into_iter().map(|(_, r)| r));
    }
    Ok(records)
}

fn analyse_point(f: &QPoly, p: &ProjectivePoint) -> Result<SingularPointRecord, CurveError> {
    let (k, form) = multiplicity_and_initial_form(f, p)?;
    if k < 2 {
        return Err(CurveError::Validation("returned point is smooth".into()));
    }
    let ordinary = is_ordinary(&p.field, &form, k)?;
    let tangent = if ordinary { Some(tangent_slopes(&p.field, &form, k)?) } else { None };
    Ok(SingularPointRecord {
        point: p.clone(),
        multiplicity: k,
        initial_form: form,
        ordinary,
        tangent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::var_names;
    use crate::algebra::parse_polynomial;

    fn xyz(s: &str) -> QPoly {
        parse_polynomial(s, &var_names(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn squarefree_forms() {
        assert!(!is_squarefree_homogeneous(&xyz("x^2*y")).unwrap());
        assert!(is_squarefree_homogeneous(&xyz("x*y*(x+y)*(x-y)")).unwrap());
        assert!(is_squarefree_homogeneous(&xyz("(x^2+2*y^2)*(2*x^2+y^2)")).unwrap());
        assert!(!is_squarefree_homogeneous(&xyz("z^2*(x+y)")).unwrap());
    }

    #[test]
    fn four_concurrent_lines() {
        let recs = singular_points(&xyz("x*y*(x+y)*(x-y)")).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].point.rational_coords().unwrap(), [rat(0), rat(0), rat(1)]);
        assert_eq!(recs[0].multiplicity, 4);
        assert!(recs[0].ordinary);
    }

    #[test]
    fn cuspidal_cubic() {
        let recs = singular_points(&xyz("z*x^2+y^3")).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].point.rational_coords().unwrap(), [rat(0), rat(0), rat(1)]);
        assert!(!recs[0].ordinary);
    }

    #[test]
    fn fermat_quartic_is_smooth() {
        assert!(singular_points(&xyz("x^4+y^4+z^4")).unwrap().is_empty());
    }

    #[test]
    fn two_lines_and_a_conic() {
        let recs = singular_points(&xyz("x*y*(x^2+y^2+z^2)")).unwrap();
        let total: usize = recs.iter().map(|r| r.point.conjugates()).sum();
        assert_eq!(total, 5);
        assert!(recs.iter().all(|r| r.multiplicity == 2 && r.ordinary));
        // conjugate pairs satisfy x = 0, y^2 = -1 and y = 0, x^2 = -1
        let k_of = |r: &SingularPointRecord| r.point.field.clone();
        let pairs: Vec<_> = recs.iter().filter(|r| r.point.conjugates() == 2).collect();
        assert_eq!(pairs.len(), 2);
        for r in pairs {
            let k = k_of(r);
            let c = &r.point.coords;
            assert_eq!(c[2], k.one());
            let sq = |e: &NfElem| k.add(&k.mul(e, e), &k.one());
            assert!(
                (c[0].is_empty() && sq(&c[1]).is_empty()) || (c[1].is_empty() && sq(&c[0]).is_empty())
            );
        }
    }

    #[test]
    fn singular_point_at_infinity() {
        // two lines meeting on z = 0
        let recs = singular_points(&xyz("y*(y - z)")).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].point.rational_coords().unwrap(), [rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn offset_does_not_change_the_answer() {
        let f = xyz("x*y*(x^2+y^2+z^2)");
        let base: Vec<_> = singular_points(&f).unwrap().iter().map(|r| r.point.display()).collect();
        for offset in [1, 7, 30] {
            let other: Vec<_> =
                singular_points_from(&f, offset).unwrap().iter().map(|r| r.point.display()).collect();
            let (mut a, mut b) = (base.clone(), other);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn display_rebases_onto_a_coordinate() {
        let recs = singular_points(&xyz("x*y*(x^2+y^2+z^2)")).unwrap();
        let shown: Vec<_> = recs.iter().map(|r| r.point.display()).collect();
        assert!(shown.contains(&(vec!["0".into(), "0".into(), "1".into()], None)));
        assert!(shown.contains(&(vec!["0".into(), "t".into(), "1".into()], Some("t^2 + 1".into()))));
        assert!(shown.contains(&(vec!["t".into(), "0".into(), "1".into()], Some("t^2 + 1".into()))));
    }
}
