//! Local analysis at a point: Taylor expansion in the point's affine chart,
//! multiplicity, initial form, ordinariness and normalized tangent slopes.

use crate::algebra::mpoly::var_names;
use crate::algebra::{rat, ratio, upoly, Field, MPoly, MPolyRing, NfElem, NumberField, QPoly, Rational, Ring};

use super::{CurveError, ProjectivePoint};

/// Local frames `[[1, a], [b, 1]]` tried in order when normalizing the
/// tangent lines.
pub const FRAME_SEQUENCE: [(i64, i64); 16] = [
    (0, 0),
    (1, 2),
    (2, 3),
    (3, 1),
    (1, 3),
    (2, 1),
    (3, 2),
    (-1, 2),
    (2, -1),
    (1, -2),
    (4, 1),
    (1, 4),
    (5, 2),
    (2, 5),
    (-3, 4),
    (4, -3),
];

/// Pencil parameters `t` at which `t P + Q` must keep degree `k - 1`.
pub fn pencil_samples() -> [Rational; 4] {
    [rat(0), rat(1), ratio(1, 2), rat(2)]
}

/// Normalized tangent data of an ordinary point. In the frame
/// `(u1, u2) = (v + a w, b v + w)` the initial form is `c * prod (w + a_i v)`
/// and `slopes` holds the monic `T(s) = prod (s + a_i)`, constant term first.
/// The frame is chosen so that `c`, `T(0)` and the leading coefficient of
/// every sampled pencil member are units.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentData {
    pub frame: (i64, i64),
    /// The constant `c`.
    pub lead: NfElem,
    pub slopes: Vec<NfElem>,
}

fn local_ring(k: &NumberField) -> MPolyRing<NumberField> {
    MPolyRing::new(k.clone(), var_names(&["u", "v"]))
}

/// `f` written in the local coordinates `(u, v)` centred at `p`: the chart
/// coordinate is set to 1 and the other two become `p_i + u`, `p_j + v`.
pub fn local_expansion(f: &QPoly, p: &ProjectivePoint) -> MPoly<NfElem> {
    let k = &p.field;
    let lr = local_ring(k);
    let chart = p.chart_index();
    let mut local_vars = (0..2).map(|i| lr.var(i));
    let images: Vec<MPoly<NfElem>> = (0..3)
        .map(|i| {
            if i == chart {
                lr.one()
            } else {
                lr.add(&lr.constant(p.coords[i].clone()), &local_vars.next().unwrap())
            }
        })
        .collect();
    let src = MPolyRing::new(k.clone(), f.vars.clone());
    let fk = src.from_rational_poly(f);
    src.substitute(&fk, &images, &lr)
}

/// Order of vanishing at the origin and the lowest-degree homogeneous part.
pub fn order_and_initial_form(
    k: &NumberField,
    h: &MPoly<NfElem>,
) -> Result<(u32, MPoly<NfElem>), CurveError> {
    let lr = MPolyRing::new(k.clone(), h.vars.clone());
    for (deg, part) in lr.homogeneous_components(h) {
        // every stored coefficient is nonzero; one unit decides the degree
        for c in part.terms.values() {
            if !k.decide_zero(c)? {
                return Ok((deg, part));
            }
        }
    }
    Err(CurveError::Algebra(crate::algebra::AlgebraError::ZeroPolynomial))
}

/// Multiplicity `k` of the curve at `p` and the initial form `F_k`.
pub fn multiplicity_and_initial_form(
    f: &QPoly,
    p: &ProjectivePoint,
) -> Result<(u32, MPoly<NfElem>), CurveError> {
    let h = local_expansion(f, p);
    let (deg, form) = order_and_initial_form(&p.field, &h)?;
    if deg == 0 {
        return Err(CurveError::NotOnCurve);
    }
    Ok((deg, form))
}

/// Coefficients `c_i` of `u^i v^(k-i)` in a binary form of degree `k`.
fn binary_coeffs(k: &NumberField, form: &MPoly<NfElem>, deg: u32) -> Vec<NfElem> {
    (0..=deg)
        .map(|i| form.coefficient(&[i, deg - i]).cloned().unwrap_or_else(|| k.zero()))
        .collect()
}

/// A binary form is a product of distinct lines iff it is squarefree. At
/// most one factor `v` is split off; the rest is tested as the univariate
/// polynomial `G(u, 1)`.
pub fn is_ordinary(k: &NumberField, form: &MPoly<NfElem>, deg: u32) -> Result<bool, CurveError> {
    let c = binary_coeffs(k, form, deg);
    let top = deg as usize;
    let g: Vec<NfElem> = if !k.decide_zero(&c[top])? {
        c
    } else if top >= 1 && !k.decide_zero(&c[top - 1])? {
        c[..top].to_vec()
    } else {
        return Ok(false);
    };
    if g.len() <= 2 {
        return Ok(true);
    }
    Ok(upoly::is_squarefree(k, &g)?)
}

/// Searches the frame sequence for a normalization of the tangent lines of
/// an ordinary point and returns `T(s)`.
pub fn tangent_slopes(
    k: &NumberField,
    form: &MPoly<NfElem>,
    deg: u32,
) -> Result<TangentData, CurveError> {
    let lr = MPolyRing::new(k.clone(), var_names(&["v", "w"]));
    let kk = k.from_int(deg as i64);
    'frames: for (a, b) in FRAME_SEQUENCE {
        if a * b == 1 {
            continue;
        }
        let images = vec![
            lr.add(&lr.var(0), &lr.scale(&lr.var(1), &k.from_int(a))),
            lr.add(&lr.scale(&lr.var(0), &k.from_int(b)), &lr.var(1)),
        ];
        let src = MPolyRing::new(k.clone(), form.vars.clone());
        let ft = src.substitute(form, &images, &lr);
        let coeff = |j: u32| ft.coefficient(&[deg - j, j]).cloned().unwrap_or_else(|| k.zero());
        let c = coeff(deg);
        if k.decide_zero(&c)? {
            continue;
        }
        let c_inv = k.inv(&c)?;
        let t: Vec<NfElem> = (0..=deg).map(|j| k.mul(&coeff(j), &c_inv)).collect();
        if k.decide_zero(&t[0])? {
            continue;
        }
        let p1 = &t[deg as usize - 1];
        for s in pencil_samples() {
            let lead = k.add(&k.mul(&k.from_rational(&s), p1), &kk);
            if k.decide_zero(&lead)? {
                continue 'frames;
            }
        }
        return Ok(TangentData { frame: (a, b), lead: c, slopes: t });
    }
    Err(CurveError::FramesExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::curve::{Shear, TriangularData};

    fn origin() -> ProjectivePoint {
        let k = NumberField::rationals("t");
        ProjectivePoint {
            field: k.clone(),
            coords: [k.zero(), k.zero(), k.one()],
            chart: TriangularData { shear: Shear::IDENTITY, y_of_t: k.zero() },
        }
    }

    fn xyz(s: &str) -> QPoly {
        parse_polynomial(s, &var_names(&["x", "y", "z"])).unwrap()
    }

    fn form(s: &str) -> MPoly<NfElem> {
        let k = NumberField::rationals("t");
        let q = parse_polynomial(s, &var_names(&["u", "v"])).unwrap();
        MPolyRing::new(k, q.vars.clone()).from_rational_poly(&q)
    }

    #[test]
    fn four_lines_have_ordinary_quadruple_point() {
        let (k, f) = multiplicity_and_initial_form(&xyz("x*y*(x+y)*(x-y)"), &origin()).unwrap();
        assert_eq!(k, 4);
        assert_eq!(f, form("u*v*(u+v)*(u-v)"));
        let q = NumberField::rationals("t");
        assert!(is_ordinary(&q, &f, 4).unwrap());
        let t = tangent_slopes(&q, &f, 4).unwrap();
        assert_eq!(t.slopes.len(), 5);
        assert!(upoly::is_squarefree(&q, &t.slopes).unwrap());
    }

    #[test]
    fn cusp_is_not_ordinary() {
        let (k, f) = multiplicity_and_initial_form(&xyz("z*x^2+y^3"), &origin()).unwrap();
        assert_eq!(k, 2);
        assert_eq!(f, form("u^2"));
        assert!(!is_ordinary(&NumberField::rationals("t"), &f, 2).unwrap());
    }

    #[test]
    fn node_and_smooth_point() {
        let q = NumberField::rationals("t");
        assert!(is_ordinary(&q, &form("u*v"), 2).unwrap());
        assert!(!is_ordinary(&q, &form("v^2"), 2).unwrap());
        let (k, f) = multiplicity_and_initial_form(&xyz("y*z - x^2"), &origin()).unwrap();
        assert_eq!((k, f), (1, form("v")));
        assert_eq!(
            multiplicity_and_initial_form(&xyz("x^2 + y^2 - z^2"), &origin()),
            Err(CurveError::NotOnCurve)
        );
    }

    #[test]
    fn node_slopes_have_nonzero_discriminant() {
        let q = NumberField::rationals("t");
        let t = tangent_slopes(&q, &form("u*(v+u)"), 2).unwrap();
        let c0 = q.as_rational(&t.slopes[0]).unwrap();
        let c1 = q.as_rational(&t.slopes[1]).unwrap();
        assert_ne!(&c1 * &c1 - rat(4) * c0, rat(0));
    }
}
