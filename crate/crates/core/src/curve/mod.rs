//! The projective plane curve `{f = 0}`: singular locus, local multiplicity,
//! initial forms and ordinariness.

mod components;
mod local;
mod shear;
mod singular;

use thiserror::Error;

use crate::algebra::number_field::{run_branches, MaybeSplit};
use num_traits::{One, Zero};

use crate::algebra::upoly::{self, fmt_qpoly};
use crate::algebra::{fmt_rational, inverse, AlgebraError, Ring, MPoly, NfElem, NumberField, Rational, Rationals, SplitEvent};

pub use components::{validate_components, ComponentData};
pub use local::{
    is_ordinary, local_expansion, multiplicity_and_initial_form, order_and_initial_form,
    pencil_samples, tangent_slopes, TangentData, FRAME_SEQUENCE,
};
pub use shear::{shear_sequence, Shear};
pub use singular::{is_squarefree_homogeneous, singular_points, singular_points_from};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {0} is too small")]
    DegreeTooSmall(u32),
    #[error("the curve is not reduced (repeated factor)")]
    NotSquarefree,
    #[error("no shear in the fixed sequence passed the genericity checks: {0}")]
    ShearsExhausted(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("a-posteriori validation failed: {0}")]
    Validation(String),
    #[error("no local frame in the fixed sequence normalizes the tangent lines")]
    FramesExhausted,
    #[error("product of the factors does not equal the curve equation up to a scalar")]
    ProductMismatch,
    #[error("factor {0} is constant or not homogeneous")]
    BadFactor(usize),
    #[error("factors {0} and {1} share a component")]
    SharedFactor(usize, usize),
    #[error("factor {0} is not squarefree")]
    NonSquarefreeFactor(usize),
    #[error("branch counts at point {point} sum to {got}, expected multiplicity {expected}")]
    BranchCountMismatch { point: usize, expected: u32, got: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Chart data of a point: in the sheared chart `z = 1` the point is
/// `(t, y(t))` with `t` a root of the field modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularData {
    pub shear: Shear,
    pub y_of_t: NfElem,
}

/// A point of the projective plane with coordinates in `Q[t]/(m)`. When the
/// modulus has degree above one the value stands for a set of
/// Galois-conjugate points, one per root of `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    pub field: NumberField,
    /// Normalized so that the last nonzero coordinate is 1.
    pub coords: [NfElem; 3],
    pub chart: TriangularData,
}

impl ProjectivePoint {
    /// Number of geometric points represented.
    pub fn conjugates(&self) -> usize {
        self.field.degree()
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart_index(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_empty()).expect("nonzero point")
    }

    pub fn restrict(&self, k: &NumberField) -> Self {
        ProjectivePoint {
            field: k.clone(),
            coords: self.coords.clone().map(|c| k.restrict(&c)),
            chart: TriangularData {
                shear: self.chart.shear,
                y_of_t: k.restrict(&self.chart.y_of_t),
            },
        }
    }

    /// Coordinates and modulus as text. The field is rewritten over a
    /// primitive element built from the coordinates (a coordinate itself,
    /// or a small combination of two) and the shortest rendering wins, so
    /// `[0 : i : 1]` prints as `[0 : t : 1]` with `t^2 + 1`. Points over
    /// `Q` get no modulus.
    pub fn display(&self) -> (Vec<String>, Option<String>) {
        let k = &self.field;
        if k.degree() == 1 {
            let c = self.rational_coords().expect("degree one");
            return (c.iter().map(fmt_rational).collect(), None);
        }
        let render = |m: &[Rational], coords: &[NfElem]| {
            (coords.iter().map(|e| fmt_qpoly(e, "t")).collect::<Vec<_>>(), Some(fmt_qpoly(m, "t")))
        };
        let size = |r: &(Vec<String>, Option<String>)| {
            r.0.iter().map(String::len).sum::<usize>() + r.1.as_ref().map_or(0, String::len)
        };
        let mut candidates: Vec<NfElem> = self.coords.to_vec();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    for c in [1, -1, 2] {
                        let scaled: NfElem = self.coords[j].iter().map(|x| x * Rational::from_integer(c.into())).collect();
                        candidates.push(upoly::add(&Rationals, &self.coords[i], &scaled));
                    }
                }
            }
        }
        let mut best = render(k.modulus(), &self.coords);
        for s in candidates {
            if let Some((m, coords)) = rebase(k, &s, &self.coords) {
                let r = render(&m, &coords);
                if size(&r) < size(&best) {
                    best = r;
                }
            }
        }
        best
    }

    /// Rational coordinates, when the point is defined over `Q`.
    pub fn rational_coords(&self) -> Option<[Rational; 3]> {
        if self.field.degree() != 1 {
            return None;
        }
        let c: Vec<Rational> = self
            .coords
            .iter()
            .map(|e| self.field.as_rational(e).expect("reduced in a degree-one field"))
            .collect();
        Some([c[0].clone(), c[1].clone(), c[2].clone()])
    }
}

/// Rewrites `coords` over the primitive element `s`: the minimal polynomial
/// of `s` and each coordinate as a polynomial in `s`. `None` when `s` does
/// not generate the algebra.
fn rebase(k: &NumberField, s: &NfElem, coords: &[NfElem; 3]) -> Option<(Vec<Rational>, Vec<NfElem>)> {
    let n = k.degree();
    let dense = |e: &NfElem| (0..n).map(|i| e.get(i).cloned().unwrap_or_else(Rational::zero)).collect::<Vec<_>>();
    let mut powers = vec![k.one()];
    for _ in 0..n {
        powers.push(k.mul(powers.last().expect("nonempty"), s));
    }
    // columns are the powers s^0 .. s^(n-1)
    let cols: Vec<Vec<Rational>> = powers[..n].iter().map(dense).collect();
    let a: Vec<Vec<Rational>> = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let inv = inverse(&a)?;
    let solve = |e: &NfElem| {
        let v = dense(e);
        let x: Vec<Rational> = inv.iter().map(|row| row.iter().zip(&v).map(|(p, q)| p * q).sum()).collect();
        upoly::trimmed(&Rationals, x)
    };
    let mut m: Vec<Rational> = solve(&powers[n]).iter().map(|c| -c).collect();
    m.resize(n, Rational::zero());
    m.push(Rational::one());
    Some((m, coords.iter().map(solve).collect()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPointRecord {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
    /// Degree-`k` initial form in the local coordinates `(u, v)` of the
    /// point's chart.
    pub initial_form: MPoly<NfElem>,
    pub ordinary: bool,
    /// Present for ordinary points.
    pub tangent: Option<TangentData>,
}

impl SingularPointRecord {
    pub fn field(&self) -> &NumberField {
        &self.point.field
    }

    pub fn restrict(&self, k: &NumberField) -> Self {
        let restrict_poly = |p: &MPoly<NfElem>| p.map_coeffs(k, |c| k.restrict(c));
        SingularPointRecord {
            point: self.point.restrict(k),
            multiplicity: self.multiplicity,
            initial_form: restrict_poly(&self.initial_form),
            ordinary: self.ordinary,
            tangent: self.tangent.as_ref().map(|t| TangentData {
                frame: t.frame,
                lead: k.restrict(&t.lead),
                slopes: t.slopes.iter().map(|c| k.restrict(c)).collect(),
            }),
        }
    }
}

impl MaybeSplit for CurveError {
    fn split_event(&self) -> Option<&SplitEvent> {
        match self {
            CurveError::Algebra(e) => e.split_event(),
            _ => None,
        }
    }
}

/// Applies `f` to every record, splitting a record into its branches when
/// `f` meets a zero divisor in the record's field.
pub fn refine_records<T, E: MaybeSplit>(
    records: &[SingularPointRecord],
    mut f: impl FnMut(&SingularPointRecord) -> Result<T, E>,
) -> Result<Vec<(SingularPointRecord, T)>, E> {
    let mut out = Vec::new();
    for rec in records {
        let branches = run_branches(rec.field().clone(), |k| {
            let r = rec.restrict(k);
            f(&r).map(|v| (r, v))
        })?;
        out.extend(branches.into_iter().map(|(_, v)| v));
    }
    Ok(out)
}
