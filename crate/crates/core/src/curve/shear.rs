use crate::algebra::mpoly::var_names;
use crate::algebra::{rat, MPolyRing, NfElem, NumberField, QPoly, Rationals, Ring};

/// Projective change of coordinates `(x, y, z) -> M (x, y, z)` with
/// `M = [[1, h, t], [l, 1, s], [c, e, 1]]`. The translation part `(t, s)`
/// is the usual shear of the affine chart; the tilt `(h, l, c, e)` moves the
/// line `z = 0` and changes the projection direction, which a pure
/// translation leaves fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shear {
    pub t: i64,
    pub s: i64,
    pub h: i64,
    pub l: i64,
    pub c: i64,
    pub e: i64,
}

/// Number of tilted matrices following the identity.
const TILTED: i64 = 60;

/// The fixed, deterministic sequence of invertible shears: the identity,
/// then tilted matrices whose entries run through small residues so that
/// the projection direction varies. A pure translation of the chart fixes
/// `(1:0:0)`, `(0:1:0)` and the projection direction, so it never repairs a
/// failed genericity check and is not included.
pub fn shear_sequence() -> impl Iterator<Item = Shear> {
    let plain = std::iter::once(Shear::IDENTITY);
    let tilted = (1..=TILTED).map(|i| Shear {
        h: (i * 7) % 11 - 5,
        l: (i * 5) % 9 - 4,
        c: (i * 3) % 7 - 3,
        e: (i * 11) % 13 - 6,
        t: i % 5 - 2,
        s: (i * 2) % 7 - 3,
    });
    plain.chain(tilted).filter(|m| m.det() != 0)
}

impl Shear {
    pub const IDENTITY: Shear = Shear { t: 0, s: 0, h: 0, l: 0, c: 0, e: 0 };

    pub fn matrix(&self) -> [[i64; 3]; 3] {
        [[1, self.h, self.t], [self.l, 1, self.s], [self.c, self.e, 1]]
    }

    pub fn det(&self) -> i64 {
        let m = self.matrix();
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// `g(X) = f(M X)`.
    pub fn apply(&self, f: &QPoly) -> QPoly {
        let ring = MPolyRing::new(Rationals, var_names(&["x", "y", "z"]));
        let images: Vec<QPoly> = self
            .matrix()
            .iter()
            .map(|row| {
                (0..3).fold(ring.zero(), |acc, j| {
                    ring.add(&acc, &ring.scale(&ring.var(j), &rat(row[j])))
                })
            })
            .collect();
        ring.substitute(f, &images, &ring)
    }

    /// Image `M X` of a point of the sheared curve.
    pub fn map_point(&self, k: &NumberField, x: &[NfElem; 3]) -> [NfElem; 3] {
        self.matrix().map(|row| {
            (0..3).fold(k.zero(), |acc, j| {
                k.add(&acc, &k.mul(&k.from_int(row[j]), &x[j]))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    #[test]
    fn sequence_starts_with_identity_and_is_invertible() {
        let v: Vec<Shear> = shear_sequence().collect();
        assert_eq!(v[0], Shear::IDENTITY);
        assert!(v.iter().all(|m| m.det() != 0));
        assert!(v.len() > 50);
    }

    #[test]
    fn apply_substitutes_rows() {
        let vars = var_names(&["x", "y", "z"]);
        let f = parse_polynomial("x*z", &vars).unwrap();
        let m = Shear { t: 1, e: 2, ..Shear::IDENTITY };
        let g = m.apply(&f);
        assert_eq!(g, parse_polynomial("(x + z)*(2*y + z)", &vars).unwrap());
    }
}
