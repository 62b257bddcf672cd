//! Cohomological Fourier–Mukai transforms on the surface lattice, and the
//! rank/degree rotation on an elliptic curve.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lattice::{ChernClass, LatticeError, SurfaceGeometry};
use crate::series::{int, rat, Complex, Ring};

/// Action of `Φ` on `(n, x, y, ξ², s)`.
///
/// In terms of `c = Θ·ch₁`, `d = f·ch₁` this is
/// `ch₀ ↦ d`, `f·ch₁ ↦ −n`, `Θ·ch₁ ↦ s − ed/2 + ne`, `ch₂ ↦ −c − de + ne/2`,
/// and in lattice coordinates it is affine-free:
/// `(n, x, y, s) ↦ (x, −n, s − ex/2, −y + ne/2)`.
pub fn phi(gamma: &ChernClass, geom: &SurfaceGeometry) -> ChernClass {
    let e = geom.e();
    let half = rat(1, 2);
    ChernClass {
        n: gamma.x.clone(),
        x: -gamma.n.clone(),
        y: &gamma.s - e * &gamma.x * &half,
        xi2: gamma.xi2.clone(),
        s: -gamma.y.clone() + e * &gamma.n * &half,
    }
}

/// The lattice inverse of [`phi`]:
/// `(n, x, y, s) ↦ (−x, n, −s − ex/2, y + ne/2)`.
pub fn phi_inverse(gamma: &ChernClass, geom: &SurfaceGeometry) -> ChernClass {
    let e = geom.e();
    let half = rat(1, 2);
    ChernClass {
        n: -gamma.x.clone(),
        x: gamma.n.clone(),
        y: -gamma.s.clone() - e * &gamma.x * &half,
        xi2: gamma.xi2.clone(),
        s: &gamma.y + e * &gamma.n * &half,
    }
}

/// The quasi-inverse transform on classes: `Φ̂ = [−1]∘Φ⁻¹`, so that
/// `Φ̂Φ = ΦΦ̂ = −1` on the lattice.
pub fn phi_hat(gamma: &ChernClass, geom: &SurfaceGeometry) -> ChernClass {
    phi_inverse(gamma, geom).shift()
}

/// Rank and degree of a class on an elliptic curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub r: i64,
    pub d: i64,
}

impl CurveClass {
    pub fn new(r: i64, d: i64) -> Self {
        CurveClass { r, d }
    }

    /// `Z = −deg + i·rank`.
    pub fn charge<T: Ring>(&self) -> Complex<T> {
        let r = T::from_rational(&int(self.r));
        let d = T::from_rational(&int(self.d));
        Complex::new(d.negated(), r)
    }
}

impl FromStr for CurveClass {
    type Err = LatticeError;
    fn from_str(text: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::ClassSyntax(text.to_string());
        let (r, d) = text.split_once(',').ok_or_else(bad)?;
        Ok(CurveClass {
            r: r.trim().parse().map_err(|_| bad())?,
            d: d.trim().parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.r, self.d)
    }
}

/// `(r, d) ↦ (d, −r)`.
pub fn curve_phi(k: &CurveClass) -> CurveClass {
    CurveClass { r: k.d, d: -k.r }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(e: i64) -> SurfaceGeometry {
        SurfaceGeometry::with_e(int(e)).unwrap()
    }

    #[test]
    fn skyscraper_goes_to_a_fiber_sheaf() {
        for e in 0..3 {
            assert_eq!(phi(&ChernClass::skyscraper(), &geom(e)), ChernClass::from_ints(0, 0, 1, 0, 0));
        }
    }

    #[test]
    fn structure_sheaf_image() {
        let g = geom(3);
        let img = phi(&ChernClass::structure_sheaf(), &g);
        assert_eq!(img, ChernClass::new(int(0), int(-1), int(0), int(0), rat(3, 2)));
    }

    #[test]
    fn transformed_fiber_rank_and_theta_degree() {
        let g = geom(2);
        let gamma: ChernClass = "3,-2,5,1,7/2".parse().unwrap();
        let img = phi(&gamma, &g);
        assert_eq!(img.d(), -gamma.n.clone());
        let expected_c = &gamma.s - g.e() * gamma.d() * rat(1, 2) + &gamma.n * g.e();
        assert_eq!(img.c(&g), expected_c);
    }

    #[test]
    fn quasi_inverse_relations() {
        let g = geom(1);
        let gamma: ChernClass = "3,-2,5,1,7/2".parse().unwrap();
        assert_eq!(phi_hat(&phi(&gamma, &g), &g), gamma.shift());
        assert_eq!(phi(&phi_hat(&gamma, &g), &g), gamma.shift());
        assert_eq!(phi_hat(&ChernClass::from_ints(0, 0, 1, 0, 0), &g), ChernClass::from_ints(0, 0, 0, 0, -1));
    }

    #[test]
    fn curve_rotation() {
        assert_eq!(curve_phi(&CurveClass::new(0, 1)), CurveClass::new(1, 0));
        assert_eq!(curve_phi(&CurveClass::new(2, 1)), CurveClass::new(1, -2));
        let k = CurveClass::new(5, -3);
        assert_eq!(curve_phi(&curve_phi(&curve_phi(&curve_phi(&k)))), k);
    }
}
