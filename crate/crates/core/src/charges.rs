//! Central-charge families on the surface lattice, slope functions, the
//! twisted Euler characteristic of one-dimensional classes, and the
//! determinant weight function.
//!
//! Charges are generic over the coefficient ring, so the same formulas run
//! on exact scalars, on Laurent series in `w = 1/v`, and on floats.

use std::cmp::Ordering;

use num_traits::{Signed as _, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{pair, ChernClass, Divisor, DivisorRF, SurfaceGeometry};
use crate::series::{
    format_rational, int, phase_of, rat, Complex, ComplexLaurentSeries, LaurentSeries, PhaseFunction,
    PhaseInterval, Rational, Ring, Scalar, SeriesError, Signed,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChargeError {
    #[error("ω = {0} is not ample (need p > 0 and q ≥ m·p)")]
    NotAmple(String),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("the sign of {0} is not decided within the truncation order")]
    Undecidable(&'static str),
    #[error("class {0} lies in the kernel of the central charge")]
    KernelClass(String),
    #[error("the zero class has no phase")]
    ZeroClass,
    #[error("reference class has zero central charge")]
    ZeroReference,
    #[error("the twisted Euler characteristic needs a class with ch0 = 0, got {0}")]
    NotOneDimensional(String),
    #[error("c1(L) must be a multiple of the fiber, got Θ-coefficient {0}")]
    ThetaComponent(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Rings whose elements embed into Laurent series.
pub trait ToSeries {
    fn to_series(&self) -> LaurentSeries;
}

impl ToSeries for Scalar {
    fn to_series(&self) -> LaurentSeries {
        LaurentSeries::constant(self.clone())
    }
}

impl ToSeries for LaurentSeries {
    fn to_series(&self) -> LaurentSeries {
        self.clone()
    }
}

fn positive<T: Signed>(t: &T, what: &'static str) -> Result<(), ChargeError> {
    match t.sign() {
        Some(Ordering::Greater) => Ok(()),
        Some(_) => Err(ChargeError::NotPositive(what)),
        None => Err(ChargeError::Undecidable(what)),
    }
}

/// Ampleness in the convention `ω = pΘ + qf` with `p > 0`, `q ≥ m·p`.
pub fn check_ample<T: Signed>(omega: &Divisor<T>, geom: &SurfaceGeometry) -> Result<(), ChargeError> {
    let excess = omega.q.minus(&omega.p.scaled(geom.m()));
    let ok = matches!(omega.p.sign(), Some(Ordering::Greater))
        && matches!(excess.sign(), Some(Ordering::Greater | Ordering::Equal));
    if ok {
        return Ok(());
    }
    if omega.p.sign().is_none() || excess.sign().is_none() {
        return Err(ChargeError::Undecidable("ω"));
    }
    Err(ChargeError::NotAmple(format!("{:?}Θ + {:?}f", omega.p, omega.q)))
}

/// `Z_{ω,B} = −ch₂^B + (ω²/2)·ch₀^B + i·ω·ch₁^B`, without validation.
pub fn z_omega_b<T: Ring>(gamma: &ChernClass, omega: &Divisor<T>, b: &DivisorRF, geom: &SurfaceGeometry) -> Complex<T> {
    let tw = gamma.twist(b, geom);
    let half_sq = pair(omega, omega, geom).scaled(&rat(1, 2));
    let re = half_sq.scaled(&tw.n).minus(&T::from_rational(&tw.s));
    let im = tw.dot_ch1(omega, geom);
    Complex::new(re, im)
}

/// `Z_{a,b,B} = −ch₂^B + a·ch₀^B + i(Θ·ch₁^B + b·f·ch₁^B)`.
pub fn z_ab_b<T: Ring>(gamma: &ChernClass, a: &T, b: &T, bfield: &DivisorRF, geom: &SurfaceGeometry) -> Complex<T> {
    let tw = gamma.twist(bfield, geom);
    let re = a.scaled(&tw.n).minus(&T::from_rational(&tw.s));
    let im = T::from_rational(&tw.c(geom)).plus(&b.scaled(&tw.d()));
    Complex::new(re, im)
}

/// `Z' = (1, −f·B; 0, 1)·Z_{a,b,B}`.
pub fn z_ab_b_prime<T: Ring>(gamma: &ChernClass, a: &T, b: &T, bfield: &DivisorRF, geom: &SurfaceGeometry) -> Complex<T> {
    let z = z_ab_b(gamma, a, b, bfield, geom);
    // f·(pΘ + qf) = p
    let fb = &bfield.p;
    Complex::new(z.re.minus(&z.im.scaled(fb)), z.im)
}

/// A slope value, `∞` when the denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    fn ratio(num: Rational, den: Rational) -> Self {
        if den.is_zero() {
            Slope::Infinite
        } else {
            Slope::Finite(num / den)
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Slope::Finite(r) => format_rational(r),
            Slope::Infinite => "inf".to_string(),
        }
    }
}

/// `μ_{ω,B} = ω·ch₁^B / ch₀^B`.
pub fn mu_omega_b(gamma: &ChernClass, omega: &DivisorRF, b: &DivisorRF, geom: &SurfaceGeometry) -> Slope {
    let tw = gamma.twist(b, geom);
    Slope::ratio(tw.dot_ch1(omega, geom), tw.n.clone())
}

/// `μ_f = f·ch₁ / ch₀`.
pub fn mu_f(gamma: &ChernClass) -> Slope {
    Slope::ratio(gamma.d(), gamma.n.clone())
}

/// `μ_{*,B̄} = ch₂^{B̄} / f·ch₁`, for one-dimensional classes.
pub fn mu_star_b(gamma: &ChernClass, b_bar: &DivisorRF, geom: &SurfaceGeometry) -> Slope {
    let tw = gamma.twist(b_bar, geom);
    Slope::ratio(tw.s, gamma.d())
}

/// The B-field `−c₁(L) + K_X/2` attached to a fiber-type line bundle.
pub fn euler_b_field(l_c1: &DivisorRF, geom: &SurfaceGeometry) -> DivisorRF {
    DivisorRF::rational(-l_c1.p.clone(), geom.kx_f() * rat(1, 2) - &l_c1.q)
}

/// `χ_L` of a one-dimensional class, via its reduction to `ch₂^{B̄}`.
pub fn chi_l_onedim(gamma: &ChernClass, l_c1: &DivisorRF, geom: &SurfaceGeometry) -> Result<Rational, ChargeError> {
    if !gamma.n.is_zero() {
        return Err(ChargeError::NotOneDimensional(gamma.to_string()));
    }
    if !l_c1.p.is_zero() {
        return Err(ChargeError::ThetaComponent(format_rational(&l_c1.p)));
    }
    Ok(gamma.twist(&euler_b_field(l_c1, geom), geom).s)
}

/// `S_{Z,M}(γ) = −Im Z(M)·Re Z(γ) + Re Z(M)·Im Z(γ)`.
pub fn weight_s<T: Ring>(z_gamma: &Complex<T>, z_m: &Complex<T>) -> T {
    z_m.re.times(&z_gamma.im).minus(&z_m.im.times(&z_gamma.re))
}

/// `ω̃ = (1/α)(Θ + mf) + f`.
pub fn omega_tilde(alpha: &Rational, geom: &SurfaceGeometry) -> DivisorRF {
    let inv = alpha.recip();
    DivisorRF::rational(inv.clone(), geom.m() * &inv + int(1))
}

/// `ω = u(Θ + mf) + vf`.
pub fn hyperbola_omega<T: Ring>(u: &T, v: &T, geom: &SurfaceGeometry) -> Divisor<T> {
    Divisor::new(u.clone(), u.scaled(geom.m()).plus(v))
}

/// The charge families the library evaluates.
#[derive(Clone, Debug, PartialEq)]
pub enum ChargeFamily<T> {
    /// `Z_{ω,B}`.
    OmegaB { omega: Divisor<T> },
    /// `Z_{a,b,B}`.
    AbB { a: T, b: T },
    /// `Z'_{a,b,B}`.
    AbBPrime { a: T, b: T },
    /// `Z_{βω̃,B̄}` along the ray `β > 0`.
    LargeVolumeRay { alpha: Rational, beta: T },
    /// `Z_{ω,B}` with `ω = u(Θ + mf) + vf`.
    HyperbolaZl { u: T, v: T },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    OmegaB,
    AbB,
    AbBPrime,
    LargeVolumeRay,
    HyperbolaZl,
}

impl<T> ChargeFamily<T> {
    pub fn kind(&self) -> FamilyKind {
        match self {
            ChargeFamily::OmegaB { .. } => FamilyKind::OmegaB,
            ChargeFamily::AbB { .. } => FamilyKind::AbB,
            ChargeFamily::AbBPrime { .. } => FamilyKind::AbBPrime,
            ChargeFamily::LargeVolumeRay { .. } => FamilyKind::LargeVolumeRay,
            ChargeFamily::HyperbolaZl { .. } => FamilyKind::HyperbolaZl,
        }
    }
}

impl FamilyKind {
    /// The branch interval the family's phases are taken in: `(1/4, 5/4]`
    /// for the large-volume ray, `(0, 1]` otherwise.
    pub fn default_branch(self) -> PhaseInterval {
        let (a, b) = match self {
            FamilyKind::LargeVolumeRay => (rat(1, 4), rat(5, 4)),
            _ => (int(0), int(1)),
        };
        PhaseInterval::from_quarters(&a, &b).expect("static branch")
    }
}

/// A validated central charge: family parameters, B-field, geometry and
/// the branch interval phases are taken in.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeSpec<T> {
    family: ChargeFamily<T>,
    b_field: DivisorRF,
    geom: SurfaceGeometry,
    branch: PhaseInterval,
}

impl<T: Signed> ChargeSpec<T> {
    pub fn new(family: ChargeFamily<T>, b_field: DivisorRF, geom: SurfaceGeometry) -> Result<Self, ChargeError> {
        let branch = family.kind().default_branch();
        Self::with_branch(family, b_field, geom, branch)
    }

    pub fn with_branch(
        family: ChargeFamily<T>,
        b_field: DivisorRF,
        geom: SurfaceGeometry,
        branch: PhaseInterval,
    ) -> Result<Self, ChargeError> {
        match &family {
            ChargeFamily::OmegaB { omega } => check_ample(omega, &geom)?,
            ChargeFamily::AbB { a, b } | ChargeFamily::AbBPrime { a, b } => {
                positive(a, "a")?;
                positive(b, "b")?;
            }
            ChargeFamily::LargeVolumeRay { alpha, beta } => {
                if !alpha.is_positive() {
                    return Err(ChargeError::NotPositive("α"));
                }
                positive(beta, "β")?;
            }
            ChargeFamily::HyperbolaZl { u, v } => {
                positive(u, "u")?;
                positive(v, "v")?;
            }
        }
        Ok(ChargeSpec { family, b_field, geom, branch })
    }

    pub fn family(&self) -> &ChargeFamily<T> {
        &self.family
    }

    pub fn b_field(&self) -> &DivisorRF {
        &self.b_field
    }

    pub fn geometry(&self) -> &SurfaceGeometry {
        &self.geom
    }

    pub fn branch(&self) -> &PhaseInterval {
        &self.branch
    }

    /// The polarization `ω` for the families that have one.
    pub fn omega(&self) -> Option<Divisor<T>> {
        match &self.family {
            ChargeFamily::OmegaB { omega } => Some(omega.clone()),
            ChargeFamily::LargeVolumeRay { alpha, beta } => {
                Some(omega_tilde(alpha, &self.geom).lift::<T>().scale(beta))
            }
            ChargeFamily::HyperbolaZl { u, v } => Some(hyperbola_omega(u, v, &self.geom)),
            ChargeFamily::AbB { .. } | ChargeFamily::AbBPrime { .. } => None,
        }
    }

    pub fn z(&self, gamma: &ChernClass) -> Complex<T> {
        match &self.family {
            ChargeFamily::AbB { a, b } => z_ab_b(gamma, a, b, &self.b_field, &self.geom),
            ChargeFamily::AbBPrime { a, b } => z_ab_b_prime(gamma, a, b, &self.b_field, &self.geom),
            _ => {
                let omega = self.omega().expect("family with a polarization");
                z_omega_b(gamma, &omega, &self.b_field, &self.geom)
            }
        }
    }

    /// `S_{Z,M}(γ)`; fails when `Z(M)` vanishes.
    pub fn weight(&self, gamma: &ChernClass, reference: &ChernClass) -> Result<T, ChargeError> {
        let zm = self.z(reference);
        if zm.re.sign() == Some(Ordering::Equal) && zm.im.sign() == Some(Ordering::Equal) {
            return Err(ChargeError::ZeroReference);
        }
        Ok(weight_s(&self.z(gamma), &zm))
    }
}

impl<T: Signed + ToSeries> ChargeSpec<T> {
    pub fn z_series(&self, gamma: &ChernClass) -> ComplexLaurentSeries {
        self.z(gamma).map(ToSeries::to_series)
    }

    /// Phase function of `Z(γ)` in the spec's branch.
    pub fn phase(&self, gamma: &ChernClass) -> Result<PhaseFunction, ChargeError> {
        self.phase_in(gamma, &self.branch)
    }

    pub fn phase_in(&self, gamma: &ChernClass, branch: &PhaseInterval) -> Result<PhaseFunction, ChargeError> {
        if gamma.is_zero() {
            return Err(ChargeError::ZeroClass);
        }
        let z = self.z_series(gamma);
        if z.is_exact_zero() {
            return Err(ChargeError::KernelClass(gamma.to_string()));
        }
        Ok(phase_of(&z, branch)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{ExactPhase, PhaseOrdering};

    fn geom(e: i64) -> SurfaceGeometry {
        SurfaceGeometry::new(int(e), int(e + 2)).unwrap()
    }

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn skyscraper_has_charge_minus_one() {
        let g = geom(1);
        let omega = Divisor::new(q(2), q(7));
        for b in [DivisorRF::zero(), DivisorRF::rational(rat(1, 3), int(-2))] {
            let z = z_omega_b(&ChernClass::skyscraper(), &omega, &b, &g);
            assert_eq!(z, Complex::new(q(-1), q(0)));
        }
    }

    #[test]
    fn structure_sheaf_charge() {
        let g = SurfaceGeometry::new(int(0), int(2)).unwrap();
        let z = z_omega_b(&ChernClass::structure_sheaf(), &Divisor::new(q(1), q(3)), &DivisorRF::zero(), &g);
        assert_eq!(z, Complex::new(q(3), q(0)));
    }

    #[test]
    fn shift_negates_charge() {
        let g = geom(2);
        let gamma: ChernClass = "2,-1,3,0,5/2".parse().unwrap();
        let omega = Divisor::new(q(1), q(5));
        let b = DivisorRF::fiber_multiple(rat(1, 2));
        let z = z_omega_b(&gamma, &omega, &b, &g);
        assert_eq!(z_omega_b(&gamma.shift(), &omega, &b, &g), z.negated());
    }

    #[test]
    fn change_of_coordinates() {
        // Z_{ω,B} = diag(1, x)·Z_{ω²/2, y/x, B} for ω = xΘ + yf
        let g = SurfaceGeometry::new(int(0), int(2)).unwrap();
        let omega = DivisorRF::rational(int(2), int(7));
        let b = DivisorRF::rational(rat(1, 2), int(1));
        let a = pair(&omega, &omega, &g) * rat(1, 2);
        let bb = &omega.q / &omega.p;
        let gamma: ChernClass = "3,1,-4,2,1/2".parse().unwrap();
        let lhs: Complex<Scalar> = z_omega_b(&gamma, &omega.lift(), &b, &g);
        let rhs: Complex<Scalar> = z_ab_b(&gamma, &a.into(), &bb.into(), &b, &g);
        assert_eq!(lhs.re, rhs.re);
        assert_eq!(lhs.im, rhs.im.scale(&omega.p));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let g = geom(0);
        let bad = ChargeSpec::new(ChargeFamily::OmegaB { omega: Divisor::new(q(1), q(1)) }, DivisorRF::zero(), g.clone());
        assert!(matches!(bad, Err(ChargeError::NotAmple(_))));
        let bad = ChargeSpec::new(ChargeFamily::AbB { a: q(0), b: q(1) }, DivisorRF::zero(), g);
        assert_eq!(bad.unwrap_err(), ChargeError::NotPositive("a"));
    }

    #[test]
    fn slopes() {
        let g = geom(0);
        assert_eq!(mu_f(&ChernClass::from_ints(1, 1, 0, 0, 0)), Slope::Finite(int(1)));
        let omega = DivisorRF::rational(int(1), int(3));
        assert_eq!(mu_omega_b(&ChernClass::skyscraper(), &omega, &DivisorRF::zero(), &g), Slope::Infinite);
        assert_eq!(mu_star_b(&ChernClass::from_ints(0, 0, 2, 0, 1), &DivisorRF::zero(), &g), Slope::Infinite);
        assert_eq!(mu_star_b(&ChernClass::from_ints(0, 1, 0, 0, 1), &DivisorRF::zero(), &g), Slope::Finite(int(1)));
    }

    #[test]
    fn euler_characteristic_reduction() {
        let g = SurfaceGeometry::new(int(0), int(1)).unwrap().with_canonical_f(int(0));
        assert_eq!(chi_l_onedim(&ChernClass::skyscraper().scale(&int(3)), &DivisorRF::zero(), &g).unwrap(), int(3));
        // B̄ = f for L = −f with K_X = 0
        let chi = chi_l_onedim(&ChernClass::from_ints(0, 1, 0, 0, 0), &DivisorRF::fiber_multiple(int(-1)), &g);
        assert_eq!(chi.unwrap(), int(-1));
        assert!(chi_l_onedim(&ChernClass::structure_sheaf(), &DivisorRF::zero(), &g).is_err());
        assert!(chi_l_onedim(&ChernClass::skyscraper(), &DivisorRF::theta(), &g).is_err());
    }

    #[test]
    fn weight_examples() {
        let zm = Complex::new(q(2), q(3));
        assert_eq!(weight_s(&zm, &zm), q(0));
        // curve charge Z = −d + ir with M = (1, 0)
        let z = |r: i64, d: i64| Complex::new(q(-d), q(r));
        assert_eq!(weight_s(&z(2, 5), &z(1, 0)), q(5));
    }

    #[test]
    fn phases_and_branches() {
        let g = SurfaceGeometry::new(int(0), int(2)).unwrap();
        let spec = ChargeSpec::new(ChargeFamily::OmegaB { omega: Divisor::new(q(1), q(3)) }, DivisorRF::zero(), g.clone()).unwrap();
        let p = spec.phase(&ChernClass::skyscraper()).unwrap();
        assert_eq!(p.limit_value(), &ExactPhase::from_int(1));
        assert!(spec.phase(&ChernClass::structure_sheaf()).is_err());
        let ray = ChargeSpec::new(ChargeFamily::LargeVolumeRay { alpha: int(1), beta: q(1) }, DivisorRF::zero(), g).unwrap();
        assert!(matches!(
            ray.phase(&ChernClass::structure_sheaf()),
            Err(ChargeError::Series(SeriesError::EmptyBranch(_)))
        ));
    }

    #[test]
    fn shifted_class_gains_one_in_phase() {
        let g = SurfaceGeometry::new(int(0), int(2)).unwrap();
        let spec = ChargeSpec::new(ChargeFamily::OmegaB { omega: Divisor::new(q(1), q(3)) }, DivisorRF::zero(), g).unwrap();
        let gamma: ChernClass = "0,1,1,0,0".parse().unwrap();
        let p = spec.phase(&gamma).unwrap();
        let wide = PhaseInterval::from_quarters(&int(0), &int(2)).unwrap();
        let shifted = spec.phase_in(&gamma.shift(), &wide).unwrap();
        assert_eq!(crate::series::compare_phase(&shifted, &p.add_integer(1)).unwrap(), PhaseOrdering::Eq);
    }

    #[test]
    fn kernel_classes_are_tagged() {
        let g = SurfaceGeometry::new(int(0), int(2)).unwrap();
        let spec = ChargeSpec::new(ChargeFamily::AbB { a: q(1), b: q(1) }, DivisorRF::zero(), g).unwrap();
        // only the residual part: invisible to every charge
        let gamma = ChernClass::from_ints(0, 0, 0, 1, 0);
        assert!(matches!(spec.phase(&gamma), Err(ChargeError::KernelClass(_))));
        assert_eq!(spec.phase(&ChernClass::zero()).unwrap_err(), ChargeError::ZeroClass);
    }
}
