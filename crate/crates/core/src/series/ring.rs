use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::ToPrimitive;

use super::{LaurentSeries, Rational, Scalar};

/// The arithmetic shared by every coefficient domain a charge can be
/// evaluated in: floats, exact scalars and Laurent series.
///
/// Method names avoid the `std::ops` ones so that generic code does not
/// collide with operator impls on the concrete types.
pub trait Ring: Clone + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&super::int(n))
    }

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }
}

/// Rings whose elements have a (possibly undecidable) sign.
pub trait Signed: Ring {
    /// `None` when the sign cannot be decided from the available data.
    fn sign(&self) -> Option<Ordering>;

    /// Rough magnitude used for relative residual checks.
    fn magnitude(&self) -> f64;
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Signed for f64 {
    fn sign(&self) -> Option<Ordering> {
        self.partial_cmp(&0.0)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_rational(r: &Rational) -> Self {
        Scalar::from_rational(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

impl Signed for Scalar {
    fn sign(&self) -> Option<Ordering> {
        Some(self.signum())
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Ring for LaurentSeries {
    fn zero() -> Self {
        LaurentSeries::zero()
    }
    fn one() -> Self {
        LaurentSeries::one()
    }
    fn from_rational(r: &Rational) -> Self {
        LaurentSeries::constant(Scalar::from_rational(r.clone()))
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(&Scalar::from_rational(r.clone()))
    }
}

impl Signed for LaurentSeries {
    fn sign(&self) -> Option<Ordering> {
        match self.theta_of() {
            Some((s, _)) => Some(s),
            None if self.is_exact() => Some(Ordering::Equal),
            None => None,
        }
    }
    fn magnitude(&self) -> f64 {
        self.coefficients()
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        super::int(0)
    }
    fn one() -> Self {
        super::int(1)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Signed for Rational {
    fn sign(&self) -> Option<Ordering> {
        Some(self.cmp(&super::int(0)))
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN).abs()
    }
}
