use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Evaluation, LaurentSeries, Rational, Ring, Scalar, SeriesError, Signed};

/// `re + i·im` over any coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

pub type ComplexLaurentSeries = Complex<LaurentSeries>;

impl<T: Ring> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Complex { re, im }
    }

    pub fn real(re: T) -> Self {
        Complex { re, im: T::zero() }
    }

    pub fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Complex::new(T::one(), T::zero())
    }

    pub fn i() -> Self {
        Complex::new(T::zero(), T::one())
    }

    pub fn plus(&self, o: &Self) -> Self {
        Complex::new(self.re.plus(&o.re), self.im.plus(&o.im))
    }

    pub fn minus(&self, o: &Self) -> Self {
        Complex::new(self.re.minus(&o.re), self.im.minus(&o.im))
    }

    pub fn times(&self, o: &Self) -> Self {
        Complex::new(
            self.re.times(&o.re).minus(&self.im.times(&o.im)),
            self.re.times(&o.im).plus(&self.im.times(&o.re)),
        )
    }

    pub fn negated(&self) -> Self {
        Complex::new(self.re.negated(), self.im.negated())
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), self.im.negated())
    }

    pub fn scale(&self, t: &T) -> Self {
        Complex::new(self.re.times(t), self.im.times(t))
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        Complex::new(self.re.scaled(r), self.im.scaled(r))
    }

    /// Multiplication by `−i`: `(re, im) ↦ (im, −re)`.
    pub fn times_neg_i(&self) -> Self {
        Complex::new(self.im.clone(), self.re.negated())
    }

    pub fn times_i(&self) -> Self {
        Complex::new(self.im.negated(), self.re.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.re.times(&self.re).plus(&self.im.times(&self.im))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Complex<U> {
        Complex { re: f(&self.re), im: f(&self.im) }
    }
}

impl<T: Signed> Complex<T> {
    /// Sign of `Im(self · conj(other))`, the orientation of the pair.
    pub fn cross_sign(&self, other: &Self) -> Option<Ordering> {
        self.im.times(&other.re).minus(&self.re.times(&other.im)).sign()
    }
}

impl Complex<f64> {
    pub fn arg(&self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl Complex<Scalar> {
    pub fn to_f64(&self) -> Complex<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Numeric evaluation of a complex series with the larger tail bound of the
/// two parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexEvaluation {
    pub value: Complex<f64>,
    pub tail_bound: f64,
}

impl ComplexLaurentSeries {
    pub fn from_scalars(re: Scalar, im: Scalar) -> Self {
        Complex::new(LaurentSeries::constant(re), LaurentSeries::constant(im))
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    pub fn truncation_order(&self) -> Option<i64> {
        match (self.re.truncation_order(), self.im.truncation_order()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        }
    }

    pub fn with_order(&self, n: i64) -> Self {
        Complex::new(self.re.with_order(n), self.im.with_order(n))
    }

    /// Both parts truncated at their common order, as the invariant of the
    /// type requires after mixed-order arithmetic.
    pub fn aligned(&self) -> Self {
        match self.truncation_order() {
            Some(n) => self.with_order(n),
            None => self.clone(),
        }
    }

    /// Leading degree and coefficient `(k, a_k + i·b_k)`.
    pub fn leading_term(&self) -> Result<(i64, Complex<Scalar>), SeriesError> {
        if self.is_exact_zero() {
            return Err(SeriesError::ZeroSeries);
        }
        let k = [self.re.lowest_degree(), self.im.lowest_degree()]
            .into_iter()
            .flatten()
            .min()
            .ok_or(SeriesError::Indeterminate)?;
        match (self.re.coeff(k), self.im.coeff(k)) {
            (Some(a), Some(b)) => Ok((k, Complex::new(a, b))),
            _ => Err(SeriesError::Indeterminate),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, SeriesError> {
        let den = other.norm_sqr().inverse()?;
        let num = self.times(&other.conj());
        Ok(num.scale(&den).aligned())
    }

    pub fn eval_at(&self, v: &Rational) -> ComplexEvaluation {
        combine_eval(self.re.eval_at(v), self.im.eval_at(v))
    }

    pub fn eval_at_f64(&self, v: f64) -> ComplexEvaluation {
        combine_eval(self.re.eval_at_f64(v), self.im.eval_at_f64(v))
    }
}

fn combine_eval(re: Evaluation, im: Evaluation) -> ComplexEvaluation {
    ComplexEvaluation {
        value: Complex::new(re.value, im.value),
        tail_bound: re.tail_bound.max(im.tail_bound),
    }
}

impl<T: fmt::Display> fmt::Display for Complex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(low: i64, c: &[i64]) -> LaurentSeries {
        LaurentSeries::from_ints(low, c, None)
    }

    #[test]
    fn long_division_example() {
        // (i + w)/i = 1 − i·w
        let num = Complex::new(series(1, &[1]), series(0, &[1]));
        let den = Complex::new(LaurentSeries::zero(), LaurentSeries::one());
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q.re, series(0, &[1]));
        assert_eq!(q.im, series(1, &[-1]));
        let back = q.times(&den);
        assert_eq!(back, num);
    }

    #[test]
    fn division_by_zero_is_reported() {
        let z = ComplexLaurentSeries::zero();
        assert_eq!(ComplexLaurentSeries::one().checked_div(&z), Err(SeriesError::DivisionByZero));
    }

    #[test]
    fn leading_term_picks_lowest_part() {
        let z = Complex::new(series(1, &[1]), series(0, &[2]));
        let (k, c) = z.leading_term().unwrap();
        assert_eq!(k, 0);
        assert!(c.re.is_zero());
        assert_eq!(c.im, Scalar::from_int(2));
        let t = Complex::new(LaurentSeries::from_ints(2, &[1], Some(5)), LaurentSeries::from_ints(0, &[], Some(1)));
        assert_eq!(t.leading_term(), Err(SeriesError::Indeterminate));
    }
}
