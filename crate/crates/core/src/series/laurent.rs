//! Truncated Laurent series in `w = 1/v` with exact coefficients.
//!
//! A series is either exact (a Laurent polynomial, every coefficient known)
//! or truncated at an order `N`: coefficients through `w^N` are known and
//! nothing is claimed beyond. Every operation propagates the provable order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{Rational, Scalar, SeriesError};

/// Order used when an exact operand has no finite expansion (inverses and
/// square roots of non-monomials).
pub const DEFAULT_ORDER: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct LaurentSeries {
    low: i64,
    coeffs: Vec<Scalar>,
    order: Option<i64>,
}

/// Outcome of comparing two series in the order `⪯`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderComparison {
    Lt,
    Eq,
    Gt,
    Indeterminate,
}

impl OrderComparison {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => OrderComparison::Lt,
            Ordering::Equal => OrderComparison::Eq,
            Ordering::Greater => OrderComparison::Gt,
        }
    }

    pub fn to_ordering(self) -> Option<Ordering> {
        match self {
            OrderComparison::Lt => Some(Ordering::Less),
            OrderComparison::Eq => Some(Ordering::Equal),
            OrderComparison::Gt => Some(Ordering::Greater),
            OrderComparison::Indeterminate => None,
        }
    }
}

/// Numeric value of a truncated series together with the magnitude of the
/// last retained term, as a crude indication of the truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub tail_bound: f64,
}

impl LaurentSeries {
    fn build(low: i64, coeffs: Vec<Scalar>, order: Option<i64>) -> Self {
        let mut s = LaurentSeries { low, coeffs, order };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(n) = self.order {
            let keep = (n - self.low + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = self.order.unwrap_or(0);
            return;
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    /// The Laurent polynomial `Σ coeffs[j]·w^(low+j)`.
    pub fn exact(low: i64, coeffs: Vec<Scalar>) -> Self {
        Self::build(low, coeffs, None)
    }

    /// A series known through `w^order`.
    pub fn truncated(low: i64, coeffs: Vec<Scalar>, order: i64) -> Self {
        Self::build(low, coeffs, Some(order))
    }

    pub fn from_parts(low: i64, coeffs: Vec<Scalar>, order: Option<i64>) -> Self {
        Self::build(low, coeffs, order)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(low: i64, coeffs: &[i64], order: Option<i64>) -> Self {
        Self::build(low, coeffs.iter().map(|&c| Scalar::from_int(c)).collect(), order)
    }

    pub fn from_rationals(low: i64, coeffs: &[Rational], order: Option<i64>) -> Self {
        Self::build(
            low,
            coeffs.iter().map(|c| Scalar::from_rational(c.clone())).collect(),
            order,
        )
    }

    pub fn zero() -> Self {
        Self::exact(0, Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::exact(0, vec![c])
    }

    pub fn monomial(degree: i64, c: Scalar) -> Self {
        Self::exact(degree, vec![c])
    }

    /// `w = 1/v`.
    pub fn w() -> Self {
        Self::monomial(1, Scalar::one())
    }

    /// `v = w⁻¹`.
    pub fn v() -> Self {
        Self::monomial(-1, Scalar::one())
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn truncation_order(&self) -> Option<i64> {
        self.order
    }

    /// Degree of the leading known-nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Degree of the first stored coefficient (the truncation order for
    /// a series with no known nonzero coefficient).
    pub fn start_degree(&self) -> i64 {
        self.low
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Highest degree carrying a stored coefficient.
    pub fn top_degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `w^k`, or `None` when it lies beyond the truncation order.
    pub fn coeff(&self, k: i64) -> Option<Scalar> {
        if self.order.is_some_and(|n| k > n) {
            return None;
        }
        Some(self.coeff_or_zero(k))
    }

    fn coeff_or_zero(&self, k: i64) -> Scalar {
        if k < self.low {
            return Scalar::zero();
        }
        self.coeffs
            .get((k - self.low) as usize)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(i64, &Scalar)> {
        self.coeffs.first().map(|c| (self.low, c))
    }

    /// The identically zero series.
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.order.is_none()
    }

    /// No nonzero coefficient is known (exact zero or truncated zero).
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// A lower bound for the true valuation; `None` for the exact zero.
    pub fn valuation_bound(&self) -> Option<i64> {
        match (self.coeffs.is_empty(), self.order) {
            (false, _) => Some(self.low),
            (true, Some(n)) => Some(n + 1),
            (true, None) => None,
        }
    }

    /// Truncates to order `n` (no-op if already coarser).
    pub fn with_order(&self, n: i64) -> Self {
        let order = Some(self.order.map_or(n, |m| m.min(n)));
        Self::build(self.low, self.coeffs.clone(), order)
    }

    /// `c·f`; scaling by zero is exactly zero whatever the truncation.
    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::build(self.low, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::build(self.low, self.coeffs.iter().map(f).collect(), self.order)
    }

    /// Multiplication by `w^k`.
    pub fn shift_degree(&self, k: i64) -> Self {
        Self::build(self.low + k, self.coeffs.clone(), self.order.map(|n| n + k))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let order = min_order(self.order, other.order);
        let (Some(lo), Some(hi)) = (
            [self.lowest_degree(), other.lowest_degree()].into_iter().flatten().min(),
            [self.top_degree(), other.top_degree()].into_iter().flatten().max(),
        ) else {
            return Self::build(0, Vec::new(), order);
        };
        let hi = order.map_or(hi, |n| hi.min(n));
        if hi < lo {
            return Self::build(lo, Vec::new(), order);
        }
        let coeffs = (lo..=hi)
            .map(|k| {
                let a = self.coeff_or_zero(k);
                let b = other.coeff_or_zero(k);
                if negate {
                    &a - &b
                } else {
                    &a + &b
                }
            })
            .collect();
        Self::build(lo, coeffs, order)
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let va = self.valuation_bound().unwrap();
        let vb = other.valuation_bound().unwrap();
        let order = min_order(self.order.map(|n| n + vb), other.order.map(|n| n + va));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::build(va + vb, Vec::new(), order);
        }
        let lo = self.low + other.low;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(n) = order {
            len = len.min((n - lo + 1).max(0) as usize);
        }
        let mut out = vec![Scalar::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::build(lo, out, order)
    }

    /// Multiplicative inverse. An exact non-monomial yields a series
    /// truncated at [`DEFAULT_ORDER`] (or further out if the pole demands it).
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        self.inverse_to(None)
    }

    /// Inverse with an explicit target order for exact non-monomial inputs.
    pub fn inverse_to(&self, target: Option<i64>) -> Result<Self, SeriesError> {
        let Some((a, c0)) = self.leading() else {
            return Err(if self.is_exact() {
                SeriesError::DivisionByZero
            } else {
                SeriesError::Indeterminate
            });
        };
        let c0_inv = c0.recip().expect("leading coefficient is nonzero");
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(-a, c0_inv));
        }
        let order = match self.order {
            Some(n) => n - 2 * a,
            None => target.unwrap_or(DEFAULT_ORDER.max(-a)),
        };
        let terms = order + a;
        if terms < 0 {
            return Ok(Self::build(-a, Vec::new(), Some(order)));
        }
        let terms = terms as usize;
        let mut h: Vec<Scalar> = Vec::with_capacity(terms + 1);
        h.push(c0_inv.clone());
        for k in 1..=terms {
            let mut acc = Scalar::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = &acc + &(&self.coeffs[j] * &h[k - j]);
            }
            h.push(-(&acc * &c0_inv));
        }
        Ok(Self::build(-a, h, Some(order)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.inverse()?)
    }

    /// Square root with positive leading coefficient. Exact perfect squares
    /// come back exact.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        self.sqrt_to(None)
    }

    pub fn sqrt_to(&self, target: Option<i64>) -> Result<Self, SeriesError> {
        let Some((a, c0)) = self.leading() else {
            if self.is_exact() {
                return Ok(Self::zero());
            }
            return Err(SeriesError::Indeterminate);
        };
        if a.rem_euclid(2) != 0 {
            return Err(SeriesError::OddLeadingDegree(a));
        }
        if !c0.is_positive() {
            return Err(SeriesError::NonPositiveLeading);
        }
        let g0 = c0
            .sqrt()
            .ok_or_else(|| SeriesError::IrrationalLeading(c0.to_string()))?;
        let k = a / 2;
        if self.is_exact() {
            let span = self.top_degree().unwrap() - a;
            if span % 2 == 0 {
                let candidate = Self::sqrt_terms(&self.coeffs, &g0, (span / 2) as usize);
                let root = Self::exact(k, candidate);
                if &(&root * &root) == self {
                    return Ok(root);
                }
            }
        }
        let order = match self.order {
            Some(n) => n - k,
            None => target.unwrap_or(DEFAULT_ORDER.max(k)),
        };
        let terms = order - k;
        if terms < 0 {
            return Ok(Self::build(k, Vec::new(), Some(order)));
        }
        let g = Self::sqrt_terms(&self.coeffs, &g0, terms as usize);
        Ok(Self::build(k, g, Some(order)))
    }

    fn sqrt_terms(f: &[Scalar], g0: &Scalar, terms: usize) -> Vec<Scalar> {
        let two_g0_inv = (g0 + g0).recip().expect("nonzero leading root");
        let mut g = Vec::with_capacity(terms + 1);
        g.push(g0.clone());
        for n in 1..=terms {
            let mut acc = f.get(n).cloned().unwrap_or_else(Scalar::zero);
            for j in 1..n {
                acc = &acc - &(&g[j] * &g[n - j]);
            }
            g.push(&acc * &two_g0_inv);
        }
        g
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Asymptotic type `f = Θ(w^m)` as `(sign of a_m, m)`; `None` when no
    /// nonzero coefficient is known (the zero series, or a truncated zero).
    pub fn theta_of(&self) -> Option<(Ordering, i64)> {
        self.leading().map(|(m, c)| (c.signum(), m))
    }

    /// Position of `self` relative to zero in the order `⪯`.
    pub fn sign(&self) -> OrderComparison {
        match self.leading() {
            Some((_, c)) => OrderComparison::from_ordering(c.signum()),
            None if self.is_exact() => OrderComparison::Eq,
            None => OrderComparison::Indeterminate,
        }
    }

    /// Numeric evaluation at `v` (so `w = 1/v`).
    pub fn eval_at(&self, v: &Rational) -> Evaluation {
        self.eval_at_f64(v.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_at_f64(&self, v: f64) -> Evaluation {
        let w = 1.0 / v;
        let mut value = 0.0;
        let mut last = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let term = c.to_f64() * w.powi(degree_i32(self.low + j as i64));
            value += term;
            last = term.abs();
        }
        let tail_bound = match self.order {
            None => 0.0,
            Some(n) => last.max(w.powi(degree_i32(n + 1)).abs()),
        };
        Evaluation { value, tail_bound }
    }
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// The order `⪯`: sign of the leading coefficient of `f − g`.
pub fn compare_order(f: &LaurentSeries, g: &LaurentSeries) -> OrderComparison {
    (f - g).sign()
}

impl Default for LaurentSeries {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Scalar> for LaurentSeries {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

impl From<Rational> for LaurentSeries {
    fn from(c: Rational) -> Self {
        Self::constant(Scalar::from_rational(c))
    }
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.product(rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

macro_rules! forward_owned {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries { (&self).$method(&rhs) }
        }
        impl<'a> $imp<&'a LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries { (&self).$method(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + j as i64;
            let mono = match k {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{k}"),
            };
            let coeff = if c.is_rational() { c.to_string() } else { format!("({c})") };
            terms.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            });
        }
        if let Some(n) = self.order {
            terms.push(format!("O(w^{})", n + 1));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

/// Wire format for series.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesJson {
    pub lowest_degree: i64,
    pub coefficients: Vec<String>,
    pub truncation_order: i64,
    #[serde(default)]
    pub exact: bool,
}

impl From<LaurentSeries> for SeriesJson {
    fn from(s: LaurentSeries) -> Self {
        let truncation_order = match s.order {
            Some(n) => n,
            None => s.top_degree().unwrap_or(s.low),
        };
        SeriesJson {
            lowest_degree: s.low,
            coefficients: s.coeffs.iter().map(Scalar::to_string).collect(),
            truncation_order,
            exact: s.order.is_none(),
        }
    }
}

impl TryFrom<SeriesJson> for LaurentSeries {
    type Error = SeriesError;
    fn try_from(j: SeriesJson) -> Result<Self, SeriesError> {
        let coeffs = j
            .coefficients
            .iter()
            .map(|c| c.parse())
            .collect::<Result<Vec<Scalar>, _>>()?;
        if j.truncation_order < j.lowest_degree && !coeffs.is_empty() {
            return Err(SeriesError::Parse(format!(
                "truncation_order {} below lowest_degree {}",
                j.truncation_order, j.lowest_degree
            )));
        }
        let order = (!j.exact).then_some(j.truncation_order);
        Ok(LaurentSeries::from_parts(j.lowest_degree, coeffs, order))
    }
}

/// Integer degree to `i32` for float powers, saturating.
pub(crate) fn degree_i32(k: i64) -> i32 {
    k.to_i32().unwrap_or(if k < 0 { i32::MIN } else { i32::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn s(low: i64, c: &[i64], order: Option<i64>) -> LaurentSeries {
        LaurentSeries::from_ints(low, c, order)
    }

    #[test]
    fn canonical_form_strips_zeros() {
        let a = s(-2, &[0, 0, 3, 0, 0], None);
        assert_eq!(a.lowest_degree(), Some(0));
        assert_eq!(a.coefficients().len(), 1);
        let z = s(0, &[0, 0], Some(4));
        assert!(z.is_known_zero());
        assert_eq!(z.valuation_bound(), Some(5));
    }

    #[test]
    fn compare_order_examples() {
        // 1/v vs 1
        assert_eq!(compare_order(&LaurentSeries::w(), &LaurentSeries::one()), OrderComparison::Lt);
        // v − 3 vs 0
        let f = s(-1, &[1, -3], None);
        assert_eq!(compare_order(&f, &LaurentSeries::zero()), OrderComparison::Gt);
        assert_eq!(compare_order(&f, &f), OrderComparison::Eq);
        let t = s(0, &[1], Some(3));
        assert_eq!(compare_order(&t, &t), OrderComparison::Indeterminate);
    }

    #[test]
    fn theta_examples() {
        let f = s(1, &[3, 0, -18], None);
        assert_eq!(f.theta_of(), Some((Ordering::Greater, 1)));
        let g = s(-2, &[-1, 0, 5], None);
        assert_eq!(g.theta_of(), Some((Ordering::Less, -2)));
        assert_eq!(LaurentSeries::zero().theta_of(), None);
    }

    #[test]
    fn scaling_by_zero_is_exact() {
        let f = LaurentSeries::from_ints(0, &[1, 2], Some(3));
        assert!(f.scale(&Scalar::zero()).is_exact_zero());
    }

    #[test]
    fn multiplication_tracks_order() {
        // (1 + w + O(w^3)) · w⁻¹ is known through w^2
        let a = s(0, &[1, 1], Some(3));
        let b = &a * &LaurentSeries::v();
        assert_eq!(b.truncation_order(), Some(2));
        let c = &a * &a;
        assert_eq!(c.truncation_order(), Some(3));
        assert_eq!(c.coefficients(), s(0, &[1, 2, 1], None).coefficients());
    }

    #[test]
    fn inverse_and_back() {
        let f = s(-1, &[2, 1, 5], None);
        let inv = f.inverse().unwrap();
        let prod = &f * &inv;
        let n = prod.truncation_order().unwrap();
        assert!(n >= DEFAULT_ORDER - 2);
        assert_eq!(prod.with_order(n), LaurentSeries::one().with_order(n));
        assert_eq!(LaurentSeries::w().inverse().unwrap(), LaurentSeries::v());
        assert_eq!(LaurentSeries::zero().inverse(), Err(SeriesError::DivisionByZero));
    }

    #[test]
    fn inverse_order_rule() {
        let f = s(2, &[1, 1], Some(10));
        assert_eq!(f.inverse().unwrap().truncation_order(), Some(6));
    }

    #[test]
    fn sqrt_examples() {
        let nine = s(-2, &[9], None);
        assert_eq!(nine.sqrt().unwrap(), s(-1, &[3], None));
        let sq = s(0, &[1, 2, 1], None);
        assert_eq!(sq.sqrt().unwrap(), s(0, &[1, 1], None));
        let f = s(-2, &[1, 1], None);
        let r = f.sqrt().unwrap();
        assert_eq!(r.coeff(-1), Some(Scalar::one()));
        assert_eq!(r.coeff(0), Some(Scalar::from_rational(rat(1, 2))));
        assert_eq!(r.coeff(1), Some(Scalar::from_rational(rat(-1, 8))));
        let back = &r * &r;
        let n = back.truncation_order().unwrap();
        assert_eq!(back, f.with_order(n));
        assert_eq!(s(1, &[1], None).sqrt(), Err(SeriesError::OddLeadingDegree(1)));
        assert_eq!(s(0, &[-1], None).sqrt(), Err(SeriesError::NonPositiveLeading));
    }

    #[test]
    fn sqrt_with_irrational_leading_root() {
        let f = s(0, &[2, 1], None);
        let r = f.sqrt().unwrap();
        let back = &r * &r;
        assert_eq!(back, f.with_order(back.truncation_order().unwrap()));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(LaurentSeries::w().eval_at(&rat(4, 1)).value, 0.25);
        assert_eq!(s(-1, &[1, -3], None).eval_at(&rat(10, 1)).value, 7.0);
        let u = s(1, &[3, 0, -18], None).eval_at(&rat(10, 1)).value;
        assert!((u - 0.282).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let f = LaurentSeries::from_rationals(-1, &[rat(1, 3), rat(0, 1), rat(-5, 2)], Some(6));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<LaurentSeries>(&text).unwrap(), f);
        let e = s(0, &[1, 2], None);
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains("\"exact\":true"));
        assert_eq!(serde_json::from_str::<LaurentSeries>(&text).unwrap(), e);
    }
}
