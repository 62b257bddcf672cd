//! Solvers for the relations tying the large-volume charge to the
//! hyperbola charge: the general four-relation system, the `(u, β)`
//! relations numerically and as series in `w = 1/v`, and the Gepner point.
//!
//! With `A = m + α − e`, `B = m − e/2` and `C = α²/(m + α − e/2)`:
//!
//! * `l = e/2 + q`
//! * `(β²/α²)(m + α − e/2) = m + v/u − e`
//! * `B·u² + v·u = A`

use num_traits::{Signed as _, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::series::{format_rational, int, rat, LaurentSeries, Rational, Scalar, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatchError {
    #[error("invalid constants: {0}")]
    Constants(String),
    #[error("no solution: 2ζ = e while k(e − 2δ) ≠ 0")]
    NoSolution,
    #[error("underdetermined: 2ζ = e and k(e − 2δ) = 0, so p is free")]
    Underdetermined,
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("grid exhausted before u decreased and β increased monotonically")]
    GridExhausted,
    #[error("series of order {0} is too short; need at least 5")]
    SeriesTooShort(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The constants `(m, α, e)` with `m > e ≥ 0` and `α > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchConstants {
    m: Rational,
    alpha: Rational,
    e: Rational,
}

impl PatchConstants {
    pub fn new(m: Rational, alpha: Rational, e: Rational) -> Result<Self, PatchError> {
        if e.is_negative() {
            return Err(PatchError::Constants(format!("e = {} must be >= 0", format_rational(&e))));
        }
        if m <= e {
            return Err(PatchError::Constants(format!(
                "m = {} must exceed e = {}",
                format_rational(&m),
                format_rational(&e)
            )));
        }
        if !alpha.is_positive() {
            return Err(PatchError::Constants(format!("alpha = {} must be > 0", format_rational(&alpha))));
        }
        Ok(PatchConstants { m, alpha, e })
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    /// `A = m + α − e`.
    pub fn a(&self) -> Rational {
        &self.m + &self.alpha - &self.e
    }

    /// `B = m − e/2`, the coefficient of `u²`.
    pub fn b(&self) -> Rational {
        &self.m - &self.e * rat(1, 2)
    }

    /// `m + α − e/2`.
    pub fn a_half(&self) -> Rational {
        &self.m + &self.alpha - &self.e * rat(1, 2)
    }

    /// `C = α²/(m + α − e/2)`.
    pub fn c(&self) -> Rational {
        &self.alpha * &self.alpha / self.a_half()
    }
}

/// `l = e/2 + q`.
pub fn lq_relation(q: &Rational, e: &Rational) -> Rational {
    e * rat(1, 2) + q
}

/// Solution `(p, q, ε, ζ)` of the general system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSolution {
    pub p: Rational,
    pub q: Rational,
    pub epsilon: Rational,
    pub zeta: Rational,
}

/// Solves the four relations matching `Z'_{ε,ζ,B}∘Φ` with a rotation of
/// `Z'_{γ,δ,B̄}`, where `B̄ = kΘ + lf` and `B = pΘ + qf`.
pub fn solve_general(
    k: &Rational,
    l: &Rational,
    gamma: &Rational,
    delta: &Rational,
    e: &Rational,
) -> Result<GeneralSolution, PatchError> {
    if !gamma.is_positive() {
        return Err(PatchError::NotPositive("γ"));
    }
    if !delta.is_positive() {
        return Err(PatchError::NotPositive("δ"));
    }
    let half_e = e * rat(1, 2);
    let zeta = gamma + (delta - &half_e) * k * k + e;
    let num = k * (e - int(2) * delta);
    let den = int(2) * &zeta - e;
    if den.is_zero() {
        return Err(if num.is_zero() { PatchError::Underdetermined } else { PatchError::NoSolution });
    }
    let p = num / den;
    let epsilon = delta - e - &p * &p * (&zeta - &half_e);
    let q = l - e * k + delta * k - &half_e + &p * &zeta;
    Ok(GeneralSolution { p, q, epsilon, zeta })
}

/// Residuals of the four relations, all zero for a solution:
///
/// * `l − kδ = e/2 + (q − ep) + pζ`
/// * `γ + (δ − e/2)k² = ζ − e`
/// * `δ = e − (e/2)p² + ε + p²ζ`
/// * `l − ek + δk = e/2 + q − pζ`
pub fn general_residuals(
    k: &Rational,
    l: &Rational,
    gamma: &Rational,
    delta: &Rational,
    e: &Rational,
    s: &GeneralSolution,
) -> [Rational; 4] {
    let half_e = e * rat(1, 2);
    let (p, q, eps, zeta) = (&s.p, &s.q, &s.epsilon, &s.zeta);
    [
        l - k * delta - (&half_e + (q - e * p) + p * zeta),
        gamma + (delta - &half_e) * k * k - (zeta - e),
        delta - (e - &half_e * p * p + eps + p * p * zeta),
        l - e * k + delta * k - (&half_e + q - p * zeta),
    ]
}

/// Floating solution of the `(u, β)` relations at a numeric `v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericSolution {
    pub u: f64,
    pub beta: f64,
    pub v: f64,
    /// Relative residual of `(β²/α²)(m + α − e/2) = m + v/u − e`.
    pub beta_relation: f64,
    /// Relative residual of `B·u² + v·u = A`.
    pub u_relation: f64,
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Positive roots `u, β` at a given `v > 0`.
pub fn solve_uv_numeric(c: &PatchConstants, v: f64) -> Result<NumericSolution, PatchError> {
    if v.is_nan() || v <= 0.0 {
        return Err(PatchError::NotPositive("v"));
    }
    let (a, b, ah, alpha, m, e) = (f(&c.a()), f(&c.b()), f(&c.a_half()), f(&c.alpha), f(&c.m), f(&c.e));
    // u = (−v + √(v² + 4AB))/(2B), rewritten to avoid cancellation for large v
    let disc = v * v + 4.0 * a * b;
    let u = 2.0 * a / (v + disc.sqrt());
    let beta = alpha * ((m + v / u - e) / ah).sqrt();
    Ok(NumericSolution { u, beta, v, beta_relation: 0.0, u_relation: 0.0 }.with_residuals(c))
}

impl NumericSolution {
    fn with_residuals(mut self, c: &PatchConstants) -> Self {
        let (a, b, ah, alpha, m, e) = (f(&c.a()), f(&c.b()), f(&c.a_half()), f(&c.alpha), f(&c.m), f(&c.e));
        let (u, beta, v) = (self.u, self.beta, self.v);
        let lhs = beta * beta / (alpha * alpha) * ah;
        let rhs = m + v / u - e;
        self.beta_relation = (lhs - rhs).abs() / lhs.abs().max(rhs.abs());
        let quad = b * u * u + v * u;
        self.u_relation = (quad - a).abs() / a.abs().max((b * u * u).abs() + (v * u).abs());
        self
    }
}

/// Exact solution at rational `v`: `u` and `β²` lie in `ℚ(√(v² + 4AB))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub u: Scalar,
    pub beta_sq: Scalar,
}

pub fn solve_uv_exact(c: &PatchConstants, v: &Rational) -> Result<ExactSolution, PatchError> {
    if !v.is_positive() {
        return Err(PatchError::NotPositive("v"));
    }
    let disc = v * v + int(4) * c.a() * c.b();
    let root = Scalar::sqrt_rational(&disc).expect("positive discriminant");
    let vs = Scalar::from_rational(v.clone());
    let u = &Scalar::from_rational(int(2) * c.a()) / &(&vs + &root);
    let rhs = &(&vs / &u) + &Scalar::from_rational(&c.m - &c.e);
    let beta_sq = rhs.scale(&c.c());
    Ok(ExactSolution { u, beta_sq })
}

/// `u` as a series in `w`, by fixed-point iteration of `u ← (A − B·u²)·w`
/// from `u₀ = A·w`.
///
/// The result is known through `w^(n+1)`, so that the residual of
/// `B·u² + v·u − A` (which loses one order to the `v·u` term) is certified
/// through `w^n`.
pub fn solve_u_series(c: &PatchConstants, n: i64) -> LaurentSeries {
    let order = n.max(1) + 1;
    let a = Scalar::from_rational(c.a());
    let b = Scalar::from_rational(c.b());
    let w = LaurentSeries::w();
    let constant = LaurentSeries::constant(a.clone());
    let mut u = LaurentSeries::monomial(1, a).with_order(order);
    loop {
        let next = (&(&constant - &(&u * &u).scale(&b)) * &w).with_order(order);
        if next == u {
            return u;
        }
        u = next;
    }
}

/// `B·u² + v·u − A`.
pub fn u_residual(c: &PatchConstants, u: &LaurentSeries) -> LaurentSeries {
    let b = Scalar::from_rational(c.b());
    let a = LaurentSeries::constant(Scalar::from_rational(c.a()));
    &(&(u * u).scale(&b) + &(&LaurentSeries::v() * u)) - &a
}

/// `β²` and `β` as series in `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaSeries {
    pub u: LaurentSeries,
    pub beta_sq: LaurentSeries,
    pub beta: LaurentSeries,
}

/// `β² = C·(1/(uw) + (m − e))`, with a double pole, and its positive root.
///
/// `u` is solved three orders further so that `β²` is known through `w^n`.
pub fn solve_beta_series(c: &PatchConstants, n: i64) -> Result<BetaSeries, PatchError> {
    let u = solve_u_series(c, n + 2);
    let inv = u.shift_degree(1).inverse()?;
    let shift = LaurentSeries::constant(Scalar::from_rational(&c.m - &c.e));
    let beta_sq = (&inv + &shift).scale(&Scalar::from_rational(c.c())).with_order(n);
    let beta = beta_sq.sqrt()?;
    Ok(BetaSeries { u, beta_sq, beta })
}

/// `(β²/α²)(m + α − e/2) − (m + v/u − e)`.
pub fn beta_residual(c: &PatchConstants, u: &LaurentSeries, beta: &LaurentSeries) -> Result<LaurentSeries, PatchError> {
    let factor = Scalar::from_rational(c.a_half() / (&c.alpha * &c.alpha));
    let lhs = (beta * beta).scale(&factor);
    let v_over_u = &LaurentSeries::v() * &u.inverse()?;
    let rhs = &v_over_u + &LaurentSeries::constant(Scalar::from_rational(&c.m - &c.e));
    Ok(&lhs - &rhs)
}

/// The Gepner solution `u = √(A/(m + α − e/2))`, `β = αu`, `v = β`, with the
/// exact residuals of the two `(u, β)` relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GepnerPoint {
    pub u: Scalar,
    pub beta: Scalar,
    pub v: Scalar,
    pub beta_relation: Scalar,
    pub u_relation: Scalar,
}

pub fn gepner_params(c: &PatchConstants) -> GepnerPoint {
    let u = Scalar::sqrt_rational(&(c.a() / c.a_half())).expect("positive ratio");
    let beta = u.scale(&c.alpha);
    let v = beta.clone();
    let beta_relation = &(&beta * &beta).scale(&(c.a_half() / (&c.alpha * &c.alpha)))
        - &(&(&v / &u) + &Scalar::from_rational(&c.m - &c.e));
    let u_relation = &(&(&u * &u).scale(&c.b()) + &(&u * &v)) - &Scalar::from_rational(c.a());
    GepnerPoint { u, beta, v, beta_relation, u_relation }
}

/// Smallest grid value past which sampled `u` strictly decreases and
/// sampled `β` strictly increases through the end of the grid.
///
/// Sampling-based and advisory: it certifies nothing between grid points.
pub fn monotone_from(u: &LaurentSeries, beta: &LaurentSeries, grid: &[f64]) -> Result<f64, PatchError> {
    for s in [u, beta] {
        if let Some(n) = s.truncation_order() {
            if n < 5 {
                return Err(PatchError::SeriesTooShort(n));
            }
        }
    }
    let mut points: Vec<f64> = grid.iter().copied().filter(|v| *v > 0.0).collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    if points.len() < 2 {
        return Err(PatchError::GridExhausted);
    }
    let us: Vec<f64> = points.iter().map(|&v| u.eval_at_f64(v).value).collect();
    let bs: Vec<f64> = points.iter().map(|&v| beta.eval_at_f64(v).value).collect();
    let mut start = points.len() - 1;
    while start > 0 && us[start] < us[start - 1] && bs[start] > bs[start - 1] {
        start -= 1;
    }
    if start == points.len() - 1 {
        return Err(PatchError::GridExhausted);
    }
    Ok(points[start])
}
