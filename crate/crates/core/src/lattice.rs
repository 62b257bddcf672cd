//! The numerical Chern lattice of a Weierstraß elliptic surface.
//!
//! Divisors live in the span of the section `Θ` and the fiber `f`, with
//! `Θ² = −e`, `Θ·f = 1`, `f² = 0`. A class stores `ch₁ = xΘ + yf + ξ` where
//! the residual `ξ` is orthogonal to both and only its square is kept.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed as _, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{format_rational, int, parse_rational, rat, serde_rational, Rational, Ring, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("malformed class {0:?}: expected n,x,y,xi2,s")]
    ClassSyntax(String),
    #[error("malformed divisor {0:?}: expected p,q")]
    DivisorSyntax(String),
    #[error("adding classes with nonzero residual squares needs their cross term")]
    ResidualCrossTerm,
    #[error(transparent)]
    Number(#[from] SeriesError),
}

/// The pair `(e, m)`: `Θ² = −e` and `Θ + kf` ample for `k ≥ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceGeometry {
    #[serde(with = "serde_rational")]
    e: Rational,
    #[serde(with = "serde_rational")]
    m: Rational,
    /// f-coefficient of `K_X`; `None` means the Weierstraß value `e`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    kx_f: Option<Rational>,
}

impl SurfaceGeometry {
    pub fn new(e: Rational, m: Rational) -> Result<Self, LatticeError> {
        if e.is_negative() {
            return Err(LatticeError::Geometry(format!("e = {} must be >= 0", format_rational(&e))));
        }
        if m <= e {
            return Err(LatticeError::Geometry(format!(
                "m = {} must exceed e = {}",
                format_rational(&m),
                format_rational(&e)
            )));
        }
        Ok(SurfaceGeometry { e, m, kx_f: None })
    }

    /// Geometry for computations that never consult `m`; `m` is set to `e + 1`.
    pub fn with_e(e: Rational) -> Result<Self, LatticeError> {
        let m = &e + int(1);
        Self::new(e, m)
    }

    pub fn with_canonical_f(mut self, kx_f: Rational) -> Self {
        self.kx_f = Some(kx_f);
        self
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// f-coefficient of the canonical class.
    pub fn kx_f(&self) -> &Rational {
        self.kx_f.as_ref().unwrap_or(&self.e)
    }

    /// Re-validates after deserialization.
    pub fn validate(&self) -> Result<(), LatticeError> {
        Self::new(self.e.clone(), self.m.clone()).map(|_| ())
    }
}

mod opt_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| parse_rational(&t).map_err(serde::de::Error::custom)).transpose()
    }
}

/// The divisor `pΘ + qf`, over any coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor<T> {
    pub p: T,
    pub q: T,
}

pub type DivisorRF = Divisor<Rational>;

impl<T: Ring> Divisor<T> {
    pub fn new(p: T, q: T) -> Self {
        Divisor { p, q }
    }

    pub fn zero() -> Self {
        Divisor::new(T::zero(), T::zero())
    }

    pub fn theta() -> Self {
        Divisor::new(T::one(), T::zero())
    }

    pub fn fiber() -> Self {
        Divisor::new(T::zero(), T::one())
    }

    pub fn plus(&self, o: &Self) -> Self {
        Divisor::new(self.p.plus(&o.p), self.q.plus(&o.q))
    }

    pub fn negated(&self) -> Self {
        Divisor::new(self.p.negated(), self.q.negated())
    }

    pub fn scale(&self, t: &T) -> Self {
        Divisor::new(self.p.times(t), self.q.times(t))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Divisor<U> {
        Divisor { p: f(&self.p), q: f(&self.q) }
    }
}

impl DivisorRF {
    pub fn rational(p: Rational, q: Rational) -> Self {
        Divisor { p, q }
    }

    /// The fiber multiple `qf`.
    pub fn fiber_multiple(q: Rational) -> Self {
        Divisor { p: int(0), q }
    }

    /// Lifts rational coefficients into another ring.
    pub fn lift<T: Ring>(&self) -> Divisor<T> {
        self.map(T::from_rational)
    }
}

impl FromStr for DivisorRF {
    type Err = LatticeError;
    fn from_str(text: &str) -> Result<Self, LatticeError> {
        let parts: Vec<&str> = text.split(',').collect();
        let [p, q] = parts.as_slice() else {
            return Err(LatticeError::DivisorSyntax(text.to_string()));
        };
        Ok(Divisor { p: parse_rational(p)?, q: parse_rational(q)? })
    }
}

impl fmt::Display for DivisorRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.p), format_rational(&self.q))
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    #[serde(with = "serde_rational")]
    p: Rational,
    #[serde(with = "serde_rational")]
    q: Rational,
}

impl Serialize for DivisorRF {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DivisorJson { p: self.p.clone(), q: self.q.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorRF {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DivisorJson::deserialize(d)?;
        Ok(Divisor { p: j.p, q: j.q })
    }
}

/// Intersection pairing on `span{Θ, f}`.
pub fn pair<T: Ring>(d1: &Divisor<T>, d2: &Divisor<T>, geom: &SurfaceGeometry) -> T {
    let e = T::from_rational(geom.e());
    e.times(&d1.p).times(&d2.p).negated().plus(&d1.p.times(&d2.q)).plus(&d2.p.times(&d1.q))
}

/// A numerical Chern character `(ch₀, ch₁, ch₂)` with `ch₁ = xΘ + yf + ξ`,
/// `ξ² = xi2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChernClass {
    #[serde(with = "serde_rational")]
    pub n: Rational,
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    #[serde(with = "serde_rational")]
    pub xi2: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
}

impl ChernClass {
    pub fn new(n: Rational, x: Rational, y: Rational, xi2: Rational, s: Rational) -> Self {
        ChernClass { n, x, y, xi2, s }
    }

    pub fn from_ints(n: i64, x: i64, y: i64, xi2: i64, s: i64) -> Self {
        ChernClass::new(int(n), int(x), int(y), int(xi2), int(s))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0, 0)
    }

    /// Class of a skyscraper sheaf `𝒪_x`.
    pub fn skyscraper() -> Self {
        Self::from_ints(0, 0, 0, 0, 1)
    }

    /// Class of the structure sheaf `𝒪_X`.
    pub fn structure_sheaf() -> Self {
        Self::from_ints(1, 0, 0, 0, 0)
    }

    /// The five coordinate classes.
    pub fn generators() -> [ChernClass; 5] {
        [
            Self::from_ints(1, 0, 0, 0, 0),
            Self::from_ints(0, 1, 0, 0, 0),
            Self::from_ints(0, 0, 1, 0, 0),
            Self::from_ints(0, 0, 0, 1, 0),
            Self::from_ints(0, 0, 0, 0, 1),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.n.is_zero() && self.x.is_zero() && self.y.is_zero() && self.xi2.is_zero() && self.s.is_zero()
    }

    /// `Θ·ch₁ = −e·x + y`.
    pub fn c(&self, geom: &SurfaceGeometry) -> Rational {
        &self.y - geom.e() * &self.x
    }

    /// `f·ch₁ = x`.
    pub fn d(&self) -> Rational {
        self.x.clone()
    }

    /// The `span{Θ, f}` part of `ch₁`.
    pub fn ch1_divisor(&self) -> DivisorRF {
        Divisor { p: self.x.clone(), q: self.y.clone() }
    }

    pub fn ch1_sq(&self, geom: &SurfaceGeometry) -> Rational {
        pair(&self.ch1_divisor(), &self.ch1_divisor(), geom) + &self.xi2
    }

    /// `D·ch₁` for a divisor in `span{Θ, f}`: `p·c + q·d`.
    pub fn dot_ch1<T: Ring>(&self, divisor: &Divisor<T>, geom: &SurfaceGeometry) -> T {
        divisor
            .p
            .scaled(&self.c(geom))
            .plus(&divisor.q.scaled(&self.d()))
    }

    /// `e^{−B}·ch`.
    pub fn twist(&self, b: &DivisorRF, geom: &SurfaceGeometry) -> ChernClass {
        let bch1 = self.dot_ch1(b, geom);
        let b2 = pair(b, b, geom);
        ChernClass {
            n: self.n.clone(),
            x: &self.x - &self.n * &b.p,
            y: &self.y - &self.n * &b.q,
            xi2: self.xi2.clone(),
            s: &self.s - bch1 + &self.n * b2 * rat(1, 2),
        }
    }

    /// `Δ = ch₁² − 2·ch₀·ch₂`.
    pub fn discriminant(&self, geom: &SurfaceGeometry) -> Rational {
        self.ch1_sq(geom) - int(2) * &self.n * &self.s
    }

    /// `ch(E[1]) = −ch(E)`; the residual square is unchanged.
    pub fn shift(&self) -> ChernClass {
        ChernClass {
            n: -self.n.clone(),
            x: -self.x.clone(),
            y: -self.y.clone(),
            xi2: self.xi2.clone(),
            s: -self.s.clone(),
        }
    }

    /// Sum of two classes, defined when at most one has a residual part.
    pub fn checked_add(&self, o: &ChernClass) -> Result<ChernClass, LatticeError> {
        if !self.xi2.is_zero() && !o.xi2.is_zero() {
            return Err(LatticeError::ResidualCrossTerm);
        }
        Ok(ChernClass {
            n: &self.n + &o.n,
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            xi2: &self.xi2 + &o.xi2,
            s: &self.s + &o.s,
        })
    }

    pub fn checked_sub(&self, o: &ChernClass) -> Result<ChernClass, LatticeError> {
        self.checked_add(&o.shift())
    }

    /// `k·γ`; the residual square scales by `k²`.
    pub fn scale(&self, k: &Rational) -> ChernClass {
        ChernClass {
            n: &self.n * k,
            x: &self.x * k,
            y: &self.y * k,
            xi2: &self.xi2 * k * k,
            s: &self.s * k,
        }
    }

    pub fn with_xi2(&self, xi2: Rational) -> ChernClass {
        ChernClass { xi2, ..self.clone() }
    }

    /// Whether the class can come from an honest complex:
    /// `n, x, y ∈ ℤ` and `s ∈ ½ℤ`.
    pub fn is_integral(&self) -> bool {
        let integer = |r: &Rational| r.is_integer();
        integer(&self.n) && integer(&self.x) && integer(&self.y) && integer(&(&self.s * int(2)))
    }
}

impl FromStr for ChernClass {
    type Err = LatticeError;
    fn from_str(text: &str) -> Result<Self, LatticeError> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let [n, x, y, xi2, s] = parts.as_slice() else {
            return Err(LatticeError::ClassSyntax(text.to_string()));
        };
        Ok(ChernClass::new(
            parse_rational(n)?,
            parse_rational(x)?,
            parse_rational(y)?,
            parse_rational(xi2)?,
            parse_rational(s)?,
        ))
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            format_rational(&self.n),
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.xi2),
            format_rational(&self.s)
        )
    }
}
