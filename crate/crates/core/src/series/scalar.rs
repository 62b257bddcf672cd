//! Exact scalars: rationals and elements `a + b·√d` of a real quadratic
//! extension of the rationals.
//!
//! The radicand is carried per value, so a computation can stay inside
//! whichever extension its square roots produce. Combining two values from
//! different extensions is a programming error and panics; values whose
//! radicands differ by a rational square are aligned automatically.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SeriesError;

pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `p/q` text (`p` alone when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, SeriesError> {
    let s = text.trim();
    let bad = || SeriesError::Parse(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Writes `n = s²·t` with `t` squarefree (up to a trial-division bound for
/// very large inputs). Requires `n > 0`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(200_000u32);
    while &p * &p <= rest && p < limit {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            free *= &p;
        }
        p += 1u32;
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        square *= root;
    } else {
        free *= rest;
    }
    (square, free)
}

/// An exact real number `rational + surd·√radicand`.
///
/// Canonical form: `radicand` is a squarefree integer greater than one and is
/// present exactly when `surd` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: Rational,
    surd: Rational,
    radicand: Option<BigInt>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            rational: r,
            surd: Rational::zero(),
            radicand: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `a + b·√d` for a positive integer `d`; square factors of `d` are pulled out.
    pub fn with_surd(a: Rational, b: Rational, d: &BigInt) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        let (s, t) = split_square(d);
        let b = b * Rational::from_integer(s);
        if t.is_one() {
            return Self::from_rational(a + b);
        }
        Scalar::canonical(a, b, Some(t))
    }

    fn canonical(rational: Rational, surd: Rational, radicand: Option<BigInt>) -> Self {
        if surd.is_zero() {
            Scalar::from_rational(rational)
        } else {
            Scalar {
                rational,
                surd,
                radicand,
            }
        }
    }

    /// The nonnegative square root of a nonnegative rational.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Self::zero());
        }
        // √(p/q) = √(p·q)/q
        let pq = r.numer() * r.denom();
        let coeff = Rational::new(BigInt::one(), r.denom().clone());
        Some(Self::with_surd(Rational::zero(), coeff, &pq))
    }

    /// Square root, defined for nonnegative rational values only.
    pub fn sqrt(&self) -> Option<Self> {
        self.as_rational().and_then(Self::sqrt_rational)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        self.radicand.as_ref()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.radicand.is_none() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_none() && self.rational.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.radicand.is_none() && self.rational.is_one()
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&Rational::zero());
        let Some(d) = &self.radicand else {
            return a;
        };
        let b = self.surd.cmp(&Rational::zero());
        if a == b || a == Ordering::Equal {
            return b;
        }
        // opposite signs: compare a² with b²·d
        let lhs = &self.rational * &self.rational;
        let rhs = &self.surd * &self.surd * Rational::from_integer(d.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        match &self.radicand {
            None => a,
            Some(d) => a + self.surd.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt(),
        }
    }

    /// `a − b√d`.
    pub fn conjugate(&self) -> Self {
        Scalar::canonical(self.rational.clone(), -self.surd.clone(), self.radicand.clone())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.radicand {
            None => Some(Self::from_rational(self.rational.recip())),
            Some(d) => {
                let norm = &self.rational * &self.rational
                    - &self.surd * &self.surd * Rational::from_integer(d.clone());
                Some(Scalar::canonical(
                    &self.rational / &norm,
                    -(&self.surd / &norm),
                    self.radicand.clone(),
                ))
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Scalar::canonical(&self.rational * r, &self.surd * r, self.radicand.clone())
    }

    /// Brings two values into a common extension; returns their surd parts
    /// expressed over the shared radicand.
    fn aligned(&self, other: &Self) -> (Option<BigInt>, Rational, Rational) {
        match (&self.radicand, &other.radicand) {
            (None, None) => (None, Rational::zero(), Rational::zero()),
            (Some(d), None) => (Some(d.clone()), self.surd.clone(), Rational::zero()),
            (None, Some(d)) => (Some(d.clone()), Rational::zero(), other.surd.clone()),
            (Some(d1), Some(d2)) if d1 == d2 => {
                (Some(d1.clone()), self.surd.clone(), other.surd.clone())
            }
            (Some(d1), Some(d2)) => {
                let prod = d1 * d2;
                let root = prod.sqrt();
                assert!(
                    &root * &root == prod,
                    "mixing incompatible quadratic extensions sqrt({d1}) and sqrt({d2})"
                );
                // √d2 = (root/d1)·√d1
                let factor = Rational::new(root, d1.clone());
                (Some(d1.clone()), self.surd.clone(), &other.surd * factor)
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<&Rational> for Scalar {
    fn from(r: &Rational) -> Self {
        Scalar::from_rational(r.clone())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let (d, b1, b2) = self.aligned(rhs);
        Scalar::canonical(&self.rational + &rhs.rational, b1 + b2, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let (d, b1, b2) = self.aligned(rhs);
        Scalar::canonical(&self.rational - &rhs.rational, b1 - b2, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let (d, b1, b2) = self.aligned(rhs);
        let a1 = &self.rational;
        let a2 = &rhs.rational;
        let dd = d
            .as_ref()
            .map(|d| Rational::from_integer(d.clone()))
            .unwrap_or_else(Rational::zero);
        let rational = a1 * a2 + &b1 * &b2 * dd;
        let surd = a1 * &b2 + a2 * &b1;
        Scalar::canonical(rational, surd, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("division of a scalar by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::canonical(-self.rational.clone(), -self.surd.clone(), self.radicand.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar { (&self).$method(&rhs) }
        }
        impl<'a> $imp<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar { (&self).$method(rhs) }
        }
        impl<'a> $imp<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = &self.radicand else {
            return f.write_str(&format_rational(&self.rational));
        };
        let term = if self.surd.is_one() {
            format!("sqrt({d})")
        } else if (-self.surd.clone()).is_one() {
            format!("-sqrt({d})")
        } else {
            format!("{}*sqrt({d})", format_rational(&self.surd))
        };
        if self.rational.is_zero() {
            f.write_str(&term)
        } else if term.starts_with('-') {
            write!(f, "{}{}", format_rational(&self.rational), term)
        } else {
            write!(f, "{}+{}", format_rational(&self.rational), term)
        }
    }
}

impl FromStr for Scalar {
    type Err = SeriesError;

    /// Accepts the forms produced by `Display`: `p/q`, `sqrt(d)`,
    /// `c*sqrt(d)` and `a±c*sqrt(d)`.
    fn from_str(text: &str) -> Result<Self, SeriesError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || SeriesError::Parse(text.to_string());
        let Some(idx) = s.find("sqrt(") else {
            return parse_rational(&s).map(Scalar::from_rational);
        };
        let inner = s[idx + 5..].strip_suffix(')').ok_or_else(bad)?;
        let root = Scalar::sqrt_rational(&parse_rational(inner)?).ok_or_else(bad)?;
        let head = &s[..idx];
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (rational_text, coeff_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let rational = if rational_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(rational_text)?
        };
        let coeff_text = coeff_text.strip_suffix('*').unwrap_or(coeff_text);
        let coeff = match coeff_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t)?,
        };
        Ok(&Scalar::from_rational(rational) + &root.scale(&coeff))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde helpers for `Rational` fields stored as `"p/q"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Floor of a rational as an `i64`.
pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("integer part out of range")
}

/// Integer `n` such that `r == n`, if any.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// Whether `r` has denominator dividing `d`.
pub fn has_denominator_dividing(r: &Rational, d: i64) -> bool {
    BigInt::from(d).is_multiple_of(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "3", "-7/2", "5/12"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn sqrt_pulls_out_squares() {
        assert_eq!(Scalar::sqrt_rational(&rat(9, 4)).unwrap(), Scalar::from_rational(rat(3, 2)));
        let r = Scalar::sqrt_rational(&rat(2, 3)).unwrap();
        assert_eq!(r.radicand().unwrap(), &BigInt::from(6));
        assert_eq!(r.surd_part(), &rat(1, 3));
        assert_eq!(&r * &r, Scalar::from_rational(rat(2, 3)));
        let r = Scalar::sqrt_rational(&int(12)).unwrap();
        assert_eq!(r.to_string(), "2*sqrt(3)");
    }

    #[test]
    fn exact_sign_of_mixed_terms() {
        assert!(q("3-2*sqrt(2)").is_positive());
        assert!(q("1-sqrt(2)").is_negative());
        assert!(q("-3+2*sqrt(2)").is_negative());
        assert!(q("-1+sqrt(2)").is_positive());
    }

    #[test]
    fn field_operations() {
        let a = q("1+sqrt(2)");
        let b = a.recip().unwrap();
        assert_eq!(&a * &b, Scalar::one());
        assert_eq!(b, q("-1+sqrt(2)"));
        assert_eq!(&a / &a, Scalar::one());
        assert_eq!((&a - &a), Scalar::zero());
    }

    #[test]
    fn compatible_radicands_are_aligned() {
        // √8 normalizes to 2√2, so these live in the same extension
        let a = Scalar::with_surd(Rational::zero(), Rational::one(), &BigInt::from(8));
        let b = q("sqrt(2)");
        assert_eq!(&a - &(&b + &b), Scalar::zero());
    }

    #[test]
    #[should_panic(expected = "incompatible quadratic extensions")]
    fn incompatible_radicands_panic() {
        let _ = q("sqrt(2)") + q("sqrt(3)");
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["sqrt(6)", "-sqrt(6)", "1/3*sqrt(6)", "2-1/3*sqrt(6)", "-1/2+sqrt(5)", "7/3"] {
            assert_eq!(q(s).to_string(), s);
        }
    }
}
