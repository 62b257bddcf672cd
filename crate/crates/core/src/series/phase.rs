//! Exact phase values, branch intervals and polynomial phase functions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Complex, ComplexLaurentSeries, Rational, Scalar, SeriesError};

/// A real number of the form `Arg(z)/π + 2k` with `z` an exact nonzero
/// direction and `Arg ∈ (−π, π]`.
///
/// Every limit value of a phase function has this shape, and so does every
/// rational with denominator dividing 4. Comparison is exact.
#[derive(Clone, Debug)]
pub struct ExactPhase {
    dir: Complex<Scalar>,
    winding: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Sector {
    /// `Arg ∈ (−π, 0)`
    Lower,
    /// `Arg ∈ [0, π)`
    Upper,
    /// `Arg = π`
    Negative,
}

fn sector(z: &Complex<Scalar>) -> Sector {
    match z.im.signum() {
        Ordering::Less => Sector::Lower,
        Ordering::Greater => Sector::Upper,
        Ordering::Equal if z.re.is_positive() => Sector::Upper,
        Ordering::Equal => Sector::Negative,
    }
}

/// Compares principal arguments of two nonzero directions.
fn cmp_arg(a: &Complex<Scalar>, b: &Complex<Scalar>) -> Ordering {
    let (sa, sb) = (sector(a), sector(b));
    if sa != sb {
        return sa.cmp(&sb);
    }
    if sa == Sector::Negative {
        return Ordering::Equal;
    }
    // within a half-plane, b is counterclockwise of a iff a × b > 0
    let cross = &(&a.re * &b.im) - &(&a.im * &b.re);
    cross.signum().reverse()
}

impl ExactPhase {
    /// The phase `Arg(dir)/π + 2·winding`. Panics on a zero direction.
    pub fn new(dir: Complex<Scalar>, winding: i64) -> Self {
        assert!(!dir.is_zero(), "phase of the zero direction");
        ExactPhase { dir, winding }
    }

    /// Principal phase of a nonzero direction, in `(−1, 1]`.
    pub fn principal(dir: Complex<Scalar>) -> Self {
        Self::new(dir, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_quarter(&super::int(n)).expect("integers are quarter multiples")
    }

    /// The phase equal to a rational with denominator dividing 4.
    pub fn from_quarter(r: &Rational) -> Option<Self> {
        let t = r * Rational::from_integer(BigInt::from(4));
        if !t.is_integer() {
            return None;
        }
        let t = t.to_integer().to_i64()?;
        let m = t.mod_floor(&8);
        let (re, im) = match m {
            0 => (1, 0),
            1 => (1, 1),
            2 => (0, 1),
            3 => (-1, 1),
            4 => (-1, 0),
            5 => (-1, -1),
            6 => (0, -1),
            _ => (1, -1),
        };
        let base = if m <= 4 { m } else { m - 8 };
        let winding = (t - base) / 8;
        Some(ExactPhase::new(
            Complex::new(Scalar::from_int(re), Scalar::from_int(im)),
            winding,
        ))
    }

    pub fn direction(&self) -> &Complex<Scalar> {
        &self.dir
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    /// `self + n`: rotating by `nπ` flips the direction for odd `n`.
    pub fn add_integer(&self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            return ExactPhase { dir: self.dir.clone(), winding: self.winding + n / 2 };
        }
        let flipped = self.dir.negated();
        // Arg(−z) = Arg(z) + 1 for Arg(z) ∈ (−1, 0], and Arg(z) − 1 otherwise
        let gains = self.dir.im.is_negative() || (self.dir.im.is_zero() && self.dir.re.is_positive());
        let k = if gains { self.winding + (n - 1) / 2 } else { self.winding + (n + 1) / 2 };
        ExactPhase { dir: flipped, winding: k }
    }

    /// The rational value, when the direction is a multiple of `π/4`.
    pub fn as_rational(&self) -> Option<Rational> {
        let (re, im) = (&self.dir.re, &self.dir.im);
        let quarters = if im.is_zero() {
            if re.is_positive() { 0 } else { 4 }
        } else if re.is_zero() {
            if im.is_positive() { 2 } else { -2 }
        } else if re == im {
            if re.is_positive() { 1 } else { -3 }
        } else if *re == -im {
            if re.is_positive() { -1 } else { 3 }
        } else {
            return None;
        };
        Some(Rational::new(BigInt::from(quarters + 8 * self.winding), BigInt::from(4)))
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        self.dir.to_f64().arg() / std::f64::consts::PI + 2.0 * self.winding as f64
    }

    /// Canonical text: `p/q` when rational, else `arg(re,im)+2k`.
    pub fn describe(&self) -> String {
        match self.as_rational() {
            Some(r) => format_rational(&r),
            None => {
                let base = format!("arg({},{})/pi", self.dir.re, self.dir.im);
                if self.winding == 0 {
                    base
                } else {
                    format!("{base}+{}", 2 * self.winding)
                }
            }
        }
    }
}

impl PartialEq for ExactPhase {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactPhase {}

impl PartialOrd for ExactPhase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactPhase {
    fn cmp(&self, other: &Self) -> Ordering {
        self.winding
            .cmp(&other.winding)
            .then_with(|| cmp_arg(&self.dir, &other.dir))
    }
}

impl fmt::Display for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Half-open interval `(lower, upper]` of phase values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseInterval {
    lower: ExactPhase,
    upper: ExactPhase,
}

impl PhaseInterval {
    pub fn new(lower: ExactPhase, upper: ExactPhase) -> Result<Self, SeriesError> {
        if lower >= upper {
            return Err(SeriesError::BadInterval(format!("({lower}, {upper}]")));
        }
        Ok(PhaseInterval { lower, upper })
    }

    /// `(a, b]` for rationals with denominators dividing 4.
    pub fn from_quarters(a: &Rational, b: &Rational) -> Result<Self, SeriesError> {
        let bad = || SeriesError::BadInterval(format!("({}, {}]", format_rational(a), format_rational(b)));
        let lo = ExactPhase::from_quarter(a).ok_or_else(bad)?;
        let hi = ExactPhase::from_quarter(b).ok_or_else(bad)?;
        Self::new(lo, hi)
    }

    /// `(a, a + len]`.
    pub fn starting_at(a: &Rational, len: i64) -> Result<Self, SeriesError> {
        Self::from_quarters(a, &(a + super::int(len)))
    }

    /// Parses `a,b` into `(a, b]`.
    pub fn parse(text: &str) -> Result<Self, SeriesError> {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| SeriesError::BadInterval(text.to_string()))?;
        Self::from_quarters(&parse_rational(a)?, &parse_rational(b)?)
    }

    pub fn lower(&self) -> &ExactPhase {
        &self.lower
    }

    pub fn upper(&self) -> &ExactPhase {
        &self.upper
    }

    pub fn contains(&self, p: &ExactPhase) -> bool {
        &self.lower < p && p <= &self.upper
    }

    pub fn shifted(&self, n: i64) -> Self {
        PhaseInterval { lower: self.lower.add_integer(n), upper: self.upper.add_integer(n) }
    }
}

impl fmt::Display for PhaseInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lower, self.upper)
    }
}

/// The germ of `φ` at `v = ∞` with `z(v) ∈ ℝ_{>0}·e^{iπφ(v)}`, stored as
/// the witness `z` and the exact limit `φ(∞)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFunction {
    witness: ComplexLaurentSeries,
    limit: ExactPhase,
}

impl PhaseFunction {
    /// Pairs a witness with a limit value; the limit must point along the
    /// leading coefficient.
    pub fn new(witness: ComplexLaurentSeries, limit: ExactPhase) -> Result<Self, SeriesError> {
        let (_, lead) = witness.leading_term()?;
        if cmp_arg(&lead, limit.direction()) != Ordering::Equal {
            return Err(SeriesError::LimitMismatch(limit.describe()));
        }
        Ok(PhaseFunction { witness, limit })
    }

    /// Phase function of a constant quarter-turn value, witnessed by the
    /// corresponding unit direction.
    pub fn constant(r: &Rational) -> Option<Self> {
        let limit = ExactPhase::from_quarter(r)?;
        let dir = limit.direction().clone();
        Some(PhaseFunction {
            witness: ComplexLaurentSeries::from_scalars(dir.re, dir.im),
            limit,
        })
    }

    pub fn witness(&self) -> &ComplexLaurentSeries {
        &self.witness
    }

    pub fn limit_value(&self) -> &ExactPhase {
        &self.limit
    }

    /// `φ + n`, witnessed by `(−1)^n·z`.
    pub fn add_integer(&self, n: i64) -> Self {
        let witness = if n.rem_euclid(2) == 0 { self.witness.clone() } else { self.witness.negated() };
        PhaseFunction { witness, limit: self.limit.add_integer(n) }
    }

    /// Numeric value of the germ at `v`, continuous with the limit.
    pub fn eval_at_f64(&self, v: f64) -> f64 {
        let z = self.witness.eval_at_f64(v).value;
        let lim = self.limit.to_f64();
        let principal = z.arg() / std::f64::consts::PI;
        // pick the representative nearest to the limit
        principal + 2.0 * ((lim - principal) / 2.0).round()
    }
}

/// Phase function of `z` whose germ lies in `hint`.
///
/// Membership is decided on the germ, not the limit: a limit on the lower
/// endpoint is admissible when the germ approaches it from above, and one
/// on the upper endpoint when the germ does not exceed it.
pub fn phase_of(z: &ComplexLaurentSeries, hint: &PhaseInterval) -> Result<PhaseFunction, SeriesError> {
    let (_, lead) = z.leading_term()?;
    let base = ExactPhase::principal(lead);
    let start = ((hint.lower().to_f64() - base.to_f64()) / 2.0).floor() as i64;
    let mut hits = Vec::new();
    for j in start - 1..=start + 2 {
        let p = base.add_integer(2 * j);
        if p < *hint.lower() || p > *hint.upper() {
            continue;
        }
        let germ = PhaseFunction { witness: z.clone(), limit: p };
        let above_lower = compare_phase(&germ, &endpoint(hint.lower()))? == PhaseOrdering::Gt;
        let below_upper = compare_phase(&germ, &endpoint(hint.upper()))? != PhaseOrdering::Gt;
        if above_lower && below_upper {
            hits.push(germ);
        }
    }
    match hits.len() {
        0 => Err(SeriesError::EmptyBranch(hint.to_string())),
        1 => Ok(hits.pop().unwrap()),
        _ => Err(SeriesError::AmbiguousBranch(hint.to_string())),
    }
}

/// The constant germ at an exact phase value.
fn endpoint(p: &ExactPhase) -> PhaseFunction {
    let dir = p.direction().clone();
    PhaseFunction { witness: ComplexLaurentSeries::from_scalars(dir.re, dir.im), limit: p.clone() }
}

/// Outcome of comparing phase germs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PhaseOrdering {
    Lt,
    Eq,
    Gt,
}

impl From<Ordering> for PhaseOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => PhaseOrdering::Lt,
            Ordering::Equal => PhaseOrdering::Eq,
            Ordering::Greater => PhaseOrdering::Gt,
        }
    }
}

impl From<PhaseOrdering> for Ordering {
    fn from(o: PhaseOrdering) -> Self {
        match o {
            PhaseOrdering::Lt => Ordering::Less,
            PhaseOrdering::Eq => Ordering::Equal,
            PhaseOrdering::Gt => Ordering::Greater,
        }
    }
}

/// Eventual comparison of two phase germs.
///
/// Distinct limits decide directly. With equal limits the quotient
/// `z1/z2` tends to a positive real, and `φ1 − φ2` has the sign of its
/// imaginary part; since `z1/z2 = z1·conj(z2)/|z2|²` with `|z2|² ≻ 0`,
/// that is the sign of `Im(z1·conj(z2))`, which avoids a series inverse.
pub fn compare_phase(a: &PhaseFunction, b: &PhaseFunction) -> Result<PhaseOrdering, SeriesError> {
    match a.limit.cmp(&b.limit) {
        Ordering::Equal => {}
        o => return Ok(o.into()),
    }
    let z1 = &a.witness;
    let z2 = &b.witness;
    let cross = &(&z1.im * &z2.re) - &(&z1.re * &z2.im);
    match cross.leading() {
        Some((_, c)) => Ok(c.signum().into()),
        None if cross.is_exact() => Ok(PhaseOrdering::Eq),
        None => Err(SeriesError::Indeterminate),
    }
}

/// Wire form of a phase limit: canonical rational text when available.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseJson {
    pub limit: String,
    pub approx: f64,
}

impl From<&ExactPhase> for PhaseJson {
    fn from(p: &ExactPhase) -> Self {
        PhaseJson { limit: p.describe(), approx: p.to_f64() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat, LaurentSeries};

    fn cz(re: LaurentSeries, im: LaurentSeries) -> ComplexLaurentSeries {
        Complex::new(re, im)
    }

    fn c(n: i64) -> LaurentSeries {
        LaurentSeries::constant(Scalar::from_int(n))
    }

    fn zero_two() -> PhaseInterval {
        PhaseInterval::from_quarters(&int(0), &int(2)).unwrap()
    }

    #[test]
    fn quarter_phases_round_trip() {
        for t in -20..20 {
            let r = rat(t, 4);
            let p = ExactPhase::from_quarter(&r).unwrap();
            assert_eq!(p.as_rational(), Some(r.clone()), "t = {t}");
            assert_eq!(p.add_integer(1).as_rational(), Some(&r + int(1)));
            assert_eq!(p.add_integer(-3).as_rational(), Some(&r - int(3)));
        }
    }

    #[test]
    fn exact_order_agrees_with_floats() {
        let dirs = [(3, 1), (-2, 5), (-1, -7), (4, -1), (-3, 0), (2, 0)];
        let phases: Vec<ExactPhase> = dirs
            .iter()
            .flat_map(|&(a, b)| {
                (-2..=2).map(move |k| {
                    ExactPhase::new(Complex::new(Scalar::from_int(a), Scalar::from_int(b)), k)
                })
            })
            .collect();
        for p in &phases {
            for q in &phases {
                let expected = p.to_f64().partial_cmp(&q.to_f64()).unwrap();
                assert_eq!(p.cmp(q), expected, "{p} vs {q}");
            }
        }
    }

    #[test]
    fn phase_of_examples() {
        let i = cz(c(0), c(1));
        assert_eq!(phase_of(&i, &zero_two()).unwrap().limit_value().as_rational(), Some(rat(1, 2)));
        let m1 = cz(c(-1), c(0));
        assert_eq!(phase_of(&m1, &zero_two()).unwrap().limit_value().as_rational(), Some(int(1)));
        let z = cz(LaurentSeries::w(), c(1));
        let p = phase_of(&z, &zero_two()).unwrap();
        assert_eq!(p.limit_value().as_rational(), Some(rat(1, 2)));
        assert!(p.eval_at_f64(1e6) < 0.5);
    }

    #[test]
    fn empty_branch_is_an_error() {
        let one = cz(c(3), c(0));
        let hint = PhaseInterval::from_quarters(&rat(1, 4), &rat(5, 4)).unwrap();
        assert!(matches!(phase_of(&one, &hint), Err(SeriesError::EmptyBranch(_))));
    }

    #[test]
    fn compare_phase_examples() {
        let br = zero_two();
        let a = phase_of(&cz(LaurentSeries::w(), c(1)), &br).unwrap();
        let b = phase_of(&cz(c(0), c(1)), &br).unwrap();
        assert_eq!(compare_phase(&a, &b).unwrap(), PhaseOrdering::Lt);
        assert_eq!(compare_phase(&b, &b.add_integer(1)).unwrap(), PhaseOrdering::Lt);
        let b2 = phase_of(&cz(c(0), c(2)), &br).unwrap();
        assert_eq!(compare_phase(&b2, &b).unwrap(), PhaseOrdering::Eq);
    }

    #[test]
    fn compare_phase_reports_indeterminate() {
        let br = zero_two();
        let t = LaurentSeries::from_ints(0, &[1], Some(3));
        let z = LaurentSeries::from_ints(0, &[], Some(3));
        let a = phase_of(&cz(z.clone(), t.clone()), &br).unwrap();
        let b = phase_of(&cz(z, t), &br).unwrap();
        assert_eq!(compare_phase(&a, &b), Err(SeriesError::Indeterminate));
    }
}
