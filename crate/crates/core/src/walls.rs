//! Numerical mini-walls for two one-parameter families: the large-volume
//! ray `β·ω̃` with B-field `lf`, and the hyperbola `ω = u(v)(Θ + mf) + vf`
//! with B-field `qf`.
//!
//! A wall for a target `γ` is a parameter where `S(γ′; γ)` changes sign
//! for some candidate `γ′`, i.e. the phases of `γ′` and `γ` cross. This is
//! the usual numerical superset of actual walls: the lattice cannot see
//! which candidates are realized by subobjects.


use num_traits::{Signed as _, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charges::omega_tilde;
use crate::lattice::{pair, ChernClass, Divisor, DivisorRF, LatticeError, SurfaceGeometry};
use crate::patching::{solve_uv_exact, solve_uv_numeric, PatchConstants, PatchError};
use crate::series::{int, rat, Complex, Rational, Scalar};
use crate::transform::phi;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WallError {
    #[error("target class is zero")]
    ZeroTarget,
    #[error("candidate box radius {0} is empty")]
    EmptyBounds(i64),
    #[error("bad interval: {0}")]
    BadInterval(String),
    #[error(transparent)]
    Patch(#[from] PatchError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallFamily {
    Ray,
    Hyperbola,
}

/// One of the two scanned families, with its constants and B-fields tied
/// by `l = e/2 + q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityFamily {
    kind: WallFamily,
    consts: PatchConstants,
    geom: SurfaceGeometry,
    l: Rational,
}

impl StabilityFamily {
    pub fn new(kind: WallFamily, consts: PatchConstants, l: Rational) -> Result<Self, WallError> {
        let geom = SurfaceGeometry::new(consts.e().clone(), consts.m().clone())?;
        Ok(StabilityFamily { kind, consts, geom, l })
    }

    pub fn from_q(kind: WallFamily, consts: PatchConstants, q: &Rational) -> Result<Self, WallError> {
        let l = consts.e() * rat(1, 2) + q;
        Self::new(kind, consts, l)
    }

    pub fn with_kind(&self, kind: WallFamily) -> Self {
        StabilityFamily { kind, ..self.clone() }
    }

    pub fn kind(&self) -> WallFamily {
        self.kind
    }

    pub fn consts(&self) -> &PatchConstants {
        &self.consts
    }

    pub fn geometry(&self) -> &SurfaceGeometry {
        &self.geom
    }

    pub fn l(&self) -> &Rational {
        &self.l
    }

    pub fn q(&self) -> Rational {
        &self.l - self.consts.e() * rat(1, 2)
    }

    /// `lf` on the ray, `qf` on the hyperbola.
    pub fn b_field(&self) -> DivisorRF {
        match self.kind {
            WallFamily::Ray => DivisorRF::fiber_multiple(self.l.clone()),
            WallFamily::Hyperbola => DivisorRF::fiber_multiple(self.q()),
        }
    }

    /// Ray data `(I, W)` with `Z_β = −s_B + β²W·n + iβ·I`.
    fn ray_parts(&self, gamma: &ChernClass) -> RayParts {
        let wt = omega_tilde(self.consts.alpha(), &self.geom);
        let tw = gamma.twist(&self.b_field(), &self.geom);
        RayParts {
            n: tw.n.clone(),
            s: tw.s.clone(),
            im: tw.dot_ch1(&wt, &self.geom),
        }
    }

    fn w(&self) -> Rational {
        let wt = omega_tilde(self.consts.alpha(), &self.geom);
        pair(&wt, &wt, &self.geom) * rat(1, 2)
    }

    fn numeric(&self, gamma: &ChernClass) -> NumClass {
        let tw = gamma.twist(&self.b_field(), &self.geom);
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        NumClass { n: f(&tw.n), x: f(&tw.x), y: f(&tw.y), s: f(&tw.s) }
    }

    /// Floating charge at a parameter (`β` or `v`).
    pub fn charge_f64(&self, gamma: &ChernClass, param: f64) -> Result<Complex<f64>, WallError> {
        let at = self.evaluator(param)?;
        Ok(at.charge(&self.numeric(gamma)))
    }

    fn evaluator(&self, param: f64) -> Result<Evaluator, WallError> {
        let e = self.consts.e().to_f64().unwrap_or(f64::NAN);
        let m = self.consts.m().to_f64().unwrap_or(f64::NAN);
        let omega = match self.kind {
            WallFamily::Ray => {
                let wt = omega_tilde(self.consts.alpha(), &self.geom);
                let p = wt.p.to_f64().unwrap_or(f64::NAN);
                let q = wt.q.to_f64().unwrap_or(f64::NAN);
                (param * p, param * q)
            }
            WallFamily::Hyperbola => {
                let u = solve_uv_numeric(&self.consts, param)?.u;
                (u, u * m + param)
            }
        };
        Ok(Evaluator { e, omega })
    }

    /// Exact hyperbola polarization at rational `v`.
    fn hyperbola_omega_exact(&self, v: &Rational) -> Result<Divisor<Scalar>, WallError> {
        let u = solve_uv_exact(&self.consts, v)?.u;
        Ok(Divisor::new(u.clone(), &u.scale(self.consts.m()) + &Scalar::from_rational(v.clone())))
    }

    /// Transported Bogomolov bound: `Δ ≥ 0` on the ray and
    /// `Δ ≥ e(n² − d²)` on the hyperbola.
    pub fn bogomolov(&self, gamma: &ChernClass) -> bool {
        let delta = gamma.discriminant(&self.geom);
        match self.kind {
            WallFamily::Ray => !delta.is_negative(),
            WallFamily::Hyperbola => {
                let d = gamma.d();
                delta >= self.consts.e() * (&gamma.n * &gamma.n - &d * &d)
            }
        }
    }
}

struct RayParts {
    n: Rational,
    s: Rational,
    im: Rational,
}

#[derive(Clone, Copy, Debug)]
struct NumClass {
    n: f64,
    x: f64,
    y: f64,
    s: f64,
}

/// `ω = pΘ + qf` as floats.
struct Evaluator {
    e: f64,
    omega: (f64, f64),
}

impl Evaluator {
    fn charge(&self, c: &NumClass) -> Complex<f64> {
        let (p, q) = self.omega;
        let omega_sq = -self.e * p * p + 2.0 * p * q;
        let dot = -self.e * p * c.x + p * c.y + q * c.x;
        Complex::new(-c.s + omega_sq / 2.0 * c.n, dot)
    }
}

/// `S(γ′; γ) = Re Z(γ)·Im Z(γ′) − Im Z(γ)·Re Z(γ′)`, positive when `γ′` has
/// the larger phase.
fn weight(z_sub: &Complex<f64>, z_target: &Complex<f64>) -> f64 {
    z_target.re * z_sub.im - z_target.im * z_sub.re
}

/// Integral classes with `xi2 = 0` and `|n|, |x|, |y|, |s| ≤ radius`, with
/// `0 ≤ Im Z(γ′) ≤ Im Z(γ)` at `sample` (ignored on the ray, whose
/// imaginary parts scale uniformly) and the family's Bogomolov bound on
/// both `γ′` and `γ − γ′`.
///
/// Integrality means `n, x, y ∈ ℤ` and `s + e·x²/2 ∈ ℤ`. Both members of
/// a complementary pair are kept; walls are deduplicated later.
pub fn candidate_classes(
    target: &ChernClass,
    family: &StabilityFamily,
    radius: i64,
    sample: &Rational,
) -> Result<Vec<ChernClass>, WallError> {
    if target.is_zero() {
        return Err(WallError::ZeroTarget);
    }
    if radius < 0 {
        return Err(WallError::EmptyBounds(radius));
    }
    let omega = match family.kind {
        WallFamily::Ray => None,
        WallFamily::Hyperbola => Some(family.hyperbola_omega_exact(sample)?),
    };
    let b = family.b_field();
    let im_of = |g: &ChernClass| -> Result<Scalar, WallError> {
        match &omega {
            None => Ok(Scalar::from_rational(family.ray_parts(g).im)),
            Some(w) => Ok(g.twist(&b, &family.geom).dot_ch1(w, &family.geom)),
        }
    };
    let im_target = im_of(target)?;
    let e = family.consts.e().clone();
    let coords: Vec<(i64, i64, i64)> = (-radius..=radius)
        .flat_map(|n| (-radius..=radius).flat_map(move |x| (-radius..=radius).map(move |y| (n, x, y))))
        .collect();
    let mut out: Vec<ChernClass> = coords
        .par_iter()
        .map(|&(n, x, y)| -> Result<Vec<ChernClass>, WallError> {
            let offset = -(&e * int(x * x)) * rat(1, 2);
            let frac = &offset - offset.floor();
            let mut found = Vec::new();
            let lo = (int(-radius) - &frac).ceil().to_integer().to_i64().unwrap_or(0);
            let hi = (int(radius) - &frac).floor().to_integer().to_i64().unwrap_or(-1);
            for j in lo..=hi {
                let s = &frac + int(j);
                let g = ChernClass::new(int(n), int(x), int(y), int(0), s);
                if g.is_zero() || g == *target {
                    continue;
                }
                let im = im_of(&g)?;
                if im.is_negative() || im > im_target {
                    continue;
                }
                let rest = target.checked_sub(&g)?;
                if family.bogomolov(&g) && family.bogomolov(&rest) {
                    found.push(g);
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Wall {
    pub param: f64,
    /// Exact value when known (ray walls sit at `β = √r`).
    pub param_exact: Option<String>,
    pub destabilizer: ChernClass,
    pub target: ChernClass,
}

/// The smaller of `γ′` and `γ − γ′`, which have the same walls since
/// `S(γ − γ′; γ) = −S(γ′; γ)`.
fn pair_key(target: &ChernClass, g: &ChernClass) -> ChernClass {
    match target.checked_sub(g) {
        Ok(rest) if rest < *g => rest,
        _ => g.clone(),
    }
}

fn dedup_pairs(target: &ChernClass, candidates: &[ChernClass]) -> Vec<ChernClass> {
    let mut keys: Vec<ChernClass> = candidates.iter().map(|g| pair_key(target, g)).collect();
    keys.sort();
    keys.dedup();
    keys
}

fn sort_walls(walls: &mut [Wall]) {
    walls.sort_by(|a, b| a.param.total_cmp(&b.param).then_with(|| a.destabilizer.cmp(&b.destabilizer)));
}

/// Ray walls in closed form: `S = β·(P + β²Q)` with
/// `P = I(γ)s′ − I(γ′)s` and `Q = W(n·I(γ′) − n′·I(γ))`.
fn ray_root(family: &StabilityFamily, target: &ChernClass, g: &ChernClass) -> Option<Rational> {
    let (p, q) = ray_coefficients(family, g, target);
    if q.is_zero() {
        return None;
    }
    let r = -p / q;
    r.is_positive().then_some(r)
}

/// `S(γ′; γ)` at a parameter.
pub fn weight_at(family: &StabilityFamily, sub: &ChernClass, target: &ChernClass, param: f64) -> Result<f64, WallError> {
    let ev = family.evaluator(param)?;
    Ok(weight(&ev.charge(&family.numeric(sub)), &ev.charge(&family.numeric(target))))
}

pub fn grid_linear(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|j| a + (b - a) * j as f64 / (n - 1) as f64).collect(),
    }
}

/// Log-spaced grid from `a` to `b` with a fixed number of points per decade.
pub fn grid_log(a: f64, b: f64, per_decade: usize) -> Vec<f64> {
    let decades = (b / a).log10();
    let n = ((decades * per_decade as f64).ceil() as usize).max(1);
    (0..=n).map(|j| a * 10f64.powf(decades * j as f64 / n as f64)).collect()
}

fn check_interval(a: f64, b: f64) -> Result<(), WallError> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(WallError::BadInterval(format!("[{a}, {b}]")));
    }
    Ok(())
}

/// Walls of `target` in `[a, b]` against the given candidates.
///
/// Ray walls are exact square roots. Hyperbola walls are sign changes of
/// `S` on a linear grid of `grid_size` points, bisected to relative width
/// `1e−10`.
pub fn find_walls(
    target: &ChernClass,
    family: &StabilityFamily,
    candidates: &[ChernClass],
    interval: (f64, f64),
    grid_size: usize,
) -> Result<Vec<Wall>, WallError> {
    check_interval(interval.0, interval.1)?;
    match family.kind {
        WallFamily::Ray => Ok(ray_walls(target, family, candidates, interval)),
        WallFamily::Hyperbola => scan_walls(target, family, candidates, &grid_linear(interval.0, interval.1, grid_size.max(2))),
    }
}

fn ray_walls(target: &ChernClass, family: &StabilityFamily, candidates: &[ChernClass], (a, b): (f64, f64)) -> Vec<Wall> {
    let mut walls: Vec<Wall> = dedup_pairs(target, candidates)
        .par_iter()
        .filter_map(|g| {
            let r = ray_root(family, target, g)?;
            let beta = r.to_f64()?.sqrt();
            (a <= beta && beta <= b).then(|| Wall {
                param: beta,
                param_exact: Some(Scalar::sqrt_rational(&r).expect("positive").to_string()),
                destabilizer: g.clone(),
                target: target.clone(),
            })
        })
        .collect();
    sort_walls(&mut walls);
    walls
}

/// Sign changes of `S` between consecutive grid points, bisected.
pub fn scan_walls(
    target: &ChernClass,
    family: &StabilityFamily,
    candidates: &[ChernClass],
    grid: &[f64],
) -> Result<Vec<Wall>, WallError> {
    let evals = grid.iter().map(|&p| family.evaluator(p)).collect::<Result<Vec<_>, _>>()?;
    let t = family.numeric(target);
    let keys = dedup_pairs(target, candidates);
    let mut walls: Vec<Wall> = keys
        .par_iter()
        .flat_map_iter(|g| {
            let c = family.numeric(g);
            let s: Vec<f64> = evals.iter().map(|ev| weight(&ev.charge(&c), &ev.charge(&t))).collect();
            let mut found = Vec::new();
            for i in 0..grid.len().saturating_sub(1) {
                let (s0, s1) = (s[i], s[i + 1]);
                if s0 == 0.0 {
                    // an exact grid hit is a wall when the neighbours disagree
                    if i > 0 && s[i - 1] * s1 < 0.0 {
                        found.push(grid[i]);
                    }
                    continue;
                }
                if s0 * s1 < 0.0 {
                    found.push(bisect(family, &c, &t, grid[i], grid[i + 1], s0));
                }
            }
            found.into_iter().map(|p| Wall {
                param: p,
                param_exact: None,
                destabilizer: g.clone(),
                target: target.clone(),
            })
        })
        .collect();
    sort_walls(&mut walls);
    Ok(walls)
}

fn bisect(family: &StabilityFamily, c: &NumClass, t: &NumClass, mut lo: f64, mut hi: f64, s_lo: f64) -> f64 {
    let f = |p: f64| {
        let ev = family.evaluator(p).expect("positive parameter");
        weight(&ev.charge(c), &ev.charge(t))
    };
    let sign_lo = s_lo.signum();
    while hi - lo > 1e-10 * hi.abs().max(f64::MIN_POSITIVE) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = f(mid);
        if s == 0.0 {
            return mid;
        }
        if s.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallMatch {
    pub ray_beta: f64,
    pub hyperbola_v: f64,
    pub beta_of_v: f64,
    pub relative_error: f64,
    pub destabilizer: ChernClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    /// Rational `v` samples where the two signs were compared exactly.
    pub samples: usize,
    pub sign_mismatches: usize,
    pub ray_walls: Vec<Wall>,
    pub hyperbola_walls: Vec<Wall>,
    pub matches: Vec<WallMatch>,
    pub unmatched: usize,
    pub max_relative_error: f64,
    pub pass: bool,
}

pub const MATCH_TOLERANCE: f64 = 1e-8;

/// Compares the ray family at `β(v)` on `γ′, γ` with the hyperbola family at
/// `v` on `Φγ′, Φγ`.
///
/// The two weights differ by the factor `αu/β > 0`, so their signs are
/// compared exactly at `samples` rational points of `[v_lo, v_hi]`. Walls
/// are then found on both sides and matched through `β(v)`.
pub fn correspondence_check(
    target: &ChernClass,
    ray: &StabilityFamily,
    candidates: &[ChernClass],
    v_interval: (&Rational, &Rational),
    samples: usize,
    grid_size: usize,
) -> Result<CorrespondenceReport, WallError> {
    let (v_lo, v_hi) = v_interval;
    if !(v_lo.is_positive() && v_lo < v_hi) {
        return Err(WallError::BadInterval(format!("[{v_lo}, {v_hi}]")));
    }
    let ray = ray.with_kind(WallFamily::Ray);
    let hyp = ray.with_kind(WallFamily::Hyperbola);
    let geom = ray.geometry();
    let keys = dedup_pairs(target, candidates);
    let phi_target = phi(target, geom);
    let phi_cands: Vec<ChernClass> = keys.iter().map(|g| phi(g, geom)).collect();

    let steps = samples.max(2) - 1;
    let vs: Vec<Rational> = (0..=steps)
        .map(|j| v_lo + (v_hi - v_lo) * rat(j as i64, steps as i64))
        .collect();
    let ray_coeffs: Vec<(Rational, Rational)> = keys.iter().map(|g| ray_coefficients(&ray, g, target)).collect();
    let hb = hyp.b_field();
    let phi_twisted: Vec<ChernClass> = phi_cands.iter().map(|g| g.twist(&hb, geom)).collect();
    let phi_target_twisted = phi_target.twist(&hb, geom);
    let mismatches: usize = vs
        .par_iter()
        .map(|v| -> Result<usize, WallError> {
            let sol = solve_uv_exact(ray.consts(), v)?;
            let omega = hyp.hyperbola_omega_exact(v)?;
            let zt = untwisted_charge(&phi_target_twisted, &omega, geom);
            let bad = ray_coeffs
                .iter()
                .zip(&phi_twisted)
                .filter(|((p, q), pg)| {
                    let ray_sign = (&Scalar::from_rational(p.clone()) + &sol.beta_sq.scale(q)).signum();
                    let zs = untwisted_charge(pg, &omega, geom);
                    let hyp_sign = (&(&zt.re * &zs.im) - &(&zt.im * &zs.re)).signum();
                    ray_sign != hyp_sign
                })
                .count();
            Ok(bad)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();

    let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let beta_lo = solve_uv_numeric(ray.consts(), f(v_lo))?.beta;
    let beta_hi = solve_uv_numeric(ray.consts(), f(v_hi))?.beta;
    let ray_walls = ray_walls(target, &ray, &keys, (beta_lo, beta_hi));
    let hyperbola_walls = scan_walls(&phi_target, &hyp, &phi_cands, &grid_linear(f(v_lo), f(v_hi), grid_size.max(2)))?;

    let mut used = vec![false; ray_walls.len()];
    let mut matches = Vec::new();
    for hw in &hyperbola_walls {
        let b = solve_uv_numeric(ray.consts(), hw.param)?.beta;
        let best = ray_walls
            .iter()
            .enumerate()
            .filter(|(i, rw)| {
                !used[*i]
                    && (phi(&rw.destabilizer, geom) == hw.destabilizer
                        || target.checked_sub(&rw.destabilizer).map(|r| phi(&r, geom)).as_ref() == Ok(&hw.destabilizer))
            })
            .map(|(i, rw)| (i, (rw.param - b).abs() / rw.param))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        if let Some((i, err)) = best {
            if err <= MATCH_TOLERANCE {
                used[i] = true;
                matches.push(WallMatch {
                    ray_beta: ray_walls[i].param,
                    hyperbola_v: hw.param,
                    beta_of_v: b,
                    relative_error: err,
                    destabilizer: ray_walls[i].destabilizer.clone(),
                });
            }
        }
    }
    let unmatched = ray_walls.len() + hyperbola_walls.len() - 2 * matches.len();
    let max_relative_error = matches.iter().map(|m| m.relative_error).fold(0.0, f64::max);
    Ok(CorrespondenceReport {
        samples: vs.len(),
        sign_mismatches: mismatches,
        pass: mismatches == 0 && unmatched == 0,
        ray_walls,
        hyperbola_walls,
        matches,
        unmatched,
        max_relative_error,
    })
}

/// `(P, Q)` with `S(γ′; γ)/β = P + β²Q` on the ray.
fn ray_coefficients(family: &StabilityFamily, g: &ChernClass, target: &ChernClass) -> (Rational, Rational) {
    let t = family.ray_parts(target);
    let c = family.ray_parts(g);
    let p = &t.im * &c.s - &c.im * &t.s;
    let q = family.w() * (&t.n * &c.im - &c.n * &t.im);
    (p, q)
}

/// `Z_{ω,0}` of an already twisted class.
fn untwisted_charge(tw: &ChernClass, omega: &Divisor<Scalar>, geom: &SurfaceGeometry) -> Complex<Scalar> {
    crate::charges::z_omega_b(tw, omega, &DivisorRF::zero(), geom)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub v_min: f64,
    pub v_max: f64,
    pub grid_points: usize,
    pub walls_found: usize,
    pub largest_wall: Option<f64>,
    pub note: &'static str,
}

pub const PROBE_NOTE: &str = "absence of walls in a finite scan is evidence, not proof";

/// Scans `[v_min, v_max]` on a log grid and reports the largest wall.
pub fn boundedness_probe(
    target: &ChernClass,
    family: &StabilityFamily,
    candidates: &[ChernClass],
    v_min: f64,
    v_max: f64,
    per_decade: usize,
) -> Result<ProbeReport, WallError> {
    check_interval(v_min, v_max)?;
    let grid = grid_log(v_min, v_max, per_decade.max(1));
    let walls = match family.kind {
        WallFamily::Ray => ray_walls(target, family, candidates, (v_min, v_max)),
        WallFamily::Hyperbola => scan_walls(target, family, candidates, &grid)?,
    };
    Ok(ProbeReport {
        v_min,
        v_max,
        grid_points: grid.len(),
        walls_found: walls.len(),
        largest_wall: walls.iter().map(|w| w.param).reduce(f64::max),
        note: PROBE_NOTE,
    })
}

/// One CSV row: parameter, `Z(γ)` and `S(γ′; γ)` for each candidate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotRow {
    pub param: f64,
    pub re_z: f64,
    pub im_z: f64,
    pub s: Vec<f64>,
}

pub fn plot_data(
    target: &ChernClass,
    family: &StabilityFamily,
    candidates: &[ChernClass],
    grid: &[f64],
) -> Result<Vec<PlotRow>, WallError> {
    let t = family.numeric(target);
    let cs: Vec<NumClass> = candidates.iter().map(|g| family.numeric(g)).collect();
    grid.iter()
        .map(|&p| {
            let ev = family.evaluator(p)?;
            let zt = ev.charge(&t);
            Ok(PlotRow {
                param: p,
                re_z: zt.re,
                im_z: zt.im,
                s: cs.iter().map(|c| weight(&ev.charge(c), &zt)).collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(kind: WallFamily, m: i64, alpha: i64, e: i64, l: Rational) -> StabilityFamily {
        StabilityFamily::new(kind, PatchConstants::new(int(m), int(alpha), int(e)).unwrap(), l).unwrap()
    }

    /// `ch₁ = 2f`, `ch₂ = −4`: ray walls at `β = √(2/3)` and `√(4/3)`.
    fn rank_one_target() -> ChernClass {
        ChernClass::from_ints(1, 0, 2, 0, -4)
    }

    fn fiber_target() -> ChernClass {
        ChernClass::from_ints(0, 0, 2, 0, 1)
    }

    #[test]
    fn skyscraper_has_no_candidates() {
        let f = family(WallFamily::Ray, 2, 1, 0, int(0));
        let c = candidate_classes(&ChernClass::skyscraper(), &f, 3, &int(10)).unwrap();
        assert!(c.iter().all(|g| f.ray_parts(g).im.is_zero()));
        let walls = find_walls(&ChernClass::skyscraper(), &f, &c, (0.1, 100.0), 100).unwrap();
        assert!(walls.is_empty());
    }

    #[test]
    fn fiber_candidates_contain_the_halves() {
        let f = family(WallFamily::Ray, 2, 1, 0, int(0));
        let c = candidate_classes(&fiber_target(), &f, 3, &int(10)).unwrap();
        assert!(c.contains(&ChernClass::from_ints(0, 0, 1, 0, 0)));
        assert!(c.contains(&ChernClass::from_ints(0, 0, 1, 0, 1)));
        assert!(!c.contains(&fiber_target()));
        assert_eq!(candidate_classes(&ChernClass::zero(), &f, 3, &int(1)), Err(WallError::ZeroTarget));
        assert_eq!(candidate_classes(&fiber_target(), &f, -1, &int(1)), Err(WallError::EmptyBounds(-1)));
    }

    #[test]
    fn candidates_are_integral() {
        let f = family(WallFamily::Ray, 3, 1, 1, rat(1, 2));
        let target = ChernClass::new(int(1), int(1), int(0), int(0), rat(-1, 2));
        for g in candidate_classes(&target, &f, 2, &int(5)).unwrap() {
            assert!((&g.s + &g.x * &g.x * rat(1, 2)).is_integer());
        }
    }

    #[test]
    fn kernel_direction_is_not_a_wall() {
        let f = family(WallFamily::Ray, 2, 1, 0, int(0));
        // proportional charge: S vanishes identically
        let sub = ChernClass::from_ints(0, 0, 1, 0, 0);
        let target = ChernClass::from_ints(0, 0, 2, 0, 0);
        assert!(ray_root(&f, &target, &sub).is_none());
        assert!(find_walls(&target, &f, &[sub], (0.1, 10.0), 10).unwrap().is_empty());
    }

    #[test]
    fn rank_one_target_has_ray_walls() {
        let f = family(WallFamily::Ray, 2, 1, 0, int(0));
        let target = rank_one_target();
        let sub = ChernClass::from_ints(1, 0, 1, 0, 0);
        let r = ray_root(&f, &target, &sub).unwrap();
        assert_eq!(r, rat(4, 3));
        let beta = r.to_f64().unwrap().sqrt();
        let walls = find_walls(&target, &f, std::slice::from_ref(&sub), (0.01, 100.0), 10).unwrap();
        assert_eq!(walls.len(), 1);
        assert!((walls[0].param - beta).abs() < 1e-12);
        let s = weight_at(&f, &sub, &target, beta).unwrap();
        let scale = f.charge_f64(&target, beta).unwrap().abs() * f.charge_f64(&sub, beta).unwrap().abs();
        assert!(s.abs() <= 1e-10 * scale);
        let before = weight_at(&f, &sub, &target, beta * 0.99).unwrap();
        let after = weight_at(&f, &sub, &target, beta * 1.01).unwrap();
        assert!(before * after < 0.0);
    }

    #[test]
    fn hyperbola_walls_refine_stably() {
        let f = family(WallFamily::Hyperbola, 2, 1, 0, int(0));
        let target = phi(&rank_one_target(), f.geometry());
        let cand = candidate_classes(&target, &f, 3, &int(2)).unwrap();
        let a = find_walls(&target, &f, &cand, (0.5, 40.0), 400).unwrap();
        let b = find_walls(&target, &f, &cand, (0.5, 40.0), 800).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x.param - y.param).abs() <= 1e-9 * x.param);
        }
        for w in &a {
            let s = weight_at(&f, &w.destabilizer, &target, w.param).unwrap();
            let scale = f.charge_f64(&target, w.param).unwrap().abs() * f.charge_f64(&w.destabilizer, w.param).unwrap().abs();
            assert!(s.abs() <= 1e-8 * scale);
        }
    }

    #[test]
    fn walls_ignore_positive_scaling_of_candidates() {
        let f = family(WallFamily::Ray, 2, 1, 0, int(0));
        let target = rank_one_target();
        let sub = ChernClass::from_ints(1, 0, 1, 0, 0);
        let r1 = ray_root(&f, &target, &sub).unwrap();
        let r2 = ray_root(&f, &target, &sub.scale(&int(3))).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn correspondence_on_a_rank_one_target() {
        let f = family(WallFamily::Ray, 2, 1, 0, int(0));
        let target = rank_one_target();
        let cand = candidate_classes(&target, &f, 3, &int(1)).unwrap();
        let rep = correspondence_check(&target, &f, &cand, (&rat(1, 2), &int(30)), 40, 3000).unwrap();
        assert_eq!(rep.sign_mismatches, 0);
        assert!(!rep.ray_walls.is_empty());
        assert!(rep.pass, "{rep:?}");
        assert!(rep.max_relative_error <= MATCH_TOLERANCE);
    }

    #[test]
    fn probe_is_monotone_in_the_interval() {
        let f = family(WallFamily::Hyperbola, 2, 1, 0, int(0));
        let target = phi(&rank_one_target(), f.geometry());
        let cand = candidate_classes(&target, &f, 3, &int(2)).unwrap();
        let short = boundedness_probe(&target, &f, &cand, 0.5, 10.0, 200).unwrap();
        let long = boundedness_probe(&target, &f, &cand, 0.5, 100.0, 200).unwrap();
        assert!(long.largest_wall >= short.largest_wall);
        assert_eq!(long.note, PROBE_NOTE);
    }

    #[test]
    fn grids() {
        assert_eq!(grid_linear(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        let g = grid_log(1.0, 1000.0, 10);
        assert_eq!(g.len(), 31);
        assert!((g[30] - 1000.0).abs() < 1e-9);
    }
}
