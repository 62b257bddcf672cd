use std::fs;
use std::path::Path;

use ellstab_core::charges::{ChargeFamily, ChargeSpec, ToSeries};
use ellstab_core::glaction::{verify_commutation, verify_curve, CommutationMode};
use ellstab_core::lattice::{ChernClass, DivisorRF, SurfaceGeometry};
use ellstab_core::patching::{
    beta_residual, gepner_params, solve_beta_series, solve_u_series, solve_uv_numeric, u_residual, PatchConstants,
};
use ellstab_core::sampling::{random_classes, random_curve_classes};
use ellstab_core::series::{
    format_rational, rat, LaurentSeries, PhaseInterval, PhaseJson, Rational, Scalar, SeriesJson, Signed,
};
use ellstab_core::transform::{phi, phi_hat};
use ellstab_core::walls::{candidate_classes, find_walls, grid_linear, plot_data, StabilityFamily, WallFamily, MATCH_TOLERANCE};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::error::{CliError, OrValidation};
use crate::{BFieldArgs, Command, Family, GeomArgs, PatchArgs, ScanArgs, Suite, WallKind};

pub fn dispatch(cmd: Command, cfg: &Config) -> Result<String, CliError> {
    match cmd {
        Command::Transform { chern, geom, inverse } => transform(&chern, &geom, inverse, cfg),
        Command::Charge {
            family,
            chern,
            patch,
            omega,
            b_field,
            a,
            b,
            beta,
            u,
            v,
            branch,
            series,
            series_order,
        } => {
            let req = ChargeRequest { family, omega, a, b, beta, u, v, branch, series, series_order };
            charge(&chern, &patch, b_field.unwrap_or_else(DivisorRF::zero), req, cfg)
        }
        Command::Solve { patch, v, series_order, gepner } => solve(&patch, v, series_order, gepner, cfg),
        Command::Verify { suite, patch, fields, v, series_order, samples, seed } => {
            verify(suite, &patch, &fields, v, series_order, samples, seed, cfg)
        }
        Command::Walls { scan, grid, out } => walls(&scan, grid, out.as_deref().or(cfg.output.walls.as_deref()), cfg),
        Command::Gepner { patch } => gepner(&patch, cfg),
        Command::PlotData { scan, grid, out } => plot(&scan, grid, out.as_deref().or(cfg.output.plot.as_deref()), cfg),
    }
}

fn render(v: &Value) -> String {
    // serde_json maps are ordered by key, so this is byte-stable.
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn tagged(mode: &str, mut fields: Map<String, Value>) -> Value {
    fields.insert("mode".into(), Value::from(mode));
    Value::Object(fields)
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn fr(r: &Rational) -> f64 {
    Scalar::from_rational(r.clone()).to_f64()
}

fn required(flag: &Option<Rational>, fallback: &Option<Rational>, name: &str) -> Result<Rational, CliError> {
    flag.clone()
        .or_else(|| fallback.clone())
        .ok_or_else(|| CliError::validation(format!("missing --{name} (flag or config)")))
}

fn geometry(g: &GeomArgs, cfg: &Config, need_m: bool) -> Result<SurfaceGeometry, CliError> {
    let e = required(&g.e, &cfg.e, "e")?;
    let m = g.m.clone().or_else(|| cfg.m.clone());
    let geom = match m {
        Some(m) => SurfaceGeometry::new(e, m).or_invalid()?,
        None if need_m => return Err(CliError::validation("missing --m (flag or config)")),
        None => SurfaceGeometry::with_e(e).or_invalid()?,
    };
    Ok(match g.kx_f.clone().or_else(|| cfg.kx_f.clone()) {
        Some(k) => geom.with_canonical_f(k),
        None => geom,
    })
}

fn constants(p: &PatchArgs, cfg: &Config) -> Result<PatchConstants, CliError> {
    let m = required(&p.geom.m, &cfg.m, "m")?;
    let alpha = required(&p.alpha, &cfg.alpha, "alpha")?;
    let e = required(&p.geom.e, &cfg.e, "e")?;
    PatchConstants::new(m, alpha, e).or_invalid()
}

/// `q` from the flag, the config, or `l − e/2`; defaults to 0.
fn resolve_q(fields: &BFieldArgs, consts: &PatchConstants, cfg: &Config) -> Rational {
    let half_e = consts.e() * rat(1, 2);
    fields
        .q
        .clone()
        .or_else(|| cfg.q.clone())
        .or_else(|| fields.l.as_ref().map(|l| l - &half_e))
        .unwrap_or_else(|| rat(0, 1))
}

fn check_l(fields: &BFieldArgs, consts: &PatchConstants, q: &Rational) -> Result<Rational, CliError> {
    let expected = consts.e() * rat(1, 2) + q;
    match &fields.l {
        Some(l) if *l != expected => Err(CliError::validation(format!(
            "l = e/2 + q violated (l = {}, e/2 + q = {})",
            format_rational(l),
            format_rational(&expected)
        ))),
        _ => Ok(expected),
    }
}

fn transform(gamma: &ChernClass, g: &GeomArgs, inverse: bool, cfg: &Config) -> Result<String, CliError> {
    let geom = geometry(g, cfg, false)?;
    let out = if inverse { phi_hat(gamma, &geom) } else { phi(gamma, &geom) };
    Ok(render(&tagged("exact", object(to_value(&out)))))
}

struct ChargeRequest {
    family: Family,
    omega: Option<DivisorRF>,
    a: Option<Rational>,
    b: Option<Rational>,
    beta: Option<Rational>,
    u: Option<Rational>,
    v: Option<Rational>,
    branch: Option<String>,
    series: bool,
    series_order: Option<i64>,
}

fn need<T: Clone>(v: &Option<T>, name: &str, family: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::validation(format!("family {family} needs --{name}")))
}

fn charge(
    gamma: &ChernClass,
    patch: &PatchArgs,
    b_field: DivisorRF,
    req: ChargeRequest,
    cfg: &Config,
) -> Result<String, CliError> {
    let needs_m = matches!(req.family, Family::Hyperbola) || (req.series && matches!(req.family, Family::Ray));
    let geom = geometry(&patch.geom, cfg, needs_m)?;
    let branch = req.branch.as_deref().map(PhaseInterval::parse).transpose().or_invalid()?;
    if req.series {
        let n = cfg.series_order(req.series_order)?;
        let c = |s: &Rational| LaurentSeries::constant(Scalar::from_rational(s.clone()));
        let family = match req.family {
            Family::Ray => {
                let consts = constants(patch, cfg)?;
                let beta = solve_beta_series(&consts, n).or_invalid()?.beta;
                ChargeFamily::LargeVolumeRay { alpha: consts.alpha().clone(), beta }
            }
            Family::Hyperbola => {
                let consts = constants(patch, cfg)?;
                ChargeFamily::HyperbolaZl { u: solve_u_series(&consts, n), v: LaurentSeries::v() }
            }
            _ => scalar_family(&req, patch, cfg)?.map_params(|s| c(s)),
        };
        let spec = build_spec(family, b_field, geom, branch)?;
        charge_json(&spec, gamma, |s: &LaurentSeries| to_value(&SeriesJson::from(s.clone())), Some(n))
    } else {
        let family = scalar_family(&req, patch, cfg)?.map_params(|s| Scalar::from_rational(s.clone()));
        let spec = build_spec(family, b_field, geom, branch)?;
        charge_json(&spec, gamma, |s: &Scalar| Value::from(s.to_string()), None)
    }
}

/// Family parameters as rationals, before lifting to a ring.
enum RationalFamily {
    OmegaB(DivisorRF),
    AbB(Rational, Rational),
    AbBPrime(Rational, Rational),
    Ray(Rational, Rational),
    Hyperbola(Rational, Rational),
}

impl RationalFamily {
    fn map_params<T: Clone>(self, lift: impl Fn(&Rational) -> T) -> ChargeFamily<T> {
        match self {
            RationalFamily::OmegaB(w) => ChargeFamily::OmegaB { omega: w.map(&lift) },
            RationalFamily::AbB(a, b) => ChargeFamily::AbB { a: lift(&a), b: lift(&b) },
            RationalFamily::AbBPrime(a, b) => ChargeFamily::AbBPrime { a: lift(&a), b: lift(&b) },
            RationalFamily::Ray(alpha, beta) => ChargeFamily::LargeVolumeRay { alpha, beta: lift(&beta) },
            RationalFamily::Hyperbola(u, v) => ChargeFamily::HyperbolaZl { u: lift(&u), v: lift(&v) },
        }
    }
}

fn scalar_family(req: &ChargeRequest, patch: &PatchArgs, cfg: &Config) -> Result<RationalFamily, CliError> {
    Ok(match req.family {
        Family::OmegaB => RationalFamily::OmegaB(need(&req.omega, "omega", "omegaB")?),
        Family::AbB => RationalFamily::AbB(need(&req.a, "a", "abB")?, need(&req.b, "b", "abB")?),
        Family::AbBPrime => RationalFamily::AbBPrime(need(&req.a, "a", "abB-prime")?, need(&req.b, "b", "abB-prime")?),
        Family::Ray => RationalFamily::Ray(required(&patch.alpha, &cfg.alpha, "alpha")?, need(&req.beta, "beta", "ray")?),
        Family::Hyperbola => RationalFamily::Hyperbola(need(&req.u, "u", "hyperbola")?, need(&req.v, "v", "hyperbola")?),
    })
}

fn build_spec<T: Signed>(
    family: ChargeFamily<T>,
    b_field: DivisorRF,
    geom: SurfaceGeometry,
    branch: Option<PhaseInterval>,
) -> Result<ChargeSpec<T>, CliError> {
    match branch {
        Some(br) => ChargeSpec::with_branch(family, b_field, geom, br),
        None => ChargeSpec::new(family, b_field, geom),
    }
    .or_invalid()
}

fn charge_json<T: Signed + ToSeries>(
    spec: &ChargeSpec<T>,
    gamma: &ChernClass,
    show: impl Fn(&T) -> Value,
    series_order: Option<i64>,
) -> Result<String, CliError> {
    let z = spec.z(gamma);
    let phase = spec.phase(gamma).or_invalid()?;
    let mut m = Map::new();
    m.insert("re".into(), show(&z.re));
    m.insert("im".into(), show(&z.im));
    m.insert("phase_limit".into(), to_value(&PhaseJson::from(phase.limit_value())));
    m.insert("branch".into(), Value::from(spec.branch().to_string()));
    if let Some(n) = series_order {
        m.insert("series_order".into(), Value::from(n));
    }
    Ok(render(&tagged("exact", m)))
}

fn gepner_value(consts: &PatchConstants) -> Value {
    let g = gepner_params(consts);
    tagged(
        "exact",
        object(json!({
            "u": g.u.to_string(),
            "beta": g.beta.to_string(),
            "v": g.v.to_string(),
            "residuals": {
                "beta_relation": g.beta_relation.to_string(),
                "u_relation": g.u_relation.to_string(),
            },
        })),
    )
}

fn gepner(patch: &PatchArgs, cfg: &Config) -> Result<String, CliError> {
    Ok(render(&gepner_value(&constants(patch, cfg)?)))
}

fn series_json(s: &LaurentSeries) -> Value {
    to_value(&SeriesJson::from(s.clone()))
}

fn solve(
    patch: &PatchArgs,
    v: Option<Rational>,
    series_order: Option<i64>,
    gepner: bool,
    cfg: &Config,
) -> Result<String, CliError> {
    let consts = constants(patch, cfg)?;
    if gepner {
        return Ok(render(&gepner_value(&consts)));
    }
    if let Some(v) = v {
        let sol = solve_uv_numeric(&consts, fr(&v)).or_invalid()?;
        let out = json!({
            "u": sol.u,
            "beta": sol.beta,
            "v": sol.v,
            "residuals": { "beta_relation": sol.beta_relation, "u_relation": sol.u_relation },
            "tolerance": 1e-12,
        });
        return Ok(render(&tagged("float", object(out))));
    }
    let n = cfg.series_order(series_order)?;
    let bs = solve_beta_series(&consts, n).or_invalid()?;
    let u = solve_u_series(&consts, n);
    let u_res = u_residual(&consts, &u).with_order(n);
    let b_res = beta_residual(&consts, &bs.u, &bs.beta).or_invalid()?;
    let out = json!({
        "series": true,
        "series_order": n,
        "v": "1/w",
        "u": series_json(&u),
        "beta": series_json(&bs.beta),
        "beta_sq": series_json(&bs.beta_sq),
        "residuals": { "u_relation": series_json(&u_res), "beta_relation": series_json(&b_res) },
    });
    Ok(render(&tagged("exact", object(out))))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Suite,
    patch: &PatchArgs,
    fields: &BFieldArgs,
    v: Option<f64>,
    series_order: Option<i64>,
    samples: usize,
    seed: u64,
    cfg: &Config,
) -> Result<String, CliError> {
    let (value, pass) = match suite {
        Suite::Curve => {
            let rep = verify_curve(&random_curve_classes(samples, seed)).or_invalid()?;
            (tagged("exact", object(to_value(&rep))), rep.pass)
        }
        Suite::Commutation | Suite::Gepner => {
            let consts = constants(patch, cfg)?;
            let q = resolve_q(fields, &consts, cfg);
            check_l(fields, &consts, &q)?;
            let mode = match (suite, v) {
                (Suite::Gepner, _) => CommutationMode::Gepner,
                (_, Some(v)) => CommutationMode::Numeric(v),
                (_, None) => CommutationMode::Series(cfg.series_order(series_order)?),
            };
            let classes = random_classes(samples, seed, false);
            let rep = verify_commutation(&consts, &q, fields.l.as_ref(), &mode, &classes).or_invalid()?;
            let mut m = object(to_value(&rep));
            if let Some(kind) = m.remove("mode") {
                m.insert("evaluation".into(), kind);
            }
            (tagged(if rep.exact { "exact" } else { "float" }, m), rep.pass)
        }
    };
    let text = render(&value);
    if pass {
        Ok(text)
    } else {
        Err(CliError::Verification(text))
    }
}

fn scan_family(scan: &ScanArgs, cfg: &Config) -> Result<(StabilityFamily, Rational), CliError> {
    let consts = constants(&scan.patch, cfg)?;
    let q = resolve_q(&scan.fields, &consts, cfg);
    check_l(&scan.fields, &consts, &q)?;
    let kind = match scan.family {
        WallKind::Ray => WallFamily::Ray,
        WallKind::Hyperbola => WallFamily::Hyperbola,
    };
    let family = StabilityFamily::from_q(kind, consts, &q).or_invalid()?;
    Ok((family, q))
}

fn interval_f64(scan: &ScanArgs) -> Result<(f64, f64), CliError> {
    let (a, b) = &scan.interval;
    if !(*a > rat(0, 1) && a < b) {
        return Err(CliError::validation(format!(
            "interval {},{} must satisfy 0 < a < b",
            format_rational(a),
            format_rational(b)
        )));
    }
    Ok((fr(a), fr(b)))
}

fn scan_candidates(scan: &ScanArgs, family: &StabilityFamily) -> Result<(Vec<ChernClass>, Rational), CliError> {
    let sample = scan.sample_v.clone().unwrap_or_else(|| scan.interval.0.clone());
    let cands = candidate_classes(&scan.chern, family, scan.bounds, &sample).or_invalid()?;
    Ok((cands, sample))
}

fn write_or_return(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn walls(scan: &ScanArgs, grid: usize, out: Option<&Path>, cfg: &Config) -> Result<String, CliError> {
    let (family, q) = scan_family(scan, cfg)?;
    let interval = interval_f64(scan)?;
    let (cands, sample) = scan_candidates(scan, &family)?;
    let found = find_walls(&scan.chern, &family, &cands, interval, grid).or_invalid()?;
    let consts = family.consts();
    let out_value = tagged(
        "float",
        object(json!({
            "family": to_value(&family.kind()),
            "params": {
                "m": format_rational(consts.m()),
                "alpha": format_rational(consts.alpha()),
                "e": format_rational(consts.e()),
                "q": format_rational(&q),
                "l": format_rational(family.l()),
            },
            "walls": to_value(&found),
            "scan_metadata": {
                "interval": [format_rational(&scan.interval.0), format_rational(&scan.interval.1)],
                "grid": grid,
                "bounds": scan.bounds,
                "candidates": cands.len(),
                "candidate_sample_v": format_rational(&sample),
                "bisection_tolerance": 1e-10,
                "match_tolerance": MATCH_TOLERANCE,
                "note": "numerical walls: parameters where S changes sign; not certified complete",
            },
        })),
    );
    write_or_return(render(&out_value), out)
}

fn plot(scan: &ScanArgs, grid: usize, out: Option<&Path>, cfg: &Config) -> Result<String, CliError> {
    let (family, _) = scan_family(scan, cfg)?;
    let (a, b) = interval_f64(scan)?;
    let (cands, _) = scan_candidates(scan, &family)?;
    let rows = plot_data(&scan.chern, &family, &cands, &grid_linear(a, b, grid.max(2))).or_invalid()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["param".to_string(), "re_Z".to_string(), "im_Z".to_string()];
    header.extend(cands.iter().map(|c| format!("S_{}", c.to_string().replace(',', ";"))));
    let csv_err = |e: csv::Error| CliError::validation(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let mut rec = vec![row.param.to_string(), row.re_z.to_string(), row.im_z.to_string()];
        rec.extend(row.s.iter().map(f64::to_string));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::validation(e.to_string()))?;
    write_or_return(String::from_utf8(bytes).expect("csv is utf-8"), out)
}
