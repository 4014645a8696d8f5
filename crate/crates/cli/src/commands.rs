use std::path::Path;

use gaudin_core::averaging::{
    intertwining_check, polynomiality_check, Averaged, InterpolationReport, OrbitData, SymPolyF,
};
use gaudin_core::bethe::OperatorDiffOp;
use gaudin_core::characters::{char_o, char_v, generator_degrees, hilbert_oracle, QSeries};
use gaudin_core::json;
use gaudin_core::master::{solve_bae, CriticalPoint, SolveReport};
use gaudin_core::repr::{raising_residual, Partition};
use gaudin_core::schubert::{d_t, iota, random_nice_point, sample_points, theta};
use gaudin_core::weightfn::{bethe_vector, norm_hessian_check, orthogonality_check};
use gaudin_core::{GaudinError, Result, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{AverageArgs, CharsArgs, ReportConfig, RoundtripArgs, SolveArgs, TolArgs, VerifyArgs};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Usage = 1,
    CountWarning = 2,
    CheckFailure = 3,
}

pub fn status_of(e: &GaudinError) -> Status {
    match e {
        GaudinError::InvalidInput(_) | GaudinError::TooLarge { .. } | GaudinError::DegenerateSites { .. } => {
            Status::Usage
        }
        GaudinError::CountMismatch { .. } | GaudinError::NonConvergence { .. } => Status::CountWarning,
        _ => Status::CheckFailure,
    }
}

fn config(tol: &TolArgs) -> Result<ReportConfig> {
    Ok(ReportConfig { seed: tol.seed, tolerances: tol.tolerances()?, budget: tol.budget()? })
}

fn write_report<T: Serialize>(report: &T, output: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| GaudinError::InvalidInput(e.to_string()))?;
    text.push('\n');
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| GaudinError::InvalidInput(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need_sites(sites: Option<Vec<C64>>) -> Result<Vec<C64>> {
    sites.ok_or_else(|| GaudinError::InvalidInput("give the sites with --z or --z-seed".into()))
}

#[derive(Serialize)]
struct SolveOutput {
    command: &'static str,
    config: ReportConfig,
    lambda: Partition,
    z: Vec<[f64; 2]>,
    report: SolveReport,
    points: Vec<CriticalPoint>,
}

pub fn solve(a: &SolveArgs) -> Result<Status> {
    let cfg = config(&a.tol)?;
    let lambda = a.lambda.partition()?;
    let z = need_sites(a.sites.sites(lambda.size())?)?;
    let (points, report) = solve_bae(&lambda, &z, cfg.seed, &cfg.budget, &cfg.tolerances)?;
    let status = if report.count_matches() { Status::Pass } else { Status::CountWarning };
    if status != Status::Pass {
        eprintln!("warning: found {} of {} orbits", report.found, report.expected);
    }
    let out = SolveOutput { command: "solve", config: cfg, lambda, z: json::pairs(&z), report, points };
    write_report(&out, a.output.as_deref())?;
    Ok(status)
}

#[derive(Serialize, Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub orbits: Vec<usize>,
    pub residual: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    fn new(name: &'static str, orbits: Vec<usize>, value: Result<f64>, threshold: f64) -> Self {
        match value {
            Ok(r) => Check { name, orbits, residual: Some(r), threshold, pass: r < threshold, error: None },
            Err(e) => Check { name, orbits, residual: None, threshold, pass: false, error: Some(e.to_string()) },
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput {
    command: &'static str,
    config: ReportConfig,
    lambda: Option<Partition>,
    z: Vec<[f64; 2]>,
    orbits: usize,
    checks: Vec<Check>,
    all_pass: bool,
}

fn read_points(path: &Path) -> Result<Vec<CriticalPoint>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GaudinError::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| GaudinError::InvalidInput(format!("bad input {}: {e}", path.display()));
    let v: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    let pts = match v {
        serde_json::Value::Object(ref m) if m.contains_key("points") => {
            serde_json::from_value(m["points"].clone()).map_err(bad)?
        }
        serde_json::Value::Array(_) => serde_json::from_value(v).map_err(bad)?,
        _ => vec![serde_json::from_value(v).map_err(bad)?],
    };
    Ok(pts)
}

/// Every per-orbit and cross-orbit check on a set of critical points at one `z`.
pub fn run_checks(points: &[CriticalPoint], check_tol: f64, dedup_tol: f64, hess_floor: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let Some(first) = points.first() else {
        return Ok(checks);
    };
    let z = first.z().to_vec();
    if points.iter().any(|p| p.z() != z.as_slice()) {
        return Err(GaudinError::InvalidInput("points have different sites".into()));
    }
    let op = OperatorDiffOp::build(first.n_dim(), &z)?;
    for (k, p) in points.iter().enumerate() {
        let omega = bethe_vector(p);
        checks.push(Check::new(
            "singular",
            vec![k],
            omega.as_ref().map(raising_residual).map_err(Clone::clone),
            check_tol,
        ));
        let mut poles = z.clone();
        poles.extend(p.flat_t());
        let samples = sample_points(&poles, 3, k);
        let eigen = omega.clone().and_then(|w| op.eigen_residual(&w, &d_t(p)?, &samples));
        checks.push(Check::new("eigen", vec![k], eigen, check_tol));
        let hess = p.hessian().map(|h| h.norm());
        checks.push(Check::new(
            "nondegenerate",
            vec![k],
            hess.map(|h| if h > hess_floor { 0.0 } else { f64::INFINITY }),
            1.0,
        ));
        checks.push(Check::new("norm_hessian", vec![k], norm_hessian_check(p).map(|r| r.2), check_tol));
        let rt = iota(p).and_then(|x| theta(&x)).map(|s| s.distance(&p.to_sigma()));
        checks.push(Check::new("theta_iota", vec![k], rt, check_tol));
    }
    for k in 0..points.len() {
        for l in k + 1..points.len() {
            let r = orthogonality_check(&points[k], &points[l], dedup_tol).map(|r| r.1);
            checks.push(Check::new("orthogonality", vec![k, l], r, check_tol));
        }
    }
    let lambda = first.partition()?;
    let data = OrbitData::from_points(&lambda, &z, points.to_vec(), empty_report(&lambda, points.len()));
    let poles: Vec<C64> = points.iter().flat_map(|p| p.flat_t()).chain(z.iter().copied()).collect();
    let us = sample_points(&poles, 2, 11);
    let r = data.and_then(|d| intertwining_check(&d, &SymPolyF::one(), &us));
    checks.push(Check::new("intertwining", (0..points.len()).collect(), r, check_tol));
    Ok(checks)
}

fn empty_report(lambda: &Partition, found: usize) -> SolveReport {
    SolveReport {
        lambda: lambda.clone(),
        seed: 0,
        expected: found,
        found,
        attempts: 0,
        starts: 0,
        converged_starts: 0,
        orbits: Vec::new(),
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Status> {
    let cfg = config(&a.tol)?;
    let tol = cfg.tolerances;
    let mut checks = Vec::new();
    let (points, lambda, z) = match &a.input {
        Some(path) => {
            let pts = read_points(path)?;
            let z = pts.first().map(|p| p.z().to_vec()).unwrap_or_default();
            let lambda = pts.first().map(|p| p.partition()).transpose()?;
            (pts, lambda, z)
        }
        None => {
            let lambda = crate::args::LambdaArgs { lambda: a.lambda.clone(), n_parts: a.n_parts }.partition()?;
            let z = need_sites(a.sites.sites(lambda.size())?)?;
            let (pts, report) = solve_bae(&lambda, &z, cfg.seed, &cfg.budget, &tol)?;
            let count = if report.count_matches() {
                Ok(0.0)
            } else {
                Err(GaudinError::CountMismatch { found: report.found, expected: report.expected })
            };
            checks.push(Check::new("count", Vec::new(), count, 0.5));
            (pts, Some(lambda), z)
        }
    };
    if points.is_empty() {
        return Err(GaudinError::InvalidInput("no critical points to verify".into()));
    }
    checks.extend(run_checks(&points, tol.check_tol, tol.dedup_tol, tol.hess_floor)?);
    let all_pass = checks.iter().all(|c| c.pass);
    let out = VerifyOutput {
        command: "verify",
        config: cfg,
        lambda,
        z: json::pairs(&z),
        orbits: points.len(),
        checks,
        all_pass,
    };
    write_report(&out, a.output.as_deref())?;
    Ok(if all_pass { Status::Pass } else { Status::CheckFailure })
}

#[derive(Serialize)]
struct AverageOutput {
    command: &'static str,
    config: ReportConfig,
    interpolation: InterpolationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<AverageValue>,
}

#[derive(Serialize)]
struct AverageValue {
    z: Vec<[f64; 2]>,
    #[serde(flatten)]
    averaged: Averaged,
}

pub fn average(a: &AverageArgs) -> Result<Status> {
    let cfg = config(&a.tol)?;
    let lambda = a.lambda.partition()?;
    let f: SymPolyF = a.f.parse()?;
    let target = f.degree().unwrap_or(0) + lambda.degree_shift();
    let cap = a.degree_cap.unwrap_or(target + 1);
    let interpolation = polynomiality_check(&lambda, &f, cap, cfg.seed, &cfg.budget, &cfg.tolerances)?;
    let value = match a.sites.sites(lambda.size())? {
        Some(z) => Some(AverageValue {
            averaged: gaudin_core::averaging::v_f(&lambda, &f, &z, cfg.seed, &cfg.budget, &cfg.tolerances)?,
            z: json::pairs(&z),
        }),
        None => None,
    };
    let status = if !interpolation.passed {
        Status::CheckFailure
    } else if value.as_ref().is_some_and(|v| !v.averaged.trusted) {
        Status::CountWarning
    } else {
        Status::Pass
    };
    write_report(&AverageOutput { command: "average", config: cfg, interpolation, value }, a.output.as_deref())?;
    Ok(status)
}

#[derive(Serialize)]
struct CharsOutput {
    command: &'static str,
    lambda: Partition,
    order: usize,
    degree_shift: usize,
    generator_degrees: Vec<usize>,
    char_o: QSeries,
    char_v: QSeries,
    oracle: QSeries,
    oracle_matches: bool,
    shift_matches: bool,
}

pub fn chars(a: &CharsArgs) -> Result<Status> {
    let lambda = a.lambda.partition()?;
    let co: QSeries = char_o(&lambda, a.order)?;
    let cv: QSeries = char_v(&lambda, a.order)?;
    let oracle: QSeries = hilbert_oracle(&lambda, a.order)?;
    let s = lambda.degree_shift();
    let shift_matches = (0..=a.order).all(|k| cv.coeff(k) == if k >= s { co.coeff(k - s) } else { 0 });
    let out = CharsOutput {
        command: "chars",
        degree_shift: s,
        generator_degrees: generator_degrees(&lambda),
        oracle_matches: co == oracle,
        shift_matches,
        lambda,
        order: a.order,
        char_o: co,
        char_v: cv,
        oracle,
    };
    let ok = out.oracle_matches && out.shift_matches;
    write_report(&out, a.output.as_deref())?;
    Ok(if ok { Status::Pass } else { Status::CheckFailure })
}

#[derive(Serialize)]
struct RoundtripOutput {
    command: &'static str,
    config: ReportConfig,
    lambda: Partition,
    samples: usize,
    /// `max ‖ι(θ(X)) − X‖` in flag coordinates.
    iota_theta: f64,
    /// `max ‖σ(root coordinates of X) − θ(X)‖`.
    theta_roots: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_iota: Option<f64>,
    pass: bool,
}

pub fn roundtrip(a: &RoundtripArgs) -> Result<Status> {
    let cfg = config(&a.tol)?;
    let lambda = a.lambda.partition()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut it, mut tr) = (0f64, 0f64);
    for _ in 0..a.count {
        let (x, t) = random_nice_point::<f64>(&lambda, &mut rng, 100)?;
        it = it.max(x.distance(&iota(&t)?));
        tr = tr.max(theta(&x)?.distance(&t.to_sigma()));
    }
    let theta_iota = match a.sites.sites(lambda.size())? {
        Some(z) => {
            let (pts, _) = solve_bae(&lambda, &z, cfg.seed, &cfg.budget, &cfg.tolerances)?;
            let mut worst = 0f64;
            for p in &pts {
                worst = worst.max(theta(&iota(p)?)?.distance(&p.to_sigma()));
            }
            Some(worst)
        }
        None => None,
    };
    let t = cfg.tolerances.check_tol;
    let pass = it < t && tr < t && theta_iota.is_none_or(|w| w < t);
    let out = RoundtripOutput {
        command: "roundtrip",
        config: cfg,
        lambda,
        samples: a.count,
        iota_theta: it,
        theta_roots: tr,
        theta_iota,
        pass,
    };
    write_report(&out, a.output.as_deref())?;
    Ok(if pass { Status::Pass } else { Status::CheckFailure })
}
