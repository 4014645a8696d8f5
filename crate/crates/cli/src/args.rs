use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gaudin_core::master::{SolverBudget, Tolerances};
use gaudin_core::repr::Partition;
use gaudin_core::{GaudinError, Result, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "gaudin", version, about = "Numerical checks for the gl_N Gaudin model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the Bethe ansatz equations and list orbit representatives.
    Solve(SolveArgs),
    /// Run every identity check on solved orbits.
    Verify(VerifyArgs),
    /// Fit the averaged Bethe vector v_F(z) by a polynomial in z.
    Average(AverageArgs),
    /// Graded characters and their Hilbert-series oracle.
    Chars(CharsArgs),
    /// Round trips between spaces of polynomials and critical points.
    Roundtrip(RoundtripArgs),
}

#[derive(Args, Debug, Clone)]
pub struct LambdaArgs {
    /// Partition, e.g. `2,1,1`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub lambda: Vec<usize>,
    /// Rank N; pads λ with zeros.
    #[arg(long)]
    pub n_parts: Option<usize>,
}

impl LambdaArgs {
    pub fn partition(&self) -> Result<Partition> {
        match self.n_parts {
            Some(n) => Partition::with_parts(&self.lambda, n),
            None => Partition::new(self.lambda.clone()),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SitesArgs {
    /// Sites as `re+imj` values separated by commas, or a JSON array of `[re,im]`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Draw random sites in the unit disc from this seed instead.
    #[arg(long, conflicts_with = "z")]
    pub z_seed: Option<u64>,
}

impl SitesArgs {
    /// `None` when neither flag was given.
    pub fn sites(&self, n: usize) -> Result<Option<Vec<C64>>> {
        if let Some(s) = &self.z {
            let z = parse_sites(s)?;
            if z.len() != n {
                return Err(GaudinError::InvalidInput(format!("|λ| = {n} but {} sites were given", z.len())));
            }
            return Ok(Some(z));
        }
        Ok(self.z_seed.map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            gaudin_core::averaging::random_sites(n, &mut rng)
        }))
    }
}

#[derive(Args, Debug, Clone)]
pub struct TolArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub newton_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub dedup_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub hess_floor: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub check_tol: f64,
    /// Newton starts per attempt, in units of expected orbits times orbit size.
    #[arg(long, default_value_t = 50)]
    pub starts_multiplier: usize,
    #[arg(long, default_value_t = 3)]
    pub retries: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl TolArgs {
    pub fn tolerances(&self) -> Result<Tolerances> {
        let t = Tolerances {
            newton_tol: self.newton_tol,
            dedup_tol: self.dedup_tol,
            hess_floor: self.hess_floor,
            check_tol: self.check_tol,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn budget(&self) -> Result<SolverBudget> {
        if self.starts_multiplier == 0 {
            return Err(GaudinError::InvalidInput("starts multiplier must be positive".into()));
        }
        Ok(SolverBudget { starts_multiplier: self.starts_multiplier, retries: self.retries, ..SolverBudget::default() })
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub lambda: LambdaArgs,
    #[command(flatten)]
    pub sites: SitesArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Output of `solve`, a list of points, or a single point. Replaces --lambda/--z.
    #[arg(long, conflicts_with_all = ["lambda", "z", "z_seed"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub lambda: Vec<usize>,
    #[arg(long)]
    pub n_parts: Option<usize>,
    #[command(flatten)]
    pub sites: SitesArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AverageArgs {
    #[command(flatten)]
    pub lambda: LambdaArgs,
    /// Polynomial in `sA_I` = σ^(A)_I, e.g. `1`, `s1_1`, `2*s1_1^2 - s0_2`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub f: String,
    /// Largest degree of the wide fit (default: target degree + 1).
    #[arg(long)]
    pub degree_cap: Option<usize>,
    /// Also report v_F at these sites.
    #[command(flatten)]
    pub sites: SitesArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CharsArgs {
    #[command(flatten)]
    pub lambda: LambdaArgs,
    /// Truncation order.
    #[arg(short = 'K', long = "order", default_value_t = 30)]
    pub order: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub lambda: LambdaArgs,
    /// Random nice spaces of polynomials to push through θ and ι.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Also run θ∘ι on the orbits solved at these sites.
    #[command(flatten)]
    pub sites: SitesArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Settings embedded in every report.
#[derive(Serialize, Debug, Clone)]
pub struct ReportConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub budget: SolverBudget,
}

fn parse_complex(s: &str) -> Result<C64> {
    let bad = || GaudinError::InvalidInput(format!("cannot parse complex number {s:?}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['j', 'i']) else {
        return Ok(C64::new(s.parse().map_err(|_| bad())?, 0.0));
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().map_err(|_| bad())?,
    };
    Ok(C64::new(re.parse().map_err(|_| bad())?, im))
}

pub fn parse_sites(s: &str) -> Result<Vec<C64>> {
    let s = s.trim();
    if s.starts_with('[') {
        let v: Vec<serde_json::Value> =
            serde_json::from_str(s).map_err(|e| GaudinError::InvalidInput(format!("bad site list: {e}")))?;
        return v
            .iter()
            .map(|x| match x {
                serde_json::Value::Number(n) => Ok(C64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
                _ => serde_json::from_value::<[f64; 2]>(x.clone())
                    .map(|[a, b]| C64::new(a, b))
                    .map_err(|e| GaudinError::InvalidInput(format!("bad site {x}: {e}"))),
            })
            .collect();
    }
    s.split(',').map(parse_complex).collect()
}
