//! Bethe vector averaging maps `v_F(z) = Σ F ω / Hess` over critical orbits.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bethe::OperatorDiffOp;
use crate::error::{GaudinError, Result};
use crate::json;
use crate::linalg;
use crate::master::{solve_bae, CriticalPoint, SigmaPoint, SolveReport, SolverBudget, Tolerances};
use crate::repr::{admissible_indices, raising_residual, shapovalov, MultiIndex, Partition, TensorVector};
use crate::scalar::{Cx, Real};
use crate::schubert::d_t;
use crate::weightfn::bethe_vector;

/// `σ^(a)_i` raised to a positive power.
pub type Factor = (usize, usize, u32);

/// Polynomial in the σ-coordinates, `deg σ^(a)_i = i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPolyF<R: Real = f64> {
    /// Sorted factor lists -> coefficient.
    terms: BTreeMap<Vec<Factor>, Cx<R>>,
}

impl<R: Real> SymPolyF<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: Cx<R>) -> Self {
        let mut f = Self::zero();
        f.add_term(Vec::new(), c);
        f
    }

    pub fn one() -> Self {
        Self::constant(Cx::one())
    }

    /// `σ^(a)_i`.
    pub fn sigma(a: usize, i: usize) -> Self {
        assert!(i >= 1, "σ index starts at 1");
        let mut f = Self::zero();
        f.add_term(vec![(a, i, 1)], Cx::one());
        f
    }

    fn add_term(&mut self, mut key: Vec<Factor>, c: Cx<R>) {
        key.sort();
        let mut merged: Vec<Factor> = Vec::with_capacity(key.len());
        for (a, i, p) in key {
            match merged.last_mut() {
                Some(last) if last.0 == a && last.1 == i => last.2 += p,
                _ => merged.push((a, i, p)),
            }
        }
        let e = self.terms.entry(merged).or_insert_with(Cx::zero);
        *e += c;
        if e.is_zero() {
            let k: Vec<Factor> = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).unwrap();
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Factor], Cx<R>)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), *v);
        }
        out
    }

    pub fn scale(&self, s: Cx<R>) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.add_term(k, v1 * v2);
            }
        }
        out
    }

    /// Quasi-degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.iter().map(|&(_, i, p)| i * p as usize).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|k| k.iter().map(|&(_, i, p)| i * p as usize).sum::<usize>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn eval(&self, s: &SigmaPoint<R>) -> Cx<R> {
        self.terms
            .iter()
            .map(|(k, v)| k.iter().fold(*v, |acc, &(a, i, p)| acc * s.get(a, i).powu(p)))
            .fold(Cx::zero(), |a, b| a + b)
    }

    pub fn eval_at(&self, t: &CriticalPoint<R>) -> Cx<R> {
        self.eval(&t.to_sigma())
    }
}

impl<R: Real> fmt::Display for SymPolyF<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.terms.iter().enumerate() {
            let mut parts: Vec<String> =
                k.iter().map(|&(a, i, p)| if p > 1 { format!("s{a}_{i}^{p}") } else { format!("s{a}_{i}") }).collect();
            let neg = v.im.is_zero() && v.re < R::zero();
            if !v.im.is_zero() {
                parts.insert(0, format!("({}{:+}j)", v.re, v.im));
            } else if !(v.re.abs() == R::one() && !k.is_empty()) {
                parts.insert(0, format!("{}", v.re.abs()));
            }
            let sep = match (n, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Parses sums of products such as `1`, `s1_1`, `2*s1_1^2 + s0_2 - 3`.
/// `sA_I` stands for `σ^(A)_I`.
impl<R: Real> FromStr for SymPolyF<R> {
    type Err = GaudinError;

    fn from_str(src: &str) -> Result<Self> {
        let bad = |m: &str| GaudinError::InvalidInput(format!("cannot parse polynomial {src:?}: {m}"));
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = Self::zero();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1.0, &rest[1..]),
                b'-' => (-1.0, &rest[1..]),
                _ => (1.0, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad("dangling sign"));
            }
            let mut coeff = sign;
            let mut key = Vec::new();
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('s') {
                    let (base, pow) = match var.split_once('^') {
                        Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad("power"))?),
                        None => (var, 1),
                    };
                    let (a, i) = base.split_once('_').ok_or_else(|| bad("expected sA_I"))?;
                    let a = a.parse::<usize>().map_err(|_| bad("level"))?;
                    let i = i.parse::<usize>().map_err(|_| bad("index"))?;
                    if i == 0 {
                        return Err(bad("σ index starts at 1"));
                    }
                    if pow > 0 {
                        key.push((a, i, pow));
                    }
                } else {
                    coeff *= factor.parse::<f64>().map_err(|_| bad("number"))?;
                }
            }
            out.add_term(key, Cx::new(R::lit(coeff), R::zero()));
        }
        Ok(out)
    }
}

/// Solved orbits at one `z`, with everything `v_F` needs.
#[derive(Clone, Debug)]
pub struct OrbitData<R: Real = f64> {
    pub lambda: Partition,
    pub z: Vec<Cx<R>>,
    pub points: Vec<CriticalPoint<R>>,
    pub vectors: Vec<TensorVector<R>>,
    pub hessians: Vec<Cx<R>>,
    pub report: SolveReport<R>,
}

impl<R: Real> OrbitData<R> {
    pub fn solve(lambda: &Partition, z: &[Cx<R>], seed: u64, budget: &SolverBudget, tol: &Tolerances) -> Result<Self> {
        let (points, report) = solve_bae(lambda, z, seed, budget, tol)?;
        Self::from_points(lambda, z, points, report)
    }

    pub fn from_points(
        lambda: &Partition,
        z: &[Cx<R>],
        points: Vec<CriticalPoint<R>>,
        report: SolveReport<R>,
    ) -> Result<Self> {
        let vectors = points.iter().map(bethe_vector).collect::<Result<Vec<_>>>()?;
        let hessians = points.iter().map(|p| p.hessian()).collect::<Result<Vec<_>>>()?;
        Ok(Self { lambda: lambda.clone(), z: z.to_vec(), points, vectors, hessians, report })
    }

    /// Whether all expected orbits were found, so that sums are complete.
    pub fn trusted(&self) -> bool {
        self.report.count_matches()
    }

    /// `Σ_orbits w(T) ω(T) / Hess(T)` for per-orbit weights.
    pub fn average_with(&self, weights: &[Cx<R>]) -> TensorVector<R> {
        let shape = crate::repr::TensorShape::new(self.lambda.n_parts(), self.lambda.size()).expect("validated");
        let mut out = TensorVector::zero(shape);
        for ((v, h), w) in self.vectors.iter().zip(&self.hessians).zip(weights) {
            out.add_scaled(v, w / h);
        }
        out
    }

    /// `v_F(z)`.
    pub fn v_f(&self, f: &SymPolyF<R>) -> TensorVector<R> {
        let w: Vec<Cx<R>> = self.points.iter().map(|p| f.eval_at(p)).collect();
        self.average_with(&w)
    }
}

/// `v_F(z)` with its trust flag and singularity residual.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct Averaged<R: Real = f64> {
    pub vector: TensorVector<R>,
    pub trusted: bool,
    pub raising_residual: f64,
}

pub fn v_f<R: Real>(
    lambda: &Partition,
    f: &SymPolyF<R>,
    z: &[Cx<R>],
    seed: u64,
    budget: &SolverBudget,
    tol: &Tolerances,
) -> Result<Averaged<R>> {
    let data = OrbitData::solve(lambda, z, seed, budget, tol)?;
    let vector = data.v_f(f);
    let rr = raising_residual(&vector).to_f64_lossy();
    if rr >= tol.check_tol {
        return Err(GaudinError::InvalidInput(format!("averaged vector is not singular: residual {rr:e}")));
    }
    Ok(Averaged { vector, trusted: data.trusted(), raising_residual: rr })
}

/// Exponent vectors of all monomials in `n` variables of total degree `<= d`,
/// ordered by degree then lexicographically.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 0..=d as u32 {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn eval_monomial<R: Real>(e: &[u32], z: &[Cx<R>]) -> Cx<R> {
    e.iter().zip(z).fold(Cx::one(), |acc, (&p, x)| acc * x.powu(p))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FittedCoordinate {
    #[serde(rename = "J")]
    pub j: MultiIndex,
    /// `(exponents in z, coefficient)` for every monomial with nonzero fit.
    pub terms: Vec<(Vec<u32>, [f64; 2])>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpolationReport {
    pub lambda: Partition,
    pub f: String,
    pub target_degree: usize,
    pub degree_cap: usize,
    pub monomials: usize,
    pub fit_points: usize,
    pub heldout_points: usize,
    pub dropped_points: usize,
    /// Max over held-out `z` of `‖fit − v_F‖ / rms ‖v_F‖`.
    pub max_rel_residual: f64,
    /// Share of squared coefficient mass above the target degree in a fit up
    /// to `degree_cap`.
    pub above_degree_energy: f64,
    pub residual_threshold: f64,
    pub energy_threshold: f64,
    pub passed: bool,
    pub coordinates: Vec<FittedCoordinate>,
}

/// Held-out residual threshold for polynomiality.
pub const FIT_RESIDUAL_TOL: f64 = 1e-6;
/// Above-degree energy threshold for polynomiality.
pub const FIT_ENERGY_TOL: f64 = 1e-8;
const MIN_HELDOUT: usize = 20;

/// Random sites in the unit disc with pairwise gaps of at least `0.1`.
pub fn random_sites<R: Real>(n: usize, rng: &mut impl Rng) -> Vec<Cx<R>> {
    loop {
        let z: Vec<Cx<R>> = (0..n)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                let a = rng.gen::<f64>() * std::f64::consts::TAU;
                Cx::from_polar(R::lit(r), R::lit(a))
            })
            .collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| (z[i] - z[j]).norm() > R::lit(0.1)));
        if ok {
            return z;
        }
    }
}

/// Sites paired with `v_F` there.
type Samples<R> = Vec<(Vec<Cx<R>>, TensorVector<R>)>;

fn sample_v_f<R: Real>(
    lambda: &Partition,
    f: &SymPolyF<R>,
    count: usize,
    seed: u64,
    budget: &SolverBudget,
    tol: &Tolerances,
) -> (Samples<R>, usize) {
    let out: Vec<Option<_>> = (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let z = random_sites(lambda.size(), &mut rng);
            let data = OrbitData::solve(lambda, &z, seed.wrapping_add(k as u64), budget, tol).ok()?;
            data.trusted().then(|| (z, data.v_f(f)))
        })
        .collect();
    let dropped = out.iter().filter(|o| o.is_none()).count();
    (out.into_iter().flatten().collect(), dropped)
}

fn fit<R: Real>(basis: &[Vec<u32>], samples: &Samples<R>, coords: &[usize]) -> Vec<Vec<Cx<R>>> {
    let design: linalg::Matrix<R> =
        samples.iter().map(|(z, _)| basis.iter().map(|e| eval_monomial(e, z)).collect()).collect();
    let rhs: Vec<Vec<Cx<R>>> = coords.iter().map(|&c| samples.iter().map(|(_, v)| v.get_packed(c)).collect()).collect();
    linalg::lstsq_multi(&design, &rhs, R::lit(1e-13))
}

/// Least-squares witness that `z ↦ v_F(z)` is a polynomial of degree
/// `deg F + s_λ`.
pub fn polynomiality_check<R: Real>(
    lambda: &Partition,
    f: &SymPolyF<R>,
    degree_cap: usize,
    grid_seed: u64,
    budget: &SolverBudget,
    tol: &Tolerances,
) -> Result<InterpolationReport> {
    let target = f.degree().unwrap_or(0) + lambda.degree_shift();
    if degree_cap < target {
        return Err(GaudinError::InvalidInput(format!("degree cap {degree_cap} is below the target degree {target}")));
    }
    let n = lambda.size();
    let low = monomials(n, target);
    let high = monomials(n, degree_cap);
    let n_fit = 2 * high.len().max(low.len());
    let (samples, dropped_fit) = sample_v_f(lambda, f, n_fit, grid_seed, budget, tol);
    let (heldout, dropped_held) = sample_v_f(lambda, f, MIN_HELDOUT, grid_seed ^ 0x5EED_0FF1, budget, tol);
    if samples.len() < high.len() || heldout.is_empty() {
        return Err(GaudinError::NonConvergence { attempts: dropped_fit + dropped_held });
    }
    let shape = crate::repr::TensorShape::new(lambda.n_parts(), n)?;
    let idx = admissible_indices(lambda);
    let coords: Vec<usize> = idx.iter().map(|j| shape.pack(j)).collect();

    let sol = fit(&low, &samples, &coords);
    let rms = (heldout.iter().map(|(_, v)| v.norm().powi(2)).sum::<R>() / R::lit(heldout.len() as f64)).sqrt();
    let mut worst = R::zero();
    for (z, v) in &heldout {
        let vals: Vec<Cx<R>> = low.iter().map(|e| eval_monomial(e, z)).collect();
        let mut err = R::zero();
        for (ci, &c) in coords.iter().enumerate() {
            let pred: Cx<R> = sol[ci].iter().zip(&vals).map(|(a, b)| a * b).fold(Cx::zero(), |x, y| x + y);
            err += (pred - v.get_packed(c)).norm_sqr();
        }
        worst = worst.max(err.sqrt() / rms.max(R::min_positive_value()));
    }

    let wide = fit(&high, &samples, &coords);
    let mut above = R::zero();
    let mut total = R::zero();
    for row in &wide {
        for (e, c) in high.iter().zip(row) {
            let m = c.norm_sqr();
            total += m;
            if e.iter().sum::<u32>() as usize > target {
                above += m;
            }
        }
    }
    let energy = if total.is_zero() { R::zero() } else { above / total };

    let coordinates = idx
        .iter()
        .zip(&sol)
        .map(|(j, row)| FittedCoordinate {
            j: j.clone(),
            terms: low
                .iter()
                .zip(row)
                .filter(|(_, c)| c.norm() > R::lit(1e-12) * rms)
                .map(|(e, c)| (e.clone(), json::pair(c)))
                .collect(),
        })
        .collect();
    let max_rel_residual = worst.to_f64_lossy();
    let above_degree_energy = energy.to_f64_lossy();
    Ok(InterpolationReport {
        lambda: lambda.clone(),
        f: f.to_string(),
        target_degree: target,
        degree_cap,
        monomials: low.len(),
        fit_points: samples.len(),
        heldout_points: heldout.len(),
        dropped_points: dropped_fit + dropped_held,
        max_rel_residual,
        above_degree_energy,
        residual_threshold: FIT_RESIDUAL_TOL,
        energy_threshold: FIT_ENERGY_TOL,
        passed: max_rel_residual < FIT_RESIDUAL_TOL && above_degree_energy < FIT_ENERGY_TOL,
        coordinates,
    })
}

/// `(S(v_F, ω(T_k)), F(T_k), relative error)` for orbit `k`.
pub fn f_v_pairing<R: Real>(data: &OrbitData<R>, f: &SymPolyF<R>, orbit: usize) -> Result<(Cx<R>, Cx<R>, R)> {
    let p = data.points.get(orbit).ok_or_else(|| {
        GaudinError::InvalidInput(format!("orbit index {orbit} out of range ({})", data.points.len()))
    })?;
    let value = shapovalov(&data.v_f(f), &data.vectors[orbit]);
    let expected = f.eval_at(p);
    let denom = expected.norm().max(value.norm());
    let rel = if denom.is_zero() { R::zero() } else { (value - expected).norm() / denom };
    Ok((value, expected, rel))
}

/// `max_{u,i} ‖v_{b_i(u)·G} − B_i(u) v_G‖ / ‖v_G‖`, where `b_i(u)` is read
/// off `D_T` orbit by orbit.
pub fn intertwining_check<R: Real>(data: &OrbitData<R>, g: &SymPolyF<R>, samples_u: &[Cx<R>]) -> Result<R> {
    let op = OperatorDiffOp::build(data.lambda.n_parts(), &data.z)?;
    intertwining_with(data, &op, g, samples_u)
}

/// As [`intertwining_check`] with a prebuilt operator.
pub fn intertwining_with<R: Real>(
    data: &OrbitData<R>,
    op: &OperatorDiffOp<R>,
    g: &SymPolyF<R>,
    samples_u: &[Cx<R>],
) -> Result<R> {
    let gw: Vec<Cx<R>> = data.points.iter().map(|p| g.eval_at(p)).collect();
    let vg = data.average_with(&gw);
    let norm = vg.norm();
    if norm.is_zero() {
        return Err(GaudinError::InvalidInput("v_G vanishes at this z".into()));
    }
    let dts = data.points.iter().map(d_t).collect::<Result<Vec<_>>>()?;
    let mut worst = R::zero();
    for &u in samples_u {
        for i in 1..=op.order() {
            let w: Vec<Cx<R>> =
                dts.iter().zip(&gw).map(|(d, gv)| d.eval_coeff(i, u).map(|b| b * gv)).collect::<Result<Vec<_>>>()?;
            let lhs = data.average_with(&w);
            let rhs = op.apply_bi(i, u, &vg)?;
            worst = worst.max(lhs.sub(&rhs).norm() / norm);
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub s: Vec<f64>,
    /// `None` where the solver failed or the orbit count was short.
    pub norms: Vec<Option<f64>>,
    pub failures: usize,
    pub max_norm: f64,
    pub median_norm: f64,
    /// Norms strictly increase over the last steps towards the endpoint.
    pub monotone_growth: bool,
    /// `max_norm < 10 × median_norm`.
    pub bounded: bool,
}

/// Geometric grid from `1` down to `s_min` with `steps` points.
pub fn geometric_path(s_min: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(2);
    (0..steps).map(|k| s_min.powf(k as f64 / (steps - 1) as f64)).collect()
}

/// `‖v_F(z(s))‖` along a path approaching a collision.
pub fn boundedness_probe<R: Real>(
    lambda: &Partition,
    f: &SymPolyF<R>,
    path: impl Fn(f64) -> Vec<Cx<R>> + Sync,
    s: &[f64],
    seed: u64,
    budget: &SolverBudget,
    tol: &Tolerances,
) -> ProbeReport {
    let norms: Vec<Option<f64>> = s
        .par_iter()
        .map(|&sv| {
            let data = OrbitData::solve(lambda, &path(sv), seed, budget, tol).ok()?;
            data.trusted().then(|| data.v_f(f).norm().to_f64_lossy())
        })
        .collect();
    let ok: Vec<f64> = norms.iter().flatten().copied().collect();
    let mut sorted = ok.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = if sorted.is_empty() { 0.0 } else { sorted[sorted.len() / 2] };
    let max = sorted.last().copied().unwrap_or(0.0);
    let tail = ok.len().min(5);
    let monotone_growth = tail >= 3 && ok[ok.len() - tail..].windows(2).all(|w| w[1] > w[0] * 1.5);
    ProbeReport {
        s: s.to_vec(),
        failures: norms.iter().filter(|n| n.is_none()).count(),
        norms,
        max_norm: max,
        median_norm: median,
        monotone_growth,
        bounded: max <= 10.0 * median || max == 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Cx<f64> {
        crate::scalar::re(x)
    }

    #[test]
    fn sympoly_parse_and_eval() {
        let f: SymPolyF<f64> = "2*s1_1^2 - s0_2 + 3".parse().unwrap();
        assert_eq!(f.degree(), Some(2));
        assert!(!f.is_homogeneous());
        let s = SigmaPoint { levels: vec![vec![re(1.0), re(5.0)], vec![re(2.0)]] };
        assert_eq!(f.eval(&s), re(2.0 * 4.0 - 5.0 + 3.0));
        let g = SymPolyF::<f64>::sigma(1, 1).mul(&SymPolyF::sigma(1, 1));
        assert_eq!(g.eval(&s), re(4.0));
        assert!("s1_0".parse::<SymPolyF<f64>>().is_err());
        assert!("".parse::<SymPolyF<f64>>().is_err());
        let back: SymPolyF<f64> = f.to_string().parse().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(monomials(4, 2).len(), 15);
    }

    #[test]
    fn closed_form_average() {
        let lam = Partition::new(vec![1, 1]).unwrap();
        let z = vec![re(0.0), re(2.0)];
        let (b, t) = (SolverBudget::default(), Tolerances::default());
        let a = v_f(&lam, &SymPolyF::one(), &z, 1, &b, &t).unwrap();
        assert!(a.trusted);
        assert!((a.vector.get(&[2, 1]) - re(0.5)).norm() < 1e-12);
        assert!((a.vector.get(&[1, 2]) - re(-0.5)).norm() < 1e-12);
        let a = v_f(&lam, &SymPolyF::sigma(1, 1), &z, 1, &b, &t).unwrap();
        assert!((a.vector.get(&[2, 1]) - re(0.5)).norm() < 1e-12);
        let top = Partition::new(vec![2, 0]).unwrap();
        let a = v_f(&top, &SymPolyF::one(), &z, 1, &b, &t).unwrap();
        assert_eq!(a.vector, TensorVector::highest(a.vector.shape()));
    }

    #[test]
    fn closed_form_identities() {
        let lam = Partition::new(vec![1, 1]).unwrap();
        let z = vec![re(0.0), re(2.0)];
        let data = OrbitData::solve(&lam, &z, 1, &SolverBudget::default(), &Tolerances::default()).unwrap();
        let (v, e, rel) = f_v_pairing(&data, &SymPolyF::one(), 0).unwrap();
        assert!((v - re(1.0)).norm() < 1e-12 && e == re(1.0) && rel < 1e-12);
        let r = intertwining_check(&data, &SymPolyF::one(), &[re(3.0)]).unwrap();
        assert!(r < 1e-10);
    }

    #[test]
    fn probe_closed_form() {
        let lam = Partition::new(vec![1, 1]).unwrap();
        let s = geometric_path(1e-3, 6);
        let rep = boundedness_probe(
            &lam,
            &SymPolyF::one(),
            |s| vec![re(0.0), re(s)],
            &s,
            0,
            &SolverBudget::default(),
            &Tolerances::default(),
        );
        assert_eq!(rep.failures, 0);
        for (sv, n) in rep.s.iter().zip(&rep.norms) {
            assert!((n.unwrap() - sv / 8f64.sqrt()).abs() < 1e-12);
        }
        assert!(!rep.monotone_growth);
    }

    #[test]
    fn small_fits_are_exact() {
        let (b, t) = (SolverBudget::default(), Tolerances::default());
        let lam = Partition::new(vec![1, 1]).unwrap();
        let r = polynomiality_check(&lam, &SymPolyF::<f64>::one(), 2, 3, &b, &t).unwrap();
        assert_eq!(r.target_degree, 1);
        assert!(r.passed && r.max_rel_residual < 1e-10);
        let c = &r.coordinates[0];
        assert_eq!(c.j, vec![1, 2]);
        let coef = |e: &[u32]| c.terms.iter().find(|(x, _)| x == e).map(|(_, v)| v[0]).unwrap_or(0.0);
        assert!((coef(&[1, 0]) - 0.25).abs() < 1e-10 && (coef(&[0, 1]) + 0.25).abs() < 1e-10);
        let top = Partition::new(vec![2, 0]).unwrap();
        let r = polynomiality_check(&top, &SymPolyF::<f64>::one(), 1, 3, &b, &t).unwrap();
        assert!(r.passed && r.target_degree == 0 && r.max_rel_residual < 1e-12);
        assert!(polynomiality_check(&lam, &SymPolyF::<f64>::one(), 0, 3, &b, &t).is_err());
    }

    #[test]
    fn two_orbit_identities() {
        let lam = Partition::new(vec![2, 2]).unwrap();
        let z = vec![re(0.0), re(1.0), re(3.0), re(7.0)];
        let data = OrbitData::solve(&lam, &z, 0, &SolverBudget::default(), &Tolerances::default()).unwrap();
        assert_eq!(data.points.len(), 2);
        for f in [SymPolyF::<f64>::one(), SymPolyF::sigma(1, 1)] {
            for k in 0..2 {
                assert!(f_v_pairing(&data, &f, k).unwrap().2 < 1e-8);
            }
        }
        assert!(f_v_pairing(&data, &SymPolyF::one(), 2).is_err());
        let us = [re(10.0), Cx::new(4.0, 3.0)];
        assert!(intertwining_check(&data, &SymPolyF::one(), &us).unwrap() < 1e-7);
    }
}
