//! Master function and Bethe ansatz equations, with a seeded solver that
//! returns one representative per symmetry orbit.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GaudinError, Result};
use crate::json;
use crate::linalg;
use crate::poly::{elem_symmetric, wronskian, Polynomial};
use crate::repr::{singular_dim, Partition};
use crate::scalar::{cmp_re_im, Cx, Real};
use crate::schubert::{root_coordinates, PolySpace};

/// Minimum separation between coordinates that share a denominator.
pub const COORD_GAP_TOL: f64 = 1e-8;

/// Variables `T = (z, t^(1), …, t^(N-1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint<R: Real = f64> {
    z: Vec<Cx<R>>,
    /// `t[a-1]` is level `a`.
    t: Vec<Vec<Cx<R>>>,
}

impl<R: Real> CriticalPoint<R> {
    /// Validates level sizes and the distinctness conditions.
    pub fn new(z: Vec<Cx<R>>, t: Vec<Vec<Cx<R>>>) -> Result<Self> {
        let p = Self { z, t };
        p.partition()?;
        p.check_distinct()?;
        Ok(p)
    }

    /// No validation; for intermediate iterates.
    pub fn new_unchecked(z: Vec<Cx<R>>, t: Vec<Vec<Cx<R>>>) -> Self {
        Self { z, t }
    }

    pub fn z(&self) -> &[Cx<R>] {
        &self.z
    }

    pub fn t(&self) -> &[Vec<Cx<R>>] {
        &self.t
    }

    /// `N`.
    pub fn n_dim(&self) -> usize {
        self.t.len() + 1
    }

    /// Coordinates of level `a` (`0` is `z`, `N` is empty).
    pub fn level(&self, a: usize) -> &[Cx<R>] {
        match a {
            0 => &self.z,
            a if a <= self.t.len() => &self.t[a - 1],
            _ => &[],
        }
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        (0..self.n_dim()).map(|a| self.level(a).len()).collect()
    }

    pub fn partition(&self) -> Result<Partition> {
        Partition::from_level_sizes(&self.level_sizes())
    }

    /// Number of Bethe variables.
    pub fn var_count(&self) -> usize {
        self.t.iter().map(Vec::len).sum()
    }

    /// Bethe variables flattened level by level.
    pub fn flat_t(&self) -> Vec<Cx<R>> {
        self.t.iter().flatten().copied().collect()
    }

    pub fn with_flat_t(&self, flat: &[Cx<R>]) -> Self {
        let mut t = Vec::with_capacity(self.t.len());
        let mut off = 0;
        for lvl in &self.t {
            t.push(flat[off..off + lvl.len()].to_vec());
            off += lvl.len();
        }
        Self { z: self.z.clone(), t }
    }

    /// `T ↦ cT`.
    pub fn scaled(&self, c: Cx<R>) -> Self {
        Self {
            z: self.z.iter().map(|x| x * c).collect(),
            t: self.t.iter().map(|l| l.iter().map(|x| x * c).collect()).collect(),
        }
    }

    /// Sorts every level by (Re, Im).
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        for l in &mut out.t {
            l.sort_by(cmp_re_im);
        }
        out
    }

    /// Smallest gap among coordinates sharing a denominator, with its level.
    pub fn min_gap(&self) -> (usize, R) {
        let mut worst = (0, R::infinity());
        for a in 1..self.n_dim() {
            let lvl = self.level(a);
            for i in 0..lvl.len() {
                for j in i + 1..lvl.len() {
                    let g = (lvl[i] - lvl[j]).norm();
                    if g < worst.1 {
                        worst = (a, g);
                    }
                }
                for nb in [a - 1, a + 1] {
                    for y in self.level(nb) {
                        let g = (lvl[i] - y).norm();
                        if g < worst.1 {
                            worst = (a, g);
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn check_distinct(&self) -> Result<()> {
        let (level, gap) = self.min_gap();
        if gap <= R::lit(COORD_GAP_TOL) {
            return Err(GaudinError::CoincidentCoordinates { level, gap: gap.to_f64_lossy() });
        }
        Ok(())
    }

    /// `log Φ`, principal branch per factor.
    pub fn log_phi(&self) -> Result<Cx<R>> {
        self.check_distinct()?;
        let two = R::lit(2.0);
        let mut acc = Cx::<R>::zero();
        for a in 1..self.n_dim() {
            let lvl = self.level(a);
            for i in 0..lvl.len() {
                for j in i + 1..lvl.len() {
                    acc += (lvl[i] - lvl[j]).ln() * two;
                }
            }
        }
        for a in 0..self.n_dim().saturating_sub(1) {
            for x in self.level(a) {
                for y in self.level(a + 1) {
                    acc -= (x - y).ln();
                }
            }
        }
        Ok(acc)
    }

    fn residual_raw(&self) -> Vec<Cx<R>> {
        let two = R::lit(2.0);
        let mut out = Vec::with_capacity(self.var_count());
        for a in 1..self.n_dim() {
            let lvl = self.level(a);
            for (i, &ti) in lvl.iter().enumerate() {
                let mut r = Cx::<R>::zero();
                for y in self.level(a - 1) {
                    r += (ti - y).inv();
                }
                for (j, &tj) in lvl.iter().enumerate() {
                    if j != i {
                        r -= (ti - tj).inv() * two;
                    }
                }
                for y in self.level(a + 1) {
                    r += (ti - y).inv();
                }
                out.push(r);
            }
        }
        out
    }

    /// Bethe ansatz residual, equal to `-∇_t log Φ`.
    pub fn bae_residual(&self) -> Result<Vec<Cx<R>>> {
        self.check_distinct()?;
        Ok(self.residual_raw())
    }

    /// `∂R/∂t`, the Jacobian of the residual.
    fn jacobian_raw(&self) -> linalg::Matrix<R> {
        let m = self.var_count();
        let mut jac = linalg::zeros::<R>(m, m);
        let offsets: Vec<usize> = std::iter::once(0)
            .chain(self.t.iter().scan(0, |s, l| {
                *s += l.len();
                Some(*s)
            }))
            .collect();
        let two = R::lit(2.0);
        for a in 1..self.n_dim() {
            let lvl = self.level(a);
            let off = offsets[a - 1];
            for (i, &ti) in lvl.iter().enumerate() {
                let row = off + i;
                let mut diag = Cx::<R>::zero();
                for y in self.level(a - 1) {
                    diag -= (ti - y).inv().powu(2);
                }
                for y in self.level(a + 1) {
                    diag -= (ti - y).inv().powu(2);
                }
                for (k, &tk) in lvl.iter().enumerate() {
                    if k != i {
                        let w = (ti - tk).inv().powu(2) * two;
                        diag += w;
                        jac[row][off + k] = -w;
                    }
                }
                jac[row][row] = diag;
                for nb in [a - 1, a + 1] {
                    if nb == 0 || nb >= self.n_dim() {
                        continue;
                    }
                    let noff = offsets[nb - 1];
                    for (k, &y) in self.level(nb).iter().enumerate() {
                        jac[row][noff + k] = (ti - y).inv().powu(2);
                    }
                }
            }
        }
        jac
    }

    /// Second-derivative matrix of `log Φ` in the Bethe variables.
    pub fn hessian_matrix(&self) -> Result<linalg::Matrix<R>> {
        self.check_distinct()?;
        let mut h = self.jacobian_raw();
        for row in &mut h {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
        Ok(h)
    }

    /// `det` of the Hessian; the empty determinant is one.
    pub fn hessian(&self) -> Result<Cx<R>> {
        Ok(linalg::det(&self.hessian_matrix()?))
    }

    pub fn to_sigma(&self) -> SigmaPoint<R> {
        SigmaPoint { levels: (0..self.n_dim()).map(|a| elem_symmetric(self.level(a))).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct WirePoint {
    z: Vec<[f64; 2]>,
    t: BTreeMap<String, Vec<[f64; 2]>>,
}

impl<R: Real> Serialize for CriticalPoint<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WirePoint {
            z: json::pairs(&self.z),
            t: self.t.iter().enumerate().map(|(a, l)| ((a + 1).to_string(), json::pairs(l))).collect(),
        }
        .serialize(s)
    }
}

impl<'de, R: Real> Deserialize<'de> for CriticalPoint<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WirePoint::deserialize(d)?;
        let mut t = Vec::with_capacity(w.t.len());
        for a in 1..=w.t.len() {
            let lvl = w.t.get(&a.to_string()).ok_or_else(|| serde::de::Error::custom(format!("missing level {a}")))?;
            t.push(json::unpairs(lvl));
        }
        let p = CriticalPoint { z: json::unpairs(&w.z), t };
        p.partition().map_err(serde::de::Error::custom)?;
        Ok(p)
    }
}

/// Elementary symmetric functions of every level, `a = 0..N-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SigmaPoint<R: Real = f64> {
    #[serde(with = "json::cx_vec_vec")]
    pub levels: Vec<Vec<Cx<R>>>,
}

impl<R: Real> SigmaPoint<R> {
    /// `σ^(a)_i`, zero when `i` exceeds the level size.
    pub fn get(&self, a: usize, i: usize) -> Cx<R> {
        self.levels.get(a).and_then(|l| l.get(i.wrapping_sub(1))).copied().unwrap_or_else(Cx::zero)
    }

    /// Largest coordinate difference relative to `max(1, |σ|)`.
    pub fn distance(&self, other: &Self) -> R {
        let mut worst = R::zero();
        for (a, b) in self.levels.iter().zip(&other.levels) {
            if a.len() != b.len() {
                return R::infinity();
            }
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).norm() / R::one().max(x.norm()).max(y.norm()));
            }
        }
        if self.levels.len() != other.levels.len() {
            return R::infinity();
        }
        worst
    }

    fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.levels.iter().zip(&other.levels) {
            for (x, y) in a.iter().zip(b) {
                let o = cmp_re_im(x, y);
                if o.is_ne() {
                    return o;
                }
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// Numerical thresholds shared by the solver and the checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub newton_tol: f64,
    pub dedup_tol: f64,
    pub hess_floor: f64,
    pub check_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { newton_tol: 1e-10, dedup_tol: 1e-6, hess_floor: 1e-8, check_tol: 1e-8 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("newton_tol", self.newton_tol),
            ("dedup_tol", self.dedup_tol),
            ("hess_floor", self.hess_floor),
            ("check_tol", self.check_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(GaudinError::InvalidInput(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverBudget {
    /// Starts per attempt are `starts_multiplier * expected * Π l_a!`.
    pub starts_multiplier: usize,
    /// Extra attempts with fresh seeds when orbits are missing.
    pub retries: usize,
    pub max_iter: usize,
}

impl Default for SolverBudget {
    fn default() -> Self {
        Self { starts_multiplier: 50, retries: 3, max_iter: 200 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct OrbitInfo<R: Real = f64> {
    pub residual: f64,
    #[serde(with = "json::cx_one")]
    pub hessian: Cx<R>,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SolveReport<R: Real = f64> {
    pub lambda: Partition,
    pub seed: u64,
    pub expected: usize,
    pub found: usize,
    pub attempts: usize,
    pub starts: usize,
    pub converged_starts: usize,
    pub orbits: Vec<OrbitInfo<R>>,
}

impl<R: Real> SolveReport<R> {
    pub fn count_matches(&self) -> bool {
        self.found == self.expected
    }

    pub fn all_nondegenerate(&self) -> bool {
        self.orbits.iter().all(|o| o.nondegenerate)
    }

    /// `CountMismatch` when the orbit count disagrees with the expected one.
    pub fn check_count(&self) -> Result<()> {
        if self.count_matches() {
            Ok(())
        } else {
            Err(GaudinError::CountMismatch { found: self.found, expected: self.expected })
        }
    }
}

fn max_abs<R: Real>(v: &[Cx<R>]) -> R {
    v.iter().map(|c| c.norm()).fold(R::zero(), R::max)
}

/// Damped Newton from one start. `None` if it fails or leaves the domain.
fn newton<R: Real>(
    start: CriticalPoint<R>,
    budget: &SolverBudget,
    tol: R,
    rng: &mut ChaCha8Rng,
    (centre, scale): (Cx<R>, R),
) -> Option<CriticalPoint<R>> {
    let gap_tol = R::lit(COORD_GAP_TOL);
    // the residual decays like 1/|t| as roots run off to infinity
    let far = scale * R::lit(1e3);
    let escaped = |p: &CriticalPoint<R>| p.t.iter().flatten().any(|x| (x - centre).norm() > far);
    let mut p = start;
    let mut perturbed = false;
    let mut res = p.residual_raw();
    let mut rn = max_abs(&res);
    let mut polish = 0;
    for _ in 0..budget.max_iter {
        if !rn.is_finite() {
            return None;
        }
        if rn < tol {
            // two extra steps to settle the last digits
            polish += 1;
            if polish > 2 {
                return Some(p);
            }
        }
        let jac = p.jacobian_raw();
        let neg: Vec<Cx<R>> = res.iter().map(|r| -r).collect();
        let step = linalg::solve(&jac, &neg)?;
        let x = p.flat_t();
        let mut damp = R::one();
        let mut accepted = false;
        for halving in 0..MAX_HALVINGS {
            let trial: Vec<Cx<R>> = x.iter().zip(&step).map(|(a, d)| a + d * damp).collect();
            let q = p.with_flat_t(&trial);
            if q.min_gap().1 <= gap_tol || escaped(&q) {
                damp *= R::lit(0.5);
                continue;
            }
            let qres = q.residual_raw();
            let qn = max_abs(&qres);
            if qn.is_finite() && (qn <= rn || polish > 0 || halving + 1 == MAX_HALVINGS) {
                p = q;
                res = qres;
                rn = qn;
                accepted = true;
                break;
            }
            damp *= R::lit(0.5);
        }
        if !accepted {
            if perturbed {
                return None;
            }
            perturbed = true;
            let jitter: Vec<Cx<R>> = x
                .iter()
                .map(|a| {
                    a + Cx::new(R::lit(rng.gen_range(-1.0..1.0)), R::lit(rng.gen_range(-1.0..1.0)))
                        * (scale * R::lit(1e-3))
                })
                .collect();
            p = p.with_flat_t(&jitter);
            if p.min_gap().1 <= gap_tol {
                return None;
            }
            res = p.residual_raw();
            rn = max_abs(&res);
        }
    }
    (rn < tol).then_some(p)
}

fn check_sites<R: Real>(z: &[Cx<R>]) -> Result<()> {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let g = (z[i] - z[j]).norm();
            if g <= R::lit(COORD_GAP_TOL) {
                return Err(GaudinError::DegenerateSites { gap: g.to_f64_lossy() });
            }
        }
    }
    Ok(())
}

/// Centre and radius of the start disc: `mean(z)` and `2 max |z_i - mean(z)|`
/// (one when all sites coincide with the mean).
pub fn start_disc<R: Real>(z: &[Cx<R>]) -> (Cx<R>, R) {
    let n = R::lit(z.len().max(1) as f64);
    let c = z.iter().fold(Cx::<R>::zero(), |a, b| a + b) / n;
    let r = z.iter().map(|x| (x - c).norm()).fold(R::zero(), R::max) * R::lit(2.0);
    (c, if r > R::zero() { r } else { R::one() })
}

/// Flag coordinates `c` of `X` with `Wr_X = Π (u - z_s)`, as a square
/// polynomial system. The Wronski map is finite, so Newton iterates on it do
/// not drift to infinity the way Bethe roots can.
struct WronskiSystem<R: Real> {
    lambda: Partition,
    target: Vec<Cx<R>>,
    lead: Cx<R>,
}

impl<R: Real> WronskiSystem<R> {
    fn new(lambda: &Partition, z: &[Cx<R>]) -> Result<Self> {
        let origin = PolySpace::from_coordinates(lambda, &vec![Cx::zero(); lambda.size()])?;
        let lead = wronskian(origin.basis()).leading();
        Ok(Self { lambda: lambda.clone(), target: Polynomial::from_roots(z).into_coeffs(), lead })
    }

    fn residual(&self, x: &PolySpace<R>) -> Vec<Cx<R>> {
        let w = wronskian(x.basis());
        (0..self.lambda.size()).map(|k| w.coeff(k) / self.lead - self.target[k]).collect()
    }

    /// Columns are `Wr` with one basis element replaced by the monomial that
    /// carries the coordinate (the Wronskian is multilinear).
    fn jacobian(&self, x: &PolySpace<R>) -> linalg::Matrix<R> {
        let n = self.lambda.size();
        let d = self.lambda.exponents();
        let mut jac = linalg::zeros::<R>(n, n);
        let mut col = 0;
        for i in 0..d.len() {
            for j in 1..=d[i] {
                if d.contains(&(d[i] - j)) {
                    continue;
                }
                let mut b = x.basis().to_vec();
                b[i] = Polynomial::monomial(d[i] - j, Cx::one());
                let w = wronskian(&b);
                for (k, row) in jac.iter_mut().enumerate() {
                    row[col] = w.coeff(k) / self.lead;
                }
                col += 1;
            }
        }
        jac
    }

    fn solve(&self, mut c: Vec<Cx<R>>, max_iter: usize) -> Option<Vec<Cx<R>>> {
        let tol = R::lit(1e3) * R::epsilon();
        let mut x = PolySpace::from_coordinates(&self.lambda, &c).ok()?;
        let mut res = self.residual(&x);
        let mut rn = max_abs(&res);
        for _ in 0..max_iter {
            if !rn.is_finite() {
                return None;
            }
            if rn < tol {
                return Some(c);
            }
            let neg: Vec<Cx<R>> = res.iter().map(|r| -r).collect();
            let step = linalg::solve(&self.jacobian(&x), &neg)?;
            let mut damp = R::one();
            for halving in 0..MAX_HALVINGS {
                let trial: Vec<Cx<R>> = c.iter().zip(&step).map(|(a, s)| a + s * damp).collect();
                let y = PolySpace::from_coordinates(&self.lambda, &trial).ok()?;
                let yres = self.residual(&y);
                let yn = max_abs(&yres);
                if yn.is_finite() && (yn <= rn || halving + 1 == MAX_HALVINGS) {
                    c = trial;
                    x = y;
                    res = yres;
                    rn = yn;
                    break;
                }
                damp *= R::lit(0.5);
            }
        }
        (rn < R::lit(1e-8)).then_some(c)
    }
}

const BATCH: usize = 64;
const MAX_HALVINGS: usize = 8;

/// Finds critical points of the master function for `λ` and sites `z`.
///
/// Returns one representative per orbit, sorted by σ-coordinates, and a
/// report. A short count is reported, not raised; see
/// [`SolveReport::check_count`].
pub fn solve_bae<R: Real>(
    lambda: &Partition,
    z: &[Cx<R>],
    seed: u64,
    budget: &SolverBudget,
    tol: &Tolerances,
) -> Result<(Vec<CriticalPoint<R>>, SolveReport<R>)> {
    tol.validate()?;
    if lambda.size() != z.len() {
        return Err(GaudinError::InvalidInput(format!(
            "partition {lambda} has size {} but {} sites were given",
            lambda.size(),
            z.len()
        )));
    }
    check_sites(z)?;
    let expected = singular_dim(lambda);
    let nd = lambda.n_parts();
    let hess_floor = R::lit(tol.hess_floor);
    let info = |p: &CriticalPoint<R>| -> Result<OrbitInfo<R>> {
        let h = p.hessian()?;
        Ok(OrbitInfo {
            residual: max_abs(&p.bae_residual()?).to_f64_lossy(),
            hessian: h,
            nondegenerate: h.norm() > hess_floor,
        })
    };
    if lambda.bethe_variable_count() == 0 {
        let p = CriticalPoint::new(z.to_vec(), vec![Vec::new(); nd - 1])?;
        let report = SolveReport {
            lambda: lambda.clone(),
            seed,
            expected,
            found: 1,
            attempts: 0,
            starts: 0,
            converged_starts: 0,
            orbits: vec![info(&p)?],
        };
        return Ok((vec![p], report));
    }
    let (centre, radius) = start_disc(z);
    let unit_z: Vec<Cx<R>> = z.iter().map(|x| (x - centre) / radius).collect();
    let wronski = WronskiSystem::new(lambda, &unit_z)?;
    let per_attempt = budget.starts_multiplier.max(1) * expected * lambda.orbit_size();
    let newton_tol = R::lit(tol.newton_tol);
    let dedup = R::lit(tol.dedup_tol);
    let mut found: Vec<(SigmaPoint<R>, CriticalPoint<R>)> = Vec::new();
    let mut starts = 0;
    let mut converged = 0;
    let mut attempts = 0;
    'attempts: for attempt in 0..=budget.retries {
        attempts += 1;
        let attempt_seed = seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut begin = 0;
        while begin < per_attempt {
            let end = (begin + BATCH).min(per_attempt);
            let batch: Vec<Option<CriticalPoint<R>>> = (begin..end)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed);
                    rng.set_stream(k as u64);
                    let coords: Vec<Cx<R>> = (0..lambda.size())
                        .map(|_| {
                            let rr = R::lit(2.0 * rng.gen::<f64>().sqrt());
                            let ang = R::lit(rng.gen::<f64>() * std::f64::consts::TAU);
                            Cx::from_polar(rr, ang)
                        })
                        .collect();
                    let coords = wronski.solve(coords, budget.max_iter)?;
                    let x = PolySpace::from_coordinates(lambda, &coords).ok()?;
                    let unit = root_coordinates(&x).ok()?;
                    let t: Vec<Vec<Cx<R>>> =
                        unit.t().iter().map(|l| l.iter().map(|w| centre + w * radius).collect()).collect();
                    let start = CriticalPoint::new_unchecked(z.to_vec(), t);
                    if start.min_gap().1 <= R::lit(COORD_GAP_TOL) {
                        return None;
                    }
                    newton(start, budget, newton_tol, &mut rng, (centre, radius))
                })
                .collect();
            starts += end - begin;
            for p in batch.into_iter().flatten() {
                converged += 1;
                if p.check_distinct().is_err() {
                    continue;
                }
                let s = p.to_sigma();
                if found.iter().all(|(q, _)| q.distance(&s) > dedup) {
                    found.push((s, p.canonical()));
                }
            }
            if found.len() >= expected {
                break 'attempts;
            }
            begin = end;
        }
    }
    found.sort_by(|a, b| a.0.cmp_key(&b.0));
    let points: Vec<CriticalPoint<R>> = found.into_iter().map(|(_, p)| p).collect();
    let orbits = points.iter().map(info).collect::<Result<Vec<_>>>()?;
    let report = SolveReport {
        lambda: lambda.clone(),
        seed,
        expected,
        found: points.len(),
        attempts,
        starts,
        converged_starts: converged,
        orbits,
    };
    Ok((points, report))
}
