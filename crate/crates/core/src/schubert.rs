//! Spaces of polynomials in a Schubert cell and the maps θ, ι to critical points.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bethe::DiffOp;
use crate::error::{GaudinError, Result};
use crate::linalg;
use crate::master::{CriticalPoint, SigmaPoint};
use crate::poly::{roots_report, wronskian, Polynomial};
use crate::ratfn::RationalFn;
use crate::repr::Partition;
use crate::scalar::{Cx, Real};

/// Relative tolerance of the kernel check in [`d_x`].
pub const KERNEL_CHECK_TOL: f64 = 1e-9;
/// Relative singular-value threshold used by [`iota`].
pub const NULLSPACE_TOL: f64 = 1e-8;

/// Monic order-`N` operator `∂^N + Σ_i b_i(u) ∂^(N-i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarDiffOp<R: Real = f64> {
    b: Vec<RationalFn<R>>,
}

impl<R: Real> ScalarDiffOp<R> {
    /// From `b_1, …, b_N`.
    pub fn new(b: Vec<RationalFn<R>>) -> Self {
        Self { b }
    }

    /// From a normal-ordered operator whose leading coefficient is one.
    pub fn from_monic(op: DiffOp<R, Cx<R>>) -> Result<Self> {
        let mut terms = op.into_terms();
        let lead = terms.pop().ok_or_else(|| GaudinError::InvalidInput("zero differential operator".into()))?;
        let is_one = lead.poles().is_empty()
            && lead.poly_terms().len() == 1
            && lead.poly_terms().get(&0).is_some_and(|c| (c - Cx::<R>::one()).norm() <= R::coeff_floor());
        if !is_one {
            return Err(GaudinError::InvalidInput("operator is not monic".into()));
        }
        terms.reverse();
        Ok(Self { b: terms })
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `b_i` for `i = 1..=N`.
    pub fn coeff(&self, i: usize) -> &RationalFn<R> {
        &self.b[i - 1]
    }

    pub fn eval_coeff(&self, i: usize, u: Cx<R>) -> Result<Cx<R>> {
        if i == 0 || i > self.order() {
            return Err(GaudinError::InvalidInput(format!("coefficient index {i} out of 1..={}", self.order())));
        }
        self.b[i - 1].eval(u)
    }

    pub fn eval_coeffs(&self, u: Cx<R>) -> Result<Vec<Cx<R>>> {
        self.b.iter().map(|f| f.eval(u)).collect()
    }

    /// Nearest pole of any coefficient.
    pub fn pole_distance(&self, u: Cx<R>) -> R {
        self.b.iter().map(|f| f.pole_distance(u)).fold(R::infinity(), R::min)
    }

    /// `(D p)(u)` together with `Σ |terms|` for relative comparisons.
    pub fn apply_at(&self, p: &Polynomial<R>, u: Cx<R>) -> Result<(Cx<R>, R)> {
        let n = self.order();
        let mut d = p.clone();
        let mut derivs = vec![p.eval(u)];
        for _ in 0..n {
            d = d.derivative();
            derivs.push(d.eval(u));
        }
        let mut acc = derivs[n];
        let mut mag = derivs[n].norm();
        for i in 1..=n {
            let term = self.b[i - 1].eval(u)? * derivs[n - i];
            acc += term;
            mag += term.norm();
        }
        Ok((acc, mag))
    }
}

/// A point of the Schubert cell, held by its flag basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySpace<R: Real = f64> {
    lambda: Partition,
    basis: Vec<Polynomial<R>>,
}

impl<R: Real> PolySpace<R> {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn basis(&self) -> &[Polynomial<R>] {
        &self.basis
    }

    /// Free coordinates `f_ij` (`j = 1..d_i`, `d_i - j ∉ P`), row by row.
    pub fn coordinates(&self) -> Vec<Cx<R>> {
        let d = self.lambda.exponents();
        let mut out = Vec::new();
        for (i, f) in self.basis.iter().enumerate() {
            for j in 1..=d[i] {
                if !d.contains(&(d[i] - j)) {
                    out.push(f.coeff(d[i] - j));
                }
            }
        }
        out
    }

    /// Builds the flag basis from free coordinates in [`Self::coordinates`] order.
    pub fn from_coordinates(lambda: &Partition, coords: &[Cx<R>]) -> Result<Self> {
        let d = lambda.exponents();
        let mut it = coords.iter();
        let mut basis = Vec::with_capacity(d.len());
        for &di in &d {
            let mut c = vec![Cx::<R>::zero(); di + 1];
            c[di] = Cx::one();
            for j in 1..=di {
                if !d.contains(&(di - j)) {
                    c[di - j] =
                        *it.next().ok_or_else(|| GaudinError::InvalidInput("too few flag coordinates".into()))?;
                }
            }
            basis.push(Polynomial::new(c));
        }
        if it.next().is_some() {
            return Err(GaudinError::InvalidInput("too many flag coordinates".into()));
        }
        Ok(Self { lambda: lambda.clone(), basis })
    }

    /// Largest coefficient difference between the two flag bases.
    pub fn distance(&self, other: &Self) -> R {
        if self.lambda != other.lambda {
            return R::infinity();
        }
        let mut worst = R::zero();
        for (f, g) in self.basis.iter().zip(&other.basis) {
            let k = f.coeffs().len().max(g.coeffs().len());
            for j in 0..k {
                worst = worst.max((f.coeff(j) - g.coeff(j)).norm());
            }
        }
        worst
    }
}

#[derive(Serialize, Deserialize)]
struct WireSpace {
    lambda: Partition,
    flag_basis: Vec<Vec<[f64; 2]>>,
}

impl<R: Real> Serialize for PolySpace<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireSpace {
            lambda: self.lambda.clone(),
            flag_basis: self.basis.iter().map(|f| crate::json::pairs(f.coeffs())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, R: Real> Deserialize<'de> for PolySpace<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WireSpace::deserialize(d)?;
        let raw: Vec<Polynomial<R>> = w.flag_basis.iter().map(|c| Polynomial::new(crate::json::unpairs(c))).collect();
        flag_basis(&raw, Some(&w.lambda)).map_err(serde::de::Error::custom)
    }
}

/// Reduces a spanning set of `N` polynomials to the flag basis.
///
/// With `expected` given, the degree set must match that partition.
pub fn flag_basis<R: Real>(raw: &[Polynomial<R>], expected: Option<&Partition>) -> Result<PolySpace<R>> {
    let n = raw.len();
    if n == 0 {
        return Err(GaudinError::NotInCell("empty spanning set".into()));
    }
    let top = raw.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    // rows[r][k] = coefficient of u^k
    let mut rows: Vec<Vec<Cx<R>>> = raw.iter().map(|p| (0..=top).map(|k| p.coeff(k)).collect()).collect();
    let scale = rows.iter().flatten().map(|c| c.norm()).fold(R::zero(), R::max);
    let tiny = scale * R::lit(1e-10);
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in (0..=top).rev() {
        if next == n {
            break;
        }
        let (best, mag) =
            (next..n).map(|r| (r, rows[r][col].norm())).fold((next, R::zero()), |a, b| if b.1 > a.1 { b } else { a });
        if mag <= tiny {
            continue;
        }
        rows.swap(next, best);
        let p = rows[next][col];
        for c in rows[next].iter_mut() {
            *c /= p;
        }
        rows[next][col] = Cx::one();
        for r in 0..n {
            if r != next {
                let f = rows[r][col];
                if f.is_zero() {
                    continue;
                }
                for k in 0..=top {
                    let t = rows[next][k];
                    rows[r][k] -= f * t;
                }
                rows[r][col] = Cx::zero();
            }
        }
        pivots.push(col);
        next += 1;
    }
    if pivots.len() < n {
        return Err(GaudinError::NotInCell(format!("spanning set has rank {} < {n}", pivots.len())));
    }
    let parts: Vec<usize> = pivots.iter().enumerate().map(|(i, &d)| d + i + 1 - n).collect();
    if pivots.iter().enumerate().any(|(i, &d)| d + i + 1 < n) {
        return Err(GaudinError::NotInCell(format!("degree set {pivots:?}")));
    }
    let lambda = Partition::new(parts)?;
    if let Some(e) = expected {
        if e != &lambda {
            return Err(GaudinError::NotInCell(format!("degree set {pivots:?} gives {lambda}, expected {e}")));
        }
    }
    let basis = rows
        .into_iter()
        .zip(&pivots)
        .map(|(mut r, &d)| {
            r.truncate(d + 1);
            for &q in &pivots {
                if q < d {
                    r[q] = Cx::zero();
                }
            }
            Polynomial::new(r)
        })
        .collect();
    Ok(PolySpace { lambda, basis })
}

/// `(-1)^s` times the coefficients of the monic polynomial, read from the top.
fn signed_tail<R: Real>(p: &Polynomial<R>) -> Vec<Cx<R>> {
    let k = p.degree().unwrap_or(0);
    (1..=k)
        .map(|s| {
            let c = p.coeff(k - s);
            if s % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Monic Wronskian of the tail `f_{a+1}, …, f_N`; must have degree `l_a`.
pub fn tail_wronskian<R: Real>(x: &PolySpace<R>, a: usize) -> Result<Polynomial<R>> {
    let w = wronskian(&x.basis[a..]);
    let expected = x.lambda.level_sizes()[a];
    let found = w.degree_signed();
    if found != expected as isize {
        return Err(GaudinError::DegreeDrop { tail: a, found, expected });
    }
    Ok(w.monic().expect("nonzero"))
}

/// `a_1..a_n` with `Wr_X = u^n + Σ (-1)^s a_s u^(n-s)`.
pub fn wronski_map<R: Real>(x: &PolySpace<R>) -> Result<Vec<Cx<R>>> {
    Ok(signed_tail(&tail_wronskian(x, 0)?))
}

/// Elementary symmetric functions of the root coordinates.
pub fn theta<R: Real>(x: &PolySpace<R>) -> Result<SigmaPoint<R>> {
    let levels =
        (0..x.lambda.n_parts()).map(|a| tail_wronskian(x, a).map(|y| signed_tail(&y))).collect::<Result<Vec<_>>>()?;
    Ok(SigmaPoint { levels })
}

/// Roots of the tail Wronskians `y_0, …, y_{N-1}`.
///
/// Fails with `NotInCell` unless `X` is nice: simple roots and no common
/// roots of adjacent `y_a`.
pub fn root_coordinates<R: Real>(x: &PolySpace<R>) -> Result<CriticalPoint<R>> {
    let mut levels = Vec::with_capacity(x.lambda.n_parts());
    for a in 0..x.lambda.n_parts() {
        let rep = roots_report(&tail_wronskian(x, a)?)?;
        if rep.has_multiple_roots() {
            return Err(GaudinError::NotInCell(format!("y_{a} has a multiple root")));
        }
        levels.push(rep.roots);
    }
    let z = levels.remove(0);
    CriticalPoint::new(z, levels).map_err(|e| GaudinError::NotInCell(format!("not a nice point: {e}")))
}

fn poly_det<R: Real>(m: &[Vec<Polynomial<R>>]) -> Polynomial<R> {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<R>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][c] * &poly_det(&minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// The monic operator with kernel `X`.
pub fn d_x<R: Real>(x: &PolySpace<R>) -> Result<ScalarDiffOp<R>> {
    let n = x.basis.len();
    // derivative table: derivs[j][k] = f_j^(k), k = 0..N
    let derivs: Vec<Vec<Polynomial<R>>> = x
        .basis
        .iter()
        .map(|f| {
            let mut out = vec![f.clone()];
            for k in 1..=n {
                let next = out[k - 1].derivative();
                out.push(next);
            }
            out
        })
        .collect();
    let minor = |skip: usize| -> Polynomial<R> {
        let m: Vec<Vec<Polynomial<R>>> = derivs
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, p)| p.clone()).collect())
            .collect();
        poly_det(&m)
    };
    let wr = minor(n);
    if wr.is_zero() {
        return Err(GaudinError::SingularWronskian);
    }
    let mut b = Vec::with_capacity(n);
    for i in 1..=n {
        let numer = minor(n - i);
        let numer = if i % 2 == 1 { -numer } else { numer };
        b.push(RationalFn::from_quotient(&numer, &wr)?);
    }
    let op = ScalarDiffOp::new(b);
    let poles: Vec<Cx<R>> = (1..=n).flat_map(|i| op.coeff(i).pole_locations()).collect();
    let samples = sample_points(&poles, 5, 0);
    for f in &x.basis {
        for &u in &samples {
            let (v, mag) = op.apply_at(f, u)?;
            if v.norm() > R::lit(KERNEL_CHECK_TOL) * mag.max(R::coeff_floor()) {
                return Err(GaudinError::SingularWronskian);
            }
        }
    }
    Ok(op)
}

/// `count` deterministic points on a circle around `pts`, each at least a
/// fixed fraction of the radius from every point of `pts`.
pub fn sample_points<R: Real>(pts: &[Cx<R>], count: usize, salt: usize) -> Vec<Cx<R>> {
    let n = R::lit(pts.len().max(1) as f64);
    let c = pts.iter().fold(Cx::<R>::zero(), |a, b| a + b) / n;
    let spread = pts.iter().map(|p| (p - c).norm()).fold(R::zero(), R::max);
    let base = spread * R::lit(1.25) + R::one();
    let golden = 0.618_033_988_749_894_9_f64;
    let mut out = Vec::with_capacity(count);
    let mut k = 0usize;
    while out.len() < count {
        let frac = ((k + 1 + 7 * salt) as f64 * golden).fract();
        let ang = R::lit(std::f64::consts::TAU * frac + 0.3);
        let rad = base * R::lit(1.0 + 0.37 * (((k * 5 + salt) % 7) as f64) / 7.0);
        let u = c + Cx::from_polar(rad, ang);
        k += 1;
        let d = pts.iter().map(|p| (p - u).norm()).fold(R::infinity(), R::min);
        if d > base * R::lit(0.05) || k > 50 * count {
            out.push(u);
        }
    }
    out
}

/// `χ^a(u) = Σ 1/(u - t^(a-1)_j) − Σ 1/(u - t^(a)_j)`.
fn chi<R: Real>(p: &CriticalPoint<R>, a: usize) -> Result<RationalFn<R>> {
    let mut f = RationalFn::zero();
    for &x in p.level(a - 1) {
        f.add_pole_term(x, 1, Cx::one())?;
    }
    for &x in p.level(a) {
        f.add_pole_term(x, 1, -Cx::<R>::one())?;
    }
    Ok(f)
}

/// `D_T = (∂ − χ^1) ⋯ (∂ − χ^N)` in monic normal-ordered form.
pub fn d_t<R: Real>(p: &CriticalPoint<R>) -> Result<ScalarDiffOp<R>> {
    p.check_distinct()?;
    let n = p.n_dim();
    let mut acc = DiffOp::linear(Cx::one(), chi(p, 1)?.neg());
    for a in 2..=n {
        acc = acc.mul(&DiffOp::linear(Cx::one(), chi(p, a)?.neg()))?;
    }
    ScalarDiffOp::from_monic(acc)
}

/// Polynomial kernel of `D_T`, reduced to the flag basis.
pub fn iota<R: Real>(p: &CriticalPoint<R>) -> Result<PolySpace<R>> {
    let lambda = p.partition()?;
    let op = d_t(p)?;
    let n = lambda.n_parts();
    let top = lambda.exponents()[0];
    let all: Vec<Cx<R>> = (0..n).flat_map(|a| p.level(a).to_vec()).collect();
    let m = all.len().max(1);
    let centre = all.iter().fold(Cx::<R>::zero(), |a, b| a + b) / R::lit(m as f64);
    let rho = all.iter().map(|x| (x - centre).norm()).fold(R::zero(), R::max).max(R::one());
    let mut last = 0;
    for salt in 0..2 {
        let samples = sample_points(&all, top + 3, salt);
        // basis q_k(u) = ((u - centre) / rho)^k
        let mut mat = linalg::zeros::<R>(samples.len(), top + 1);
        for (r, &u) in samples.iter().enumerate() {
            let w = (u - centre) / rho;
            let b = op.eval_coeffs(u)?;
            let mut row_max = R::zero();
            for k in 0..=top {
                // j-th derivative of w^k in u is k!/(k-j)! w^(k-j) / rho^j
                let mut acc = Cx::<R>::zero();
                for j in 0..=n.min(k) {
                    let falling: R = (k - j + 1..=k).fold(R::one(), |a, x| a * R::lit(x as f64));
                    let dj = w.powu((k - j) as u32) * (falling / rho.powi(j as i32));
                    let coef = if j == n { Cx::one() } else { b[n - j - 1] };
                    acc += coef * dj;
                }
                mat[r][k] = acc;
                row_max = row_max.max(acc.norm());
            }
            if row_max > R::zero() {
                for x in mat[r].iter_mut() {
                    *x /= row_max;
                }
            }
        }
        let ns = linalg::nullspace(&mat, R::lit(NULLSPACE_TOL));
        last = ns.len();
        if ns.len() != n {
            continue;
        }
        let raw: Vec<Polynomial<R>> = ns
            .iter()
            .map(|v| {
                let shifted: Vec<Cx<R>> = v.iter().enumerate().map(|(k, c)| c / rho.powi(k as i32)).collect();
                Polynomial::from_taylor(&shifted, centre)
            })
            .collect();
        return flag_basis(&raw, Some(&lambda));
    }
    Err(GaudinError::KernelDimension { found: last, expected: n })
}

/// Random nice point of the cell for `λ`, by rejection sampling of flag
/// coordinates drawn uniformly from the unit square in each component.
pub fn random_nice_point<R: Real>(
    lambda: &Partition,
    rng: &mut impl Rng,
    max_tries: usize,
) -> Result<(PolySpace<R>, CriticalPoint<R>)> {
    let dim = lambda.size();
    for _ in 0..max_tries.max(1) {
        let coords: Vec<Cx<R>> =
            (0..dim).map(|_| Cx::new(R::lit(rng.gen_range(-1.0..1.0)), R::lit(rng.gen_range(-1.0..1.0)))).collect();
        let x = PolySpace::from_coordinates(lambda, &coords)?;
        if let Ok(t) = root_coordinates(&x) {
            if t.min_gap().1 > R::lit(1e-3) {
                return Ok((x, t));
            }
        }
    }
    Err(GaudinError::NonConvergence { attempts: max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    fn re(x: f64) -> Cx<f64> {
        crate::scalar::re(x)
    }

    fn cx(a: f64, b: f64) -> Cx<f64> {
        crate::scalar::cx(a, b)
    }
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[f64]) -> Polynomial<f64> {
        Polynomial::from_real(c)
    }

    #[test]
    fn flag_basis_examples() {
        let x = flag_basis(&[p(&[-3.0, 3.0, 1.0]), p(&[-1.0, 1.0])], None).unwrap();
        assert_eq!(x.basis(), &[p(&[0.0, 0.0, 1.0]), p(&[-1.0, 1.0])]);
        assert_eq!(x.lambda().parts(), &[1, 1]);
        let y = flag_basis(&[p(&[0.0, 1.0]), p(&[1.0])], None).unwrap();
        assert_eq!(y.lambda().parts(), &[0, 0]);
        assert!(matches!(flag_basis(&[p(&[0.0, 1.0]), p(&[0.0, 2.0])], None), Err(GaudinError::NotInCell(_))));
        let wrong = Partition::new(vec![2, 0]).unwrap();
        assert!(flag_basis(&[p(&[0.0, 0.0, 1.0]), p(&[-1.0, 1.0])], Some(&wrong)).is_err());
    }

    #[test]
    fn wronski_and_theta() {
        let x = flag_basis(&[p(&[0.0, 0.0, 1.0]), p(&[-1.0, 1.0])], None).unwrap();
        assert_eq!(wronski_map(&x).unwrap(), vec![re(2.0), re(0.0)]);
        let s = theta(&x).unwrap();
        assert_eq!(s.levels, vec![vec![re(2.0), re(0.0)], vec![re(1.0)]]);
        let mono = flag_basis(&[p(&[0.0, 0.0, 0.0, 1.0]), p(&[0.0, 1.0])], None).unwrap();
        assert!(wronski_map(&mono).unwrap().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn d_x_running_example() {
        let x = flag_basis(&[p(&[0.0, 0.0, 1.0]), p(&[-1.0, 1.0])], None).unwrap();
        let op = d_x(&x).unwrap();
        let b = op.eval_coeffs(re(3.0)).unwrap();
        assert!((b[0] - re(-4.0 / 3.0)).norm() < 1e-13);
        assert!((b[1] - re(2.0 / 3.0)).norm() < 1e-13);
        let zero = flag_basis(&[p(&[0.0, 1.0]), p(&[1.0])], None).unwrap();
        let op = d_x(&zero).unwrap();
        assert!(op.coeff(1).is_zero() && op.coeff(2).is_zero());
    }

    #[test]
    fn d_t_and_iota_running_example() {
        let t = CriticalPoint::new(vec![re(0.0), re(2.0)], vec![vec![re(1.0)]]).unwrap();
        let op = d_t(&t).unwrap();
        let b = op.eval_coeffs(re(3.0)).unwrap();
        assert!((b[0] - re(-4.0 / 3.0)).norm() < 1e-14);
        assert!((b[1] - re(2.0 / 3.0)).norm() < 1e-14);
        let x = iota(&t).unwrap();
        let want = flag_basis(&[p(&[0.0, 0.0, 1.0]), p(&[-1.0, 1.0])], None).unwrap();
        assert!(x.distance(&want) < 1e-10, "{x:?}");
    }

    #[test]
    fn empty_levels_round_trip() {
        let t = CriticalPoint::new(vec![re(0.0), cx(1.0, 1.0)], vec![vec![]]).unwrap();
        let x = iota(&t).unwrap();
        let s = theta(&x).unwrap();
        assert!(s.distance(&t.to_sigma()) < 1e-10);
    }

    #[test]
    fn random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lam = Partition::new(vec![2, 1, 0]).unwrap();
        for _ in 0..5 {
            let (x, t) = random_nice_point::<f64>(&lam, &mut rng, 100).unwrap();
            assert!(t.bae_residual().unwrap().iter().all(|r| r.norm() < 1e-6));
            let back = iota(&t).unwrap();
            assert!(back.distance(&x) < 1e-8);
        }
    }

    #[test]
    fn json_layout() {
        let x = flag_basis(&[p(&[0.0, 0.0, 1.0]), p(&[-1.0, 1.0])], None).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"lambda":[1,1],"flag_basis":[[[0.0,0.0],[0.0,0.0],[1.0,0.0]],[[-1.0,0.0],[1.0,0.0]]]}"#);
        let back: PolySpace<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
