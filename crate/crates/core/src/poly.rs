//! Dense univariate polynomials with complex coefficients.
//!
//! Coefficients are stored in ascending degree order; the zero polynomial has
//! no coefficients. Trailing (leading-degree) coefficients whose modulus falls
//! below [`Real::coeff_floor`] are trimmed on construction.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GaudinError, Result};
use crate::json;
use crate::scalar::{cmp_re_im, from_usize, Cx, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<R: Real = f64> {
    coeffs: Vec<Cx<R>>,
}

impl<R: Real> Polynomial<R> {
    pub fn new(mut coeffs: Vec<Cx<R>>) -> Self {
        let floor = R::coeff_floor();
        while coeffs.last().is_some_and(|c| c.norm() <= floor) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Cx::new(R::lit(c), R::zero())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Cx<R>) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Cx::one())
    }

    /// `c * u^k`.
    pub fn monomial(k: usize, c: Cx<R>) -> Self {
        let mut coeffs = vec![Cx::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial `prod (u - r)`.
    pub fn from_roots(roots: &[Cx<R>]) -> Self {
        let sigma = elem_symmetric(roots);
        Self::from_elementary(&sigma)
    }

    /// Monic `u^k + sum_i (-1)^i sigma_i u^(k-i)`.
    pub fn from_elementary(sigma: &[Cx<R>]) -> Self {
        let k = sigma.len();
        let mut coeffs = vec![Cx::zero(); k + 1];
        coeffs[k] = Cx::one();
        for (i, s) in sigma.iter().enumerate() {
            let sign = if (i + 1) % 2 == 0 { R::one() } else { -R::one() };
            coeffs[k - i - 1] = s * sign;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Cx<R>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Cx<R>> {
        self.coeffs
    }

    /// Coefficient of `u^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Cx<R> {
        self.coeffs.get(k).copied().unwrap_or_else(Cx::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial at `-1`.
    pub fn degree_signed(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> Cx<R> {
        self.coeffs.last().copied().unwrap_or_else(Cx::zero)
    }

    pub fn max_coeff_norm(&self) -> R {
        self.coeffs.iter().map(|c| c.norm()).fold(R::zero(), R::max)
    }

    pub fn monic(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lead = self.leading();
        Some(self.scale(lead.inv()))
    }

    pub fn scale(&self, c: Cx<R>) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * from_usize::<R>(k)).collect())
    }

    pub fn nth_derivative(&self, m: usize) -> Self {
        (0..m).fold(self.clone(), |p, _| p.derivative())
    }

    /// Horner evaluation.
    pub fn eval(&self, u: Cx<R>) -> Cx<R> {
        self.coeffs.iter().rev().fold(Cx::zero(), |acc, c| acc * u + c)
    }

    /// Coefficients of `p` in powers of `(u - a)`, ascending.
    pub fn taylor_coeffs(&self, a: Cx<R>) -> Vec<Cx<R>> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1];
                c[j] += next * a;
            }
        }
        c
    }

    /// Polynomial in `u` from coefficients in powers of `(u - a)`.
    pub fn from_taylor(shifted: &[Cx<R>], a: Cx<R>) -> Self {
        let neg = -a;
        let mut out = vec![Cx::zero(); shifted.len()];
        // Horner in the shifted variable: acc = acc*(u - a) + c
        for c in shifted.iter().rev() {
            let mut next = vec![Cx::zero(); out.len()];
            for k in 0..out.len() {
                if k + 1 < next.len() {
                    next[k + 1] += out[k];
                }
                next[k] += out[k] * neg;
            }
            next[0] += c;
            out = next;
        }
        Self::new(out)
    }
}

impl<R: Real> Polynomial<R> {
    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let lead_inv = d.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Cx::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd] * lead_inv;
            quot[k] = c;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
            rem[k + dd] = Cx::zero();
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl<R: Real> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<R: Real> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<R: Real> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Cx::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl<R: Real> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Real> $tr for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $m(self, rhs: Self) -> Polynomial<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Real> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        -&self
    }
}

impl<R: Real> Serialize for Polynomial<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json::pairs(&self.coeffs).serialize(s)
    }
}

impl<'de, R: Real> Deserialize<'de> for Polynomial<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(Self::new(json::unpairs(&raw)))
    }
}

/// Bitwise total order used to canonicalise Wronskian inputs.
fn total_cmp_poly<R: Real>(a: &Polynomial<R>, b: &Polynomial<R>) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
        for (x, y) in a.coeffs.iter().zip(&b.coeffs).rev() {
            let o =
                x.re.to_f64_lossy()
                    .total_cmp(&y.re.to_f64_lossy())
                    .then(x.im.to_f64_lossy().total_cmp(&y.im.to_f64_lossy()));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Wronskian `det(g_i^(k))`, rows `g_i`, columns derivative orders `0..len`.
///
/// Inputs are sorted into a canonical order first and the permutation sign is
/// applied afterwards, so swapping two inputs negates the result bit-for-bit
/// and repeated inputs give exactly zero.
pub fn wronskian<R: Real>(gs: &[Polynomial<R>]) -> Polynomial<R> {
    let m = gs.len();
    if m == 0 {
        return Polynomial::one();
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| total_cmp_poly(&gs[i], &gs[j]));
    if order.windows(2).any(|w| total_cmp_poly(&gs[w[0]], &gs[w[1]]) == Ordering::Equal) {
        return Polynomial::zero();
    }
    let negate = permutation_is_odd(&order);
    let rows: Vec<&Polynomial<R>> = order.iter().map(|&i| &gs[i]).collect();

    // derivative table der[i][k] = rows[i]^(k)
    let der: Vec<Vec<Polynomial<R>>> = rows
        .iter()
        .map(|g| {
            let mut v = Vec::with_capacity(m);
            let mut cur = (*g).clone();
            for _ in 0..m {
                let next = cur.derivative();
                v.push(cur);
                cur = next;
            }
            v
        })
        .collect();

    // minors over row subsets S using columns 0..|S|, expanded on the last column
    let full = (1usize << m) - 1;
    let mut minors: Vec<Option<Polynomial<R>>> = vec![None; full + 1];
    minors[0] = Some(Polynomial::one());
    let mut subsets: Vec<usize> = (1..=full).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for s in subsets {
        let col = s.count_ones() as usize - 1;
        let mut acc = Polynomial::zero();
        let mut pos = 0usize;
        for i in 0..m {
            if s & (1 << i) == 0 {
                continue;
            }
            let rest = minors[s & !(1 << i)].as_ref().expect("smaller subset computed");
            let term = &der[i][col] * rest;
            acc = if (pos + col).is_multiple_of(2) { &acc + &term } else { &acc - &term };
            pos += 1;
        }
        minors[s] = Some(acc);
    }
    let w = minors[full].take().expect("full minor");
    if negate {
        -w
    } else {
        w
    }
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

/// Elementary symmetric functions `sigma_1..sigma_k` of the inputs.
pub fn elem_symmetric<R: Real>(roots: &[Cx<R>]) -> Vec<Cx<R>> {
    let mut e = vec![Cx::zero(); roots.len() + 1];
    e[0] = Cx::one();
    for (m, r) in roots.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            let prev = e[k - 1];
            e[k] += prev * r;
        }
    }
    e.remove(0);
    e
}

/// Roots together with the groups of numerically coincident roots.
#[derive(Clone, Debug)]
pub struct RootReport<R: Real = f64> {
    /// Sorted by (Re, Im).
    pub roots: Vec<Cx<R>>,
    /// Index groups (into `roots`) of size > 1 whose members coincide to `cluster_tol`.
    pub clusters: Vec<Vec<usize>>,
}

impl<R: Real> RootReport<R> {
    pub fn has_multiple_roots(&self) -> bool {
        !self.clusters.is_empty()
    }
}

const ROOT_MAX_ITER: usize = 500;
const ROOT_ATTEMPTS: usize = 6;

/// All `deg p` roots of `p`, sorted by (Re, Im).
pub fn roots<R: Real>(p: &Polynomial<R>) -> Result<Vec<Cx<R>>> {
    roots_report(p).map(|r| r.roots)
}

/// Simultaneous (Aberth-Ehrlich) iteration with seeded perturbation restarts.
pub fn roots_report<R: Real>(p: &Polynomial<R>) -> Result<RootReport<R>> {
    let Some(deg) = p.degree() else {
        return Ok(RootReport { roots: Vec::new(), clusters: Vec::new() });
    };
    let mut out: Vec<Cx<R>> = Vec::with_capacity(deg);
    // exact zero roots
    let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    out.extend(std::iter::repeat_n(Cx::zero(), zeros));
    let reduced = Polynomial::new(p.coeffs[zeros..].to_vec());
    let rdeg = reduced.degree().unwrap_or(0);

    if rdeg == 1 {
        out.push(-reduced.coeff(0) / reduced.coeff(1));
    } else if rdeg > 1 {
        let q = reduced.monic().expect("nonzero");
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2007);
        let mut found = None;
        for attempt in 0..ROOT_ATTEMPTS {
            let z0 = initial_guesses(&q, attempt, &mut rng);
            let z = aberth(&q, z0);
            if z.iter().all(|r| residual_ok(&q, *r)) {
                found = Some(z);
                break;
            }
        }
        let z = found.ok_or(GaudinError::NonConvergence { attempts: ROOT_ATTEMPTS })?;
        out.extend(z.into_iter().map(|r| polish(&q, r)));
    }

    if !out.iter().all(|r| residual_ok(p, *r)) {
        return Err(GaudinError::NonConvergence { attempts: ROOT_ATTEMPTS });
    }
    out.sort_by(cmp_re_im);
    let clusters = find_clusters(&out);
    Ok(RootReport { roots: out, clusters })
}

fn residual_ok<R: Real>(p: &Polynomial<R>, r: Cx<R>) -> bool {
    let deg = p.degree().unwrap_or(0) as i32;
    let bound = R::lit(1e-9) * p.max_coeff_norm() * R::one().max(r.norm()).powi(deg);
    let v = p.eval(r);
    v.re.is_finite() && v.im.is_finite() && v.norm() < bound
}

fn initial_guesses<R: Real>(q: &Polynomial<R>, attempt: usize, rng: &mut ChaCha8Rng) -> Vec<Cx<R>> {
    let n = q.degree().unwrap_or(0);
    // geometric mean of root moduli, floored by a Cauchy-type spread
    let c0 = q.coeff(0).norm().to_f64_lossy();
    let mut radius = if c0 > 0.0 { c0.powf(1.0 / n as f64) } else { 1.0 };
    let spread = (0..n).map(|k| q.coeff(k).norm().to_f64_lossy().powf(1.0 / (n - k) as f64)).fold(0.0f64, f64::max);
    radius = radius.max(0.5 * spread).max(1e-3);
    let sum = q.coeff(n - 1);
    let centre = (-sum.re.to_f64_lossy() / n as f64, -sum.im.to_f64_lossy() / n as f64);
    (0..n)
        .map(|k| {
            let jitter = if attempt == 0 { 0.0 } else { rng.gen_range(-0.5..0.5) };
            let scale = if attempt == 0 { 1.0 } else { rng.gen_range(0.5..2.0) };
            let ang = std::f64::consts::TAU * (k as f64 + jitter) / n as f64 + 0.4 + attempt as f64;
            let r = radius * scale;
            Cx::new(R::lit(centre.0 + r * ang.cos()), R::lit(centre.1 + r * ang.sin()))
        })
        .collect()
}

fn aberth<R: Real>(q: &Polynomial<R>, mut z: Vec<Cx<R>>) -> Vec<Cx<R>> {
    let dq = q.derivative();
    let n = z.len();
    let eps = R::epsilon() * R::lit(4.0);
    for _ in 0..ROOT_MAX_ITER {
        let mut max_rel = R::zero();
        for k in 0..n {
            let pk = q.eval(z[k]);
            if pk.is_zero() {
                continue;
            }
            let ratio = pk / dq.eval(z[k]);
            let repulsion: Cx<R> = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.is_zero() {
                        Cx::zero()
                    } else {
                        d.inv()
                    }
                })
                .fold(Cx::zero(), |a, b| a + b);
            let denom = Cx::<R>::one() - ratio * repulsion;
            let step = if denom.norm() > R::epsilon() { ratio / denom } else { ratio };
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[k] -= step;
            max_rel = max_rel.max(step.norm() / R::one().max(z[k].norm()));
        }
        if max_rel <= eps {
            break;
        }
    }
    z
}

fn polish<R: Real>(q: &Polynomial<R>, mut r: Cx<R>) -> Cx<R> {
    let dq = q.derivative();
    for _ in 0..3 {
        let d = dq.eval(r);
        if d.is_zero() {
            break;
        }
        let cand = r - q.eval(r) / d;
        if q.eval(cand).norm() < q.eval(r).norm() {
            r = cand;
        } else {
            break;
        }
    }
    r
}

fn find_clusters<R: Real>(roots: &[Cx<R>]) -> Vec<Vec<usize>> {
    let tol = R::lit(1e-6);
    let mut assigned = vec![false; roots.len()];
    let mut clusters = Vec::new();
    for i in 0..roots.len() {
        if assigned[i] {
            continue;
        }
        let mut group = vec![i];
        assigned[i] = true;
        let mut k = 0;
        while k < group.len() {
            let a = roots[group[k]];
            for j in 0..roots.len() {
                if !assigned[j] && (roots[j] - a).norm() <= tol * R::one().max(a.norm()) {
                    assigned[j] = true;
                    group.push(j);
                }
            }
            k += 1;
        }
        if group.len() > 1 {
            group.sort_unstable();
            clusters.push(group);
        }
    }
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn p(c: &[f64]) -> Polynomial<f64> {
        Polynomial::from_real(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[-1.0, 1.0]) * &p(&[1.0, 1.0]), p(&[-1.0, 0.0, 1.0]));
        assert_eq!(p(&[0.0, -2.0, 1.0]).derivative(), p(&[-2.0, 2.0]));
        assert_eq!(p(&[0.0, -2.0, 1.0]).eval(cx(3.0, 0.0)), cx(3.0, 0.0));
        assert!((&p(&[1.0, 2.0]) - &p(&[1.0, 2.0])).is_zero());
        assert_eq!((&Polynomial::zero() * &p(&[1.0])).degree(), None);
    }

    #[test]
    fn trimming_drops_negligible_leading_terms() {
        let q = p(&[1.0, 2.0, 1e-16]);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0.0, 0.0]).is_zero());
    }

    #[test]
    fn taylor_shift_round_trip() {
        let q = Polynomial::<f64>::new(vec![cx(1.0, 2.0), cx(-3.0, 0.5), cx(0.0, 1.0), cx(2.0, 0.0)]);
        let a = cx(0.7, -1.3);
        let t = q.taylor_coeffs(a);
        assert!((t[0] - q.eval(a)).norm() < 1e-12);
        assert!((t[1] - q.derivative().eval(a)).norm() < 1e-12);
        let back = Polynomial::from_taylor(&t, a);
        for k in 0..4 {
            assert!((back.coeff(k) - q.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn wronskian_examples() {
        let w = wronskian(&[p(&[0.0, 0.0, 1.0]), p(&[-1.0, 1.0])]);
        assert_eq!(w, p(&[0.0, 2.0, -1.0]));
        let f = p(&[3.0, 1.0, 4.0]);
        assert_eq!(wronskian(std::slice::from_ref(&f)), f);
        assert!(wronskian(&[f.clone(), f]).is_zero());
    }

    #[test]
    fn wronskian_three_monomials() {
        // W(u^2, u, 1) = det [[u^2,2u,2],[u,1,0],[1,0,0]] = -2
        let w = wronskian(&[p(&[0.0, 0.0, 1.0]), p(&[0.0, 1.0]), p(&[1.0])]);
        assert_eq!(w, p(&[-2.0]));
    }

    #[test]
    fn root_examples() {
        let r = roots(&p(&[0.0, -2.0, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].norm() < 1e-14 && (r[1] - cx(2.0, 0.0)).norm() < 1e-12);
        let r = roots(&p(&[-5.0, 1.0])).unwrap();
        assert!((r[0] - cx(5.0, 0.0)).norm() < 1e-14);
        let r = roots(&p(&[1.0, 0.0, 0.0, 1.0])).unwrap();
        let s3 = 3f64.sqrt() / 2.0;
        let expected = [cx(-1.0, 0.0), cx(0.5, -s3), cx(0.5, s3)];
        for (a, b) in r.iter().zip(expected.iter()) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
        assert!(roots(&p(&[4.0])).unwrap().is_empty());
    }

    #[test]
    fn multiple_roots_are_flagged() {
        let q = Polynomial::<f64>::from_roots(&[cx(1.0, 0.0), cx(1.0, 0.0), cx(-2.0, 0.0)]);
        let rep = roots_report(&q).unwrap();
        assert_eq!(rep.roots.len(), 3);
        assert!(rep.has_multiple_roots());
        assert_eq!(rep.clusters[0].len(), 2);
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elem_symmetric(&[cx::<f64>(0.0, 0.0), cx(2.0, 0.0)]), vec![cx(2.0, 0.0), cx(0.0, 0.0)]);
        assert_eq!(elem_symmetric(&[cx::<f64>(1.0, 0.0)]), vec![cx(1.0, 0.0)]);
        assert_eq!(
            elem_symmetric(&[cx::<f64>(1.0, 0.0), cx(2.0, 0.0), cx(3.0, 0.0)]),
            vec![cx(6.0, 0.0), cx(11.0, 0.0), cx(6.0, 0.0)]
        );
        let q = Polynomial::<f64>::from_roots(&[cx(1.0, 0.0), cx(2.0, 0.0), cx(3.0, 0.0)]);
        assert_eq!(q, p(&[-6.0, 11.0, -6.0, 1.0]));
    }

    #[test]
    fn single_precision_instantiation() {
        let q = Polynomial::<f32>::from_real(&[0.0, -2.0, 1.0]);
        let r = roots(&q).unwrap();
        assert!((r[1] - cx::<f32>(2.0, 0.0)).norm() < 1e-5);
        assert_eq!(
            wronskian(&[Polynomial::<f32>::from_real(&[0.0, 0.0, 1.0]), Polynomial::from_real(&[-1.0, 1.0])])
                .coeffs()
                .len(),
            3
        );
    }

    #[test]
    fn json_shape() {
        let q = Polynomial::<f64>::new(vec![cx(1.0, -1.0), cx(0.0, 2.0)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[[1.0,-1.0],[0.0,2.0]]");
        let back: Polynomial<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }
}
