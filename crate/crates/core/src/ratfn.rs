//! Rational functions of `u` kept in partial-fraction form over a factored
//! pole set.
//!
//! The engine is generic over the coefficient type so the same code serves
//! scalar rational functions (`Cx<R>` coefficients) and operator-valued ones
//! (sparse operators on the tensor space). Coefficients may fail to commute;
//! products keep the left factor on the left.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{GaudinError, Result};
use crate::poly::{roots_report, Polynomial};
use crate::scalar::{binomial, cmp_re_im, from_usize, Cx, Real};

/// Pole locations closer than this (relative to `max(1, |a|)`) are the same pole.
pub const POLE_MERGE_TOL: f64 = 1e-12;
/// Distinct pole locations must be at least this far apart.
pub const POLE_DEDUP_TOL: f64 = 1e-8;
/// Evaluation points must be at least this far from every pole.
pub const POLE_EVAL_TOL: f64 = 1e-8;

/// Coefficient ring for [`PartialFractions`]: a (possibly noncommutative)
/// algebra over `Cx<R>`.
pub trait Coeff<R: Real>: Clone + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scaled(&self, s: Cx<R>) -> Self;
    /// Product `self * other` (for operators: apply `other` first).
    fn compose(&self, other: &Self) -> Self;
}

impl<R: Real> Coeff<R> for Cx<R> {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scaled(&self, s: Cx<R>) -> Self {
        self * s
    }
    fn compose(&self, other: &Self) -> Self {
        self * other
    }
}

/// Principal part at one pole: `sum_k terms[k] / (u - loc)^k`, `k >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleTerms<R: Real, C> {
    pub loc: Cx<R>,
    pub terms: BTreeMap<usize, C>,
}

impl<R: Real, C: Coeff<R>> PoleTerms<R, C> {
    pub fn multiplicity(&self) -> usize {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions<R: Real, C> {
    /// Polynomial part: power of `u` -> coefficient.
    poly: BTreeMap<usize, C>,
    /// Sorted by location (Re, Im).
    poles: Vec<PoleTerms<R, C>>,
}

fn add_into<R: Real, C: Coeff<R>>(map: &mut BTreeMap<usize, C>, k: usize, c: C) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(existing) => {
            existing.add_assign(&c);
            if existing.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, c);
        }
    }
}

impl<R: Real, C: Coeff<R>> Default for PartialFractions<R, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Real, C: Coeff<R>> PartialFractions<R, C> {
    pub fn zero() -> Self {
        Self { poly: BTreeMap::new(), poles: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut out = Self::zero();
        add_into(&mut out.poly, 0, c);
        out
    }

    /// `c / (u - loc)^k`.
    pub fn pole(loc: Cx<R>, k: usize, c: C) -> Self {
        assert!(k >= 1, "pole order must be positive");
        let mut out = Self::zero();
        out.add_pole_term(loc, k, c).expect("single pole");
        out
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.poles.is_empty()
    }

    pub fn poly_terms(&self) -> &BTreeMap<usize, C> {
        &self.poly
    }

    pub fn poles(&self) -> &[PoleTerms<R, C>] {
        &self.poles
    }

    pub fn pole_locations(&self) -> Vec<Cx<R>> {
        self.poles.iter().map(|p| p.loc).collect()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.poles.iter().map(PoleTerms::multiplicity).max().unwrap_or(0)
    }

    /// Degree of the polynomial part, `None` when there is none (proper function).
    pub fn poly_degree(&self) -> Option<usize> {
        self.poly.keys().next_back().copied()
    }

    pub fn add_poly_term(&mut self, k: usize, c: C) {
        add_into(&mut self.poly, k, c);
    }

    pub fn add_pole_term(&mut self, loc: Cx<R>, k: usize, c: C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let merge = R::lit(POLE_MERGE_TOL);
        let dedup = R::lit(POLE_DEDUP_TOL);
        for p in self.poles.iter_mut() {
            let dist = (p.loc - loc).norm();
            if dist <= merge * R::one().max(loc.norm()) {
                add_into(&mut p.terms, k, c);
                self.poles.retain(|p| !p.terms.is_empty());
                return Ok(());
            }
            if dist < dedup {
                return Err(GaudinError::PoleCollision { distance: dist.to_f64_lossy() });
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(k, c);
        let pos = self
            .poles
            .iter()
            .position(|p| cmp_re_im(&loc, &p.loc) == std::cmp::Ordering::Less)
            .unwrap_or(self.poles.len());
        self.poles.insert(pos, PoleTerms { loc, terms });
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        for (k, c) in &other.poly {
            add_into(&mut self.poly, *k, c.clone());
        }
        for p in &other.poles {
            for (k, c) in &p.terms {
                self.add_pole_term(p.loc, *k, c.clone())?;
            }
        }
        Ok(())
    }

    pub fn scale(&self, s: Cx<R>) -> Self {
        if Zero::is_zero(&s) {
            return Self::zero();
        }
        Self {
            poly: self.poly.iter().map(|(k, c)| (*k, c.scaled(s))).collect(),
            poles: self
                .poles
                .iter()
                .map(|p| PoleTerms { loc: p.loc, terms: p.terms.iter().map(|(k, c)| (*k, c.scaled(s))).collect() })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-Cx::<R>::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Left-multiplies every coefficient by a fixed element: `c * self`.
    pub fn left_compose(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.poly {
            add_into(&mut out.poly, *k, c.compose(x));
        }
        for p in &self.poles {
            let terms: BTreeMap<usize, C> =
                p.terms.iter().map(|(k, x)| (*k, c.compose(x))).filter(|(_, x)| !x.is_zero()).collect();
            if !terms.is_empty() {
                out.poles.push(PoleTerms { loc: p.loc, terms });
            }
        }
        out
    }

    /// Product, re-expanded into partial fractions.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&i, a) in &self.poly {
            for (&j, b) in &other.poly {
                add_into(&mut out.poly, i + j, a.compose(b));
            }
            for q in &other.poles {
                for (&k, b) in &q.terms {
                    out.add_monomial_times_pole(i, q.loc, k, &a.compose(b))?;
                }
            }
        }
        for p in &self.poles {
            for (&j, a) in &p.terms {
                for (&i, b) in &other.poly {
                    out.add_monomial_times_pole(i, p.loc, j, &a.compose(b))?;
                }
                for q in &other.poles {
                    for (&k, b) in &q.terms {
                        out.add_pole_times_pole(p.loc, j, q.loc, k, &a.compose(b))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Adds `c * u^i / (u - b)^k`.
    fn add_monomial_times_pole(&mut self, i: usize, b: Cx<R>, k: usize, c: &C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        // u^i = sum_m C(i,m) b^(i-m) (u-b)^m
        for m in 0..=i {
            let w = Cx::new(binomial::<R>(i, m), R::zero()) * b.powu((i - m) as u32);
            if Zero::is_zero(&w) {
                continue;
            }
            if m < k {
                self.add_pole_term(b, k - m, c.scaled(w))?;
            } else {
                // (u-b)^(m-k) in powers of u
                let e = m - k;
                for r in 0..=e {
                    let wr = Cx::new(binomial::<R>(e, r), R::zero()) * (-b).powu((e - r) as u32);
                    add_into(&mut self.poly, r, c.scaled(w * wr));
                }
            }
        }
        Ok(())
    }

    /// Adds `c / ((u - a)^j (u - b)^k)`.
    fn add_pole_times_pole(&mut self, a: Cx<R>, j: usize, b: Cx<R>, k: usize, c: &C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let d = a - b;
        if d.norm() <= R::lit(POLE_MERGE_TOL) * R::one().max(a.norm()) {
            return self.add_pole_term(a, j + k, c.clone());
        }
        if d.norm() < R::lit(POLE_DEDUP_TOL) {
            return Err(GaudinError::PoleCollision { distance: d.norm().to_f64_lossy() });
        }
        let dinv = d.inv();
        let einv = -dinv;
        for m in 0..j {
            let sign = if m % 2 == 0 { R::one() } else { -R::one() };
            let w = dinv.powu((k + m) as u32) * (binomial::<R>(k + m - 1, m) * sign);
            self.add_pole_term(a, j - m, c.scaled(w))?;
        }
        for m in 0..k {
            let sign = if m % 2 == 0 { R::one() } else { -R::one() };
            let w = einv.powu((j + m) as u32) * (binomial::<R>(j + m - 1, m) * sign);
            self.add_pole_term(b, k - m, c.scaled(w))?;
        }
        Ok(())
    }

    /// `d/du`; pole multiplicities grow by one.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.poly {
            if k > 0 {
                add_into(&mut out.poly, k - 1, c.scaled(from_usize(k)));
            }
        }
        for p in &self.poles {
            let terms: BTreeMap<usize, C> =
                p.terms.iter().map(|(&k, c)| (k + 1, c.scaled(-from_usize::<R>(k)))).collect();
            out.poles.push(PoleTerms { loc: p.loc, terms });
        }
        out
    }

    pub fn nth_derivative(&self, r: usize) -> Self {
        (0..r).fold(self.clone(), |f, _| f.derivative())
    }

    /// Distance from `u` to the nearest pole (infinity when there are none).
    pub fn pole_distance(&self, u: Cx<R>) -> R {
        self.poles.iter().map(|p| (p.loc - u).norm()).fold(R::infinity(), R::min)
    }

    /// Visits every term as `(coefficient, scalar weight at u)`.
    pub fn for_each_term_at(&self, u: Cx<R>, mut f: impl FnMut(&C, Cx<R>)) -> Result<()> {
        let dist = self.pole_distance(u);
        if dist <= R::lit(POLE_EVAL_TOL) {
            return Err(GaudinError::PoleEvaluation { distance: dist.to_f64_lossy() });
        }
        for (&k, c) in &self.poly {
            f(c, u.powu(k as u32));
        }
        for p in &self.poles {
            let inv = (u - p.loc).inv();
            for (&k, c) in &p.terms {
                f(c, inv.powu(k as u32));
            }
        }
        Ok(())
    }
}

/// Scalar rational function.
pub type RationalFn<R = f64> = PartialFractions<R, Cx<R>>;

impl<R: Real> PartialFractions<R, Cx<R>> {
    pub fn eval(&self, u: Cx<R>) -> Result<Cx<R>> {
        let mut acc = Cx::zero();
        self.for_each_term_at(u, |c, w| acc += c * w)?;
        Ok(acc)
    }

    pub fn from_polynomial(p: &Polynomial<R>) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_poly_term(k, *c);
        }
        out
    }

    pub fn polynomial_part(&self) -> Polynomial<R> {
        let deg = self.poly_degree().map_or(0, |d| d + 1);
        let mut c = vec![Cx::zero(); deg];
        for (&k, v) in &self.poly {
            c[k] = *v;
        }
        Polynomial::new(c)
    }

    /// Factored denominator `[(location, multiplicity)]`.
    pub fn denominator_factors(&self) -> Vec<(Cx<R>, usize)> {
        self.poles.iter().map(|p| (p.loc, p.multiplicity())).collect()
    }

    pub fn denominator(&self) -> Polynomial<R> {
        self.poles.iter().fold(Polynomial::one(), |acc, p| {
            let lin = Polynomial::new(vec![-p.loc, Cx::one()]);
            (0..p.multiplicity()).fold(acc, |a, _| &a * &lin)
        })
    }

    /// Numerator over [`Self::denominator`].
    pub fn numerator(&self) -> Polynomial<R> {
        let den = self.denominator();
        let mut num = &self.polynomial_part() * &den;
        for (idx, p) in self.poles.iter().enumerate() {
            let m = p.multiplicity();
            // denominator with this pole removed
            let others =
                self.poles.iter().enumerate().filter(|(j, _)| *j != idx).fold(Polynomial::one(), |acc, (_, q)| {
                    let lin = Polynomial::new(vec![-q.loc, Cx::one()]);
                    (0..q.multiplicity()).fold(acc, |a, _| &a * &lin)
                });
            let lin = Polynomial::new(vec![-p.loc, Cx::one()]);
            for (&k, c) in &p.terms {
                let rest = (0..m - k).fold(others.clone(), |a, _| &a * &lin);
                num = &num + &rest.scale(*c);
            }
        }
        num
    }

    /// Partial fractions of `numer / denom`; the denominator is factored
    /// numerically and coincident roots are merged into one pole.
    pub fn from_quotient(numer: &Polynomial<R>, denom: &Polynomial<R>) -> Result<Self> {
        if denom.is_zero() {
            return Err(GaudinError::InvalidInput("zero denominator".into()));
        }
        let (quot, rem) = numer.div_rem(denom);
        let mut out = Self::from_polynomial(&quot);
        if rem.is_zero() {
            return Ok(out);
        }
        let rep = roots_report(denom)?;
        // group clustered roots
        let mut groups: Vec<(Cx<R>, usize)> = Vec::new();
        let mut used = vec![false; rep.roots.len()];
        for cl in &rep.clusters {
            let mean = cl.iter().map(|&i| rep.roots[i]).fold(Cx::<R>::zero(), |a, b| a + b) / from_usize::<R>(cl.len());
            for &i in cl {
                used[i] = true;
            }
            groups.push((mean, cl.len()));
        }
        for (i, r) in rep.roots.iter().enumerate() {
            if !used[i] {
                groups.push((*r, 1));
            }
        }
        let lead = denom.leading();
        for (gi, &(a, m)) in groups.iter().enumerate() {
            // h(u) = denom / (u - a)^m, Taylor coefficients at a
            let mut h = vec![lead];
            for (gj, &(b, mb)) in groups.iter().enumerate() {
                if gj == gi {
                    continue;
                }
                for _ in 0..mb {
                    // multiply by (u - b) = (u - a) + (a - b)
                    let mut next = vec![Cx::zero(); h.len() + 1];
                    for (t, hv) in h.iter().enumerate() {
                        next[t + 1] += hv;
                        next[t] += hv * (a - b);
                    }
                    next.truncate(m);
                    h = next;
                }
            }
            h.resize(m, Cx::zero());
            let mut n = rem.taylor_coeffs(a);
            n.resize(m, Cx::zero());
            // series division g = n / h to order m-1
            let mut g = vec![Cx::<R>::zero(); m];
            let h0inv = h[0].inv();
            for t in 0..m {
                let mut s = n[t];
                for r in 1..=t {
                    s -= h[r] * g[t - r];
                }
                g[t] = s * h0inv;
            }
            for (t, gt) in g.into_iter().enumerate() {
                out.add_pole_term(a, m - t, gt)?;
            }
        }
        Ok(out)
    }
}
