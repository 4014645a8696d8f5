//! The tensor space `V^{⊗n}` for gl_N and the `e_ij` action on it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GaudinError, Result};
use crate::json;
use crate::scalar::{Cx, Real};

/// Largest supported `N^n`.
pub const MAX_TENSOR_DIM: usize = 4096;

/// A partition `λ_1 ≥ … ≥ λ_N ≥ 0` with exactly `N` stored parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(GaudinError::InvalidInput("partition needs at least one part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(GaudinError::InvalidInput(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Pads `parts` with zeros up to `n_parts` entries.
    pub fn with_parts(parts: &[usize], n_parts: usize) -> Result<Self> {
        if parts.len() > n_parts {
            let (head, tail) = parts.split_at(n_parts);
            if tail.iter().any(|&p| p != 0) {
                return Err(GaudinError::InvalidInput(format!(
                    "partition {parts:?} has more than {n_parts} nonzero parts"
                )));
            }
            return Self::new(head.to_vec());
        }
        let mut v = parts.to_vec();
        v.resize(n_parts, 0);
        Self::new(v)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `N`, the rank of gl_N.
    pub fn n_parts(&self) -> usize {
        self.parts.len()
    }

    /// `n = |λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l_a = Σ_{b>a} λ_b` for `a = 0..=N` (so `l_0 = n`, `l_N = 0`).
    pub fn level_sizes(&self) -> Vec<usize> {
        let n = self.n_parts();
        (0..=n).map(|a| self.parts[a..].iter().sum()).collect()
    }

    /// `l = l_0 + … + l_{N-1}`.
    pub fn total_level_size(&self) -> usize {
        self.level_sizes()[..self.n_parts()].iter().sum()
    }

    /// Number of Bethe variables `l - n`.
    pub fn bethe_variable_count(&self) -> usize {
        self.total_level_size() - self.size()
    }

    /// Exponents `d_i = λ_i + N - i`, strictly decreasing.
    pub fn exponents(&self) -> Vec<usize> {
        let n = self.n_parts();
        self.parts.iter().enumerate().map(|(i, &p)| p + n - 1 - i).collect()
    }

    /// `s_λ = Σ_i (i-1) λ_i`.
    pub fn degree_shift(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Product `l_1! ⋯ l_{N-1}!`, the size of one symmetry orbit.
    pub fn orbit_size(&self) -> usize {
        let l = self.level_sizes();
        l[1..self.n_parts()].iter().map(|&k| (1..=k).product::<usize>()).product()
    }

    /// Partition recovered from level sizes `l_0..l_{N-1}`.
    pub fn from_level_sizes(levels: &[usize]) -> Result<Self> {
        let mut parts = Vec::with_capacity(levels.len());
        for a in 0..levels.len() {
            let next = levels.get(a + 1).copied().unwrap_or(0);
            if next > levels[a] {
                return Err(GaudinError::InvalidInput(format!("level sizes {levels:?} increase")));
            }
            parts.push(levels[a] - next);
        }
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Multi-index `J = (j_1, …, j_n)` with entries in `1..=N`.
pub type MultiIndex = Vec<usize>;

/// Number of standard Young tableaux of shape `λ` (hook length formula).
pub fn singular_dim(lambda: &Partition) -> usize {
    let n = lambda.size();
    let parts: Vec<usize> = lambda.parts().iter().copied().filter(|&p| p > 0).collect();
    let mut hooks: u128 = 1;
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u128;
        }
    }
    let fact: u128 = (1..=n as u128).product();
    (fact / hooks) as usize
}

/// All admissible multi-indices for `λ`, in lexicographic order: entry `i`
/// occurs exactly `λ_i` times.
pub fn admissible_indices(lambda: &Partition) -> Vec<MultiIndex> {
    fn rec(counts: &mut [usize], cur: &mut Vec<usize>, n: usize, out: &mut Vec<MultiIndex>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i + 1);
                rec(counts, cur, n, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut counts = lambda.parts().to_vec();
    let mut out = Vec::new();
    rec(&mut counts, &mut Vec::new(), lambda.size(), &mut out);
    out
}

/// Weight of the basis vector `e_J v`: the entry counts `#{a : j_a = i}`.
pub fn weight_of(j: &[usize], n_dim: usize) -> Vec<usize> {
    let mut w = vec![0; n_dim];
    for &x in j {
        w[x - 1] += 1;
    }
    w
}

/// Packing of multi-indices into `0..N^n`, site 1 most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorShape {
    pub n_dim: usize,
    pub sites: usize,
}

impl TensorShape {
    pub fn new(n_dim: usize, sites: usize) -> Result<Self> {
        if n_dim == 0 {
            return Err(GaudinError::InvalidInput("N must be positive".into()));
        }
        let dim = (n_dim as u128).checked_pow(sites as u32).unwrap_or(u128::MAX);
        if dim > MAX_TENSOR_DIM as u128 {
            return Err(GaudinError::TooLarge { dim: dim.min(usize::MAX as u128) as usize, cap: MAX_TENSOR_DIM });
        }
        Ok(Self { n_dim, sites })
    }

    pub fn dim(&self) -> usize {
        self.n_dim.pow(self.sites as u32)
    }

    pub fn pack(&self, j: &[usize]) -> usize {
        debug_assert_eq!(j.len(), self.sites);
        j.iter().fold(0, |acc, &x| acc * self.n_dim + (x - 1))
    }

    pub fn unpack(&self, mut idx: usize) -> MultiIndex {
        let mut j = vec![0; self.sites];
        for a in (0..self.sites).rev() {
            j[a] = idx % self.n_dim + 1;
            idx /= self.n_dim;
        }
        j
    }

    /// Entry (1-based value) of the packed index at `site` (1-based).
    pub fn digit(&self, idx: usize, site: usize) -> usize {
        (idx / self.n_dim.pow((self.sites - site) as u32)) % self.n_dim + 1
    }

    /// Replaces the entry at `site` with `value`.
    pub fn with_digit(&self, idx: usize, site: usize, value: usize) -> usize {
        let place = self.n_dim.pow((self.sites - site) as u32);
        let old = self.digit(idx, site);
        idx - (old - 1) * place + (value - 1) * place
    }
}

/// Element of `V^{⊗n}` stored sparsely over packed multi-indices.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector<R: Real = f64> {
    shape: TensorShape,
    coeffs: BTreeMap<usize, Cx<R>>,
}

impl<R: Real> TensorVector<R> {
    pub fn zero(shape: TensorShape) -> Self {
        Self { shape, coeffs: BTreeMap::new() }
    }

    /// Basis vector `e_J v`.
    pub fn basis(shape: TensorShape, j: &[usize]) -> Self {
        let mut v = Self::zero(shape);
        v.coeffs.insert(shape.pack(j), Cx::one());
        v
    }

    /// `v_+ ⊗ … ⊗ v_+`.
    pub fn highest(shape: TensorShape) -> Self {
        Self::basis(shape, &vec![1; shape.sites])
    }

    pub fn from_entries(shape: TensorShape, entries: impl IntoIterator<Item = (MultiIndex, Cx<R>)>) -> Self {
        let mut v = Self::zero(shape);
        for (j, c) in entries {
            v.add_at(shape.pack(&j), c);
        }
        v
    }

    pub fn shape(&self) -> TensorShape {
        self.shape
    }

    pub fn get(&self, j: &[usize]) -> Cx<R> {
        self.get_packed(self.shape.pack(j))
    }

    pub fn get_packed(&self, idx: usize) -> Cx<R> {
        self.coeffs.get(&idx).copied().unwrap_or_else(Cx::zero)
    }

    pub fn add_at(&mut self, idx: usize, c: Cx<R>) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(idx).or_insert_with(Cx::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    /// Stored `(packed index, coefficient)` pairs in index order.
    pub fn iter_packed(&self) -> impl Iterator<Item = (usize, Cx<R>)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn entries(&self) -> Vec<(MultiIndex, Cx<R>)> {
        self.coeffs.iter().map(|(k, v)| (self.shape.unpack(*k), *v)).collect()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> R {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<R>().sqrt()
    }

    pub fn scale(&self, s: Cx<R>) -> Self {
        let mut out = Self::zero(self.shape);
        for (&k, c) in &self.coeffs {
            out.add_at(k, c * s);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, s: Cx<R>) {
        debug_assert_eq!(self.shape, other.shape);
        for (&k, c) in &other.coeffs {
            self.add_at(k, c * s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, Cx::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, -Cx::<R>::one());
        out
    }

    /// Drops entries below `rel_tol * ‖v‖`.
    pub fn pruned(&self, rel_tol: R) -> Self {
        let cut = rel_tol * self.norm();
        Self {
            shape: self.shape,
            coeffs: self.coeffs.iter().filter(|(_, c)| c.norm() >= cut).map(|(k, c)| (*k, *c)).collect(),
        }
    }

    /// Weights of all stored indices (deduplicated, sorted).
    pub fn weights(&self) -> Vec<Vec<usize>> {
        let mut w: Vec<Vec<usize>> =
            self.coeffs.keys().map(|&k| weight_of(&self.shape.unpack(k), self.shape.n_dim)).collect();
        w.sort();
        w.dedup();
        w
    }

    pub fn to_dense(&self) -> Vec<Cx<R>> {
        let mut d = vec![Cx::zero(); self.shape.dim()];
        for (&k, c) in &self.coeffs {
            d[k] = *c;
        }
        d
    }
}

/// `e_ij` acting on tensor factor `site`: `e_ij e_k = δ_jk e_i`.
pub fn apply_e<R: Real>(i: usize, j: usize, site: usize, v: &TensorVector<R>) -> TensorVector<R> {
    let shape = v.shape;
    let mut out = TensorVector::zero(shape);
    for (idx, c) in v.iter_packed() {
        if shape.digit(idx, site) == j {
            out.add_at(shape.with_digit(idx, site, i), c);
        }
    }
    out
}

/// `Σ_s e_ij^(s) v`, the global gl_N action.
pub fn apply_e_total<R: Real>(i: usize, j: usize, v: &TensorVector<R>) -> TensorVector<R> {
    let shape = v.shape;
    let mut out = TensorVector::zero(shape);
    for site in 1..=shape.sites {
        for (idx, c) in v.iter_packed() {
            if shape.digit(idx, site) == j {
                out.add_at(shape.with_digit(idx, site, i), c);
            }
        }
    }
    out
}

/// `max_i ‖Σ_s e_{i,i+1}^(s) v‖ / max(‖v‖, 1)`; zero iff `v` is singular.
pub fn raising_residual<R: Real>(v: &TensorVector<R>) -> R {
    if v.is_zero() {
        return R::zero();
    }
    let denom = v.norm().max(R::one());
    (1..v.shape.n_dim).map(|i| apply_e_total(i, i + 1, v).norm() / denom).fold(R::zero(), R::max)
}

/// Tensor Shapovalov form: `Σ_J v_J w_J` (bilinear, no conjugation).
pub fn shapovalov<R: Real>(v: &TensorVector<R>, w: &TensorVector<R>) -> Cx<R> {
    debug_assert_eq!(v.shape, w.shape);
    let (small, big) = if v.nnz() <= w.nnz() { (v, w) } else { (w, v) };
    small.iter_packed().map(|(k, c)| c * big.get_packed(k)).fold(Cx::zero(), |a, b| a + b)
}

#[derive(Serialize, Deserialize)]
struct WireEntry {
    #[serde(rename = "J")]
    j: Vec<usize>,
    c: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct WireTensor {
    #[serde(rename = "N")]
    n_dim: usize,
    n: usize,
    entries: Vec<WireEntry>,
}

impl<R: Real> Serialize for TensorVector<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireTensor {
            n_dim: self.shape.n_dim,
            n: self.shape.sites,
            entries: self
                .coeffs
                .iter()
                .map(|(k, c)| WireEntry { j: self.shape.unpack(*k), c: json::pair(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, R: Real> Deserialize<'de> for TensorVector<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WireTensor::deserialize(d)?;
        let shape = TensorShape::new(w.n_dim, w.n).map_err(serde::de::Error::custom)?;
        let mut v = TensorVector::zero(shape);
        for e in w.entries {
            if e.j.len() != w.n || e.j.iter().any(|&x| x == 0 || x > w.n_dim) {
                return Err(serde::de::Error::custom(format!("bad multi-index {:?}", e.j)));
            }
            v.add_at(shape.pack(&e.j), json::unpair(e.c));
        }
        Ok(v)
    }
}

/// Sparse linear operator on `V^{⊗n}`, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOp<R: Real = f64> {
    shape: TensorShape,
    /// `cols[j]` holds `(row, value)` pairs sorted by row.
    cols: Vec<Vec<(u32, Cx<R>)>>,
}

impl<R: Real> SparseOp<R> {
    pub fn zero(shape: TensorShape) -> Self {
        Self { shape, cols: vec![Vec::new(); shape.dim()] }
    }

    pub fn identity(shape: TensorShape) -> Self {
        Self { shape, cols: (0..shape.dim()).map(|j| vec![(j as u32, Cx::one())]).collect() }
    }

    /// `e_ij` acting on tensor factor `site`.
    pub fn site_unit(shape: TensorShape, i: usize, j: usize, site: usize) -> Self {
        let cols = (0..shape.dim())
            .map(|col| {
                if shape.digit(col, site) == j {
                    vec![(shape.with_digit(col, site, i) as u32, Cx::one())]
                } else {
                    Vec::new()
                }
            })
            .collect();
        Self { shape, cols }
    }

    pub fn shape(&self) -> TensorShape {
        self.shape
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, v: &TensorVector<R>) -> TensorVector<R> {
        let mut out = TensorVector::zero(self.shape);
        self.apply_into(v, Cx::one(), &mut out);
        out
    }

    /// `out += s * (self v)`.
    pub fn apply_into(&self, v: &TensorVector<R>, s: Cx<R>, out: &mut TensorVector<R>) {
        for (j, c) in v.iter_packed() {
            let cs = c * s;
            for &(i, a) in &self.cols[j] {
                out.add_at(i as usize, a * cs);
            }
        }
    }

    /// Dense `(row, col) -> value` view, for tests and diagnostics.
    pub fn entry(&self, row: usize, col: usize) -> Cx<R> {
        self.cols[col].iter().find(|(r, _)| *r as usize == row).map(|(_, v)| *v).unwrap_or_else(Cx::zero)
    }

    fn merge_cols(a: &[(u32, Cx<R>)], b: &[(u32, Cx<R>)]) -> Vec<(u32, Cx<R>)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let take_a = y >= b.len() || (x < a.len() && a[x].0 < b[y].0);
            let take_b = x >= a.len() || (y < b.len() && b[y].0 < a[x].0);
            if take_a {
                out.push(a[x]);
                x += 1;
            } else if take_b {
                out.push(b[y]);
                y += 1;
            } else {
                let s = a[x].1 + b[y].1;
                if !s.is_zero() {
                    out.push((a[x].0, s));
                }
                x += 1;
                y += 1;
            }
        }
        out
    }
}

impl<R: Real> crate::ratfn::Coeff<R> for SparseOp<R> {
    fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            if !b.is_empty() {
                *a = Self::merge_cols(a, b);
            }
        }
    }

    fn scaled(&self, s: Cx<R>) -> Self {
        if Zero::is_zero(&s) {
            return Self::zero(self.shape);
        }
        Self {
            shape: self.shape,
            cols: self.cols.iter().map(|c| c.iter().map(|&(i, v)| (i, v * s)).collect()).collect(),
        }
    }

    fn compose(&self, other: &Self) -> Self {
        let dim = self.shape.dim();
        let mut scratch = vec![Cx::<R>::zero(); dim];
        let mut touched: Vec<u32> = Vec::new();
        let mut mark = vec![false; dim];
        let cols = other
            .cols
            .iter()
            .map(|bcol| {
                for &(k, b) in bcol {
                    for &(i, a) in &self.cols[k as usize] {
                        let iu = i as usize;
                        if !mark[iu] {
                            mark[iu] = true;
                            touched.push(i);
                        }
                        scratch[iu] += a * b;
                    }
                }
                touched.sort_unstable();
                let col: Vec<(u32, Cx<R>)> = touched
                    .iter()
                    .filter_map(|&i| {
                        let iu = i as usize;
                        let v = scratch[iu];
                        scratch[iu] = Cx::zero();
                        mark[iu] = false;
                        (!Zero::is_zero(&v)).then_some((i, v))
                    })
                    .collect();
                touched.clear();
                col
            })
            .collect();
        Self { shape: self.shape, cols }
    }
}
