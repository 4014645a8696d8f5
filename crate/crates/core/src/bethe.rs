//! The universal differential operator `D = rdet(δ_ij ∂ − e_ji(u))` on the
//! evaluation module `⊗_s V(z_s)`, with operator-valued rational
//! coefficients `B_1(u), …, B_N(u)`.

use num_traits::One;
use rayon::prelude::*;

use crate::error::{GaudinError, Result};
use crate::ratfn::{Coeff, PartialFractions};
use crate::repr::{SparseOp, TensorShape, TensorVector};
use crate::scalar::{binomial, Cx, Real};
use crate::schubert::ScalarDiffOp;

/// Minimum separation of the sites `z_s`.
pub const SITE_GAP_TOL: f64 = 1e-8;
/// Minimum distance from an evaluation point to every site.
pub const SITE_EVAL_TOL: f64 = 1e-6;

/// `Σ_m terms[m] ∂^m` with rational coefficients in a ring `C`, all
/// coefficients written to the left of `∂`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<R: Real, C> {
    terms: Vec<PartialFractions<R, C>>,
}

impl<R: Real, C: Coeff<R>> DiffOp<R, C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<PartialFractions<R, C>>) -> Self {
        while terms.last().is_some_and(|t| t.is_zero()) {
            terms.pop();
        }
        Self { terms }
    }

    /// `c ∂ + f`.
    pub fn linear(c: C, f: PartialFractions<R, C>) -> Self {
        Self::from_terms(vec![f, PartialFractions::constant(c)])
    }

    pub fn terms(&self) -> &[PartialFractions<R, C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<PartialFractions<R, C>> {
        self.terms
    }

    pub fn order(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.terms.len() < other.terms.len() {
            self.terms.resize_with(other.terms.len(), PartialFractions::zero);
        }
        for (a, b) in self.terms.iter_mut().zip(&other.terms) {
            a.add_assign(b)?;
        }
        while self.terms.last().is_some_and(|t| t.is_zero()) {
            self.terms.pop();
        }
        Ok(())
    }

    pub fn scale(&self, s: Cx<R>) -> Self {
        Self::from_terms(self.terms.iter().map(|t| t.scale(s)).collect())
    }

    /// Product in the ring of differential operators, normal ordered with
    /// `∂^m b = Σ_r C(m,r) b^(r) ∂^(m-r)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Ok(Self::zero());
        }
        let max_m = self.terms.len() - 1;
        // derivs[k][r] = r-th derivative of other.terms[k]
        let derivs: Vec<Vec<PartialFractions<R, C>>> = other
            .terms
            .iter()
            .map(|b| {
                let mut out = vec![b.clone()];
                for r in 1..=max_m {
                    let next = out[r - 1].derivative();
                    out.push(next);
                }
                out
            })
            .collect();
        let mut out = vec![PartialFractions::zero(); max_m + other.terms.len()];
        for (m, a) in self.terms.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, dk) in derivs.iter().enumerate() {
                for (r, b) in dk.iter().enumerate().take(m + 1) {
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?.scale(Cx::new(binomial::<R>(m, r), R::zero()));
                    out[m - r + k].add_assign(&prod)?;
                }
            }
        }
        Ok(Self::from_terms(out))
    }
}

/// All permutations of `0..n` in lexicographic order with their signs.
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (p, inversions % 2 == 1)
        })
        .collect()
}

fn check_sites<R: Real>(z: &[Cx<R>]) -> Result<()> {
    let mut gap = R::infinity();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            gap = gap.min((z[i] - z[j]).norm());
        }
    }
    if gap <= R::lit(SITE_GAP_TOL) {
        return Err(GaudinError::DegenerateSites { gap: gap.to_f64_lossy() });
    }
    Ok(())
}

type OpRat<R> = PartialFractions<R, SparseOp<R>>;

/// `D = ∂^N + Σ_i B_i(u) ∂^(N-i)` acting on `V^{⊗n}`.
#[derive(Clone, Debug)]
pub struct OperatorDiffOp<R: Real = f64> {
    shape: TensorShape,
    z: Vec<Cx<R>>,
    /// `b[i-1] = B_i(u)`.
    b: Vec<OpRat<R>>,
}

/// `e_ij(u) = Σ_s e_ij^(s) / (u - z_s)`.
fn current<R: Real>(shape: TensorShape, z: &[Cx<R>], i: usize, j: usize) -> Result<OpRat<R>> {
    let mut f = OpRat::zero();
    for (s, &zs) in z.iter().enumerate() {
        f.add_pole_term(zs, 1, SparseOp::site_unit(shape, i, j, s + 1))?;
    }
    Ok(f)
}

impl<R: Real> OperatorDiffOp<R> {
    /// Expands the row determinant permutation by permutation.
    pub fn build(n_dim: usize, z: &[Cx<R>]) -> Result<Self> {
        check_sites(z)?;
        let shape = TensorShape::new(n_dim, z.len())?;
        let id = SparseOp::identity(shape);
        let mut entries: Vec<Vec<DiffOp<R, SparseOp<R>>>> = Vec::with_capacity(n_dim);
        for i in 1..=n_dim {
            let mut row = Vec::with_capacity(n_dim);
            for j in 1..=n_dim {
                let f = current(shape, z, j, i)?.neg();
                row.push(if i == j { DiffOp::linear(id.clone(), f) } else { DiffOp::from_terms(vec![f]) });
            }
            entries.push(row);
        }
        let terms: Vec<Result<DiffOp<R, SparseOp<R>>>> = signed_permutations(n_dim)
            .into_par_iter()
            .map(|(perm, odd)| {
                let mut acc = entries[0][perm[0]].clone();
                for (row, &col) in perm.iter().enumerate().skip(1) {
                    acc = acc.mul(&entries[row][col])?;
                }
                Ok(if odd { acc.scale(-Cx::<R>::one()) } else { acc })
            })
            .collect();
        let mut total = DiffOp::zero();
        for t in terms {
            total.add_assign(&t?)?;
        }
        let mut coeffs = total.into_terms();
        coeffs.resize_with(n_dim + 1, PartialFractions::zero);
        let lead = coeffs.pop().expect("order N");
        debug_assert!(lead.poles().is_empty() && lead.poly_terms().len() == 1);
        coeffs.reverse();
        Ok(Self { shape, z: z.to_vec(), b: coeffs })
    }

    pub fn shape(&self) -> TensorShape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn sites(&self) -> &[Cx<R>] {
        &self.z
    }

    /// `B_i(u)` in partial-fraction form.
    pub fn coefficient(&self, i: usize) -> &PartialFractions<R, SparseOp<R>> {
        &self.b[i - 1]
    }

    fn check_point(&self, u: Cx<R>) -> Result<()> {
        let dist = self.z.iter().map(|&zs| (u - zs).norm()).fold(R::infinity(), R::min);
        if dist <= R::lit(SITE_EVAL_TOL) {
            return Err(GaudinError::PoleEvaluation { distance: dist.to_f64_lossy() });
        }
        Ok(())
    }

    /// `B_i(u) v`.
    pub fn apply_bi(&self, i: usize, u: Cx<R>, v: &TensorVector<R>) -> Result<TensorVector<R>> {
        if i == 0 || i > self.order() {
            return Err(GaudinError::InvalidInput(format!("coefficient index {i} out of 1..={}", self.order())));
        }
        self.check_point(u)?;
        let mut out = TensorVector::zero(self.shape);
        self.b[i - 1].for_each_term_at(u, |op, w| op.apply_into(v, w, &mut out))?;
        Ok(out)
    }

    /// `max_{u,i} ‖B_i(u) v − b_i(u) v‖ / ‖v‖`.
    pub fn eigen_residual(&self, v: &TensorVector<R>, scalar: &ScalarDiffOp<R>, samples: &[Cx<R>]) -> Result<R> {
        let norm = v.norm();
        if norm.is_zero() {
            return Err(GaudinError::InvalidInput("eigen residual of the zero vector".into()));
        }
        if scalar.order() != self.order() {
            return Err(GaudinError::InvalidInput(format!(
                "scalar operator has order {}, expected {}",
                scalar.order(),
                self.order()
            )));
        }
        let mut worst = R::zero();
        for &u in samples {
            for i in 1..=self.order() {
                let bv = self.apply_bi(i, u, v)?;
                let lam = scalar.eval_coeff(i, u)?;
                worst = worst.max(bv.sub(&v.scale(lam)).norm() / norm);
            }
        }
        Ok(worst)
    }
}
