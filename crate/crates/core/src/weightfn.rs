//! The universal weight function and Bethe vectors.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{GaudinError, Result};
use crate::master::{CriticalPoint, Tolerances};
use crate::repr::{admissible_indices, raising_residual, shapovalov, TensorShape, TensorVector};
use crate::scalar::{Cx, Real};

/// Largest supported `l_1! ⋯ l_{N-1}!`.
pub const MAX_ORBIT_SIZE: usize = 720;

fn permutations(n: usize) -> Vec<Vec<usize>> {
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
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Evaluates `ω_J` for many `J` at a fixed point, sharing the bijection lists.
pub struct WeightFunction<'a, R: Real> {
    point: &'a CriticalPoint<R>,
    /// `perms[i-1]`: all bijections onto `{0..l_i}`.
    perms: Vec<Vec<Vec<usize>>>,
}

impl<'a, R: Real> WeightFunction<'a, R> {
    pub fn new(point: &'a CriticalPoint<R>) -> Result<Self> {
        point.check_distinct()?;
        let lam = point.partition()?;
        if lam.orbit_size() > MAX_ORBIT_SIZE {
            return Err(GaudinError::TooLarge { dim: lam.orbit_size(), cap: MAX_ORBIT_SIZE });
        }
        let perms = (1..point.n_dim()).map(|a| permutations(point.level(a).len())).collect();
        Ok(Self { point, perms })
    }

    /// `ω_J`: sum over `γ ∈ Γ(J)` of `Π_{a ∈ A_1(J)} ω_{a,γ}`.
    pub fn omega(&self, j: &[usize]) -> Result<Cx<R>> {
        let p = self.point;
        let nd = p.n_dim();
        if j.len() != p.z().len() || j.iter().any(|&x| x == 0 || x > nd) {
            return Err(GaudinError::InvalidInput(format!("bad multi-index {j:?}")));
        }
        // members[i-1] = A_i(J) in increasing site order
        let members: Vec<Vec<usize>> = (1..nd).map(|i| (0..j.len()).filter(|&a| j[a] > i).collect()).collect();
        for (i, m) in members.iter().enumerate() {
            if m.len() != p.level(i + 1).len() {
                return Err(GaudinError::InvalidInput(format!("multi-index {j:?} is not admissible")));
            }
        }
        let mut choice = vec![0usize; nd.saturating_sub(1)];
        let mut total = Cx::<R>::zero();
        loop {
            // gamma[i-1][k] = label of the k-th member of A_i
            let mut term = Cx::<R>::one();
            for (k, &a) in members.first().map(Vec::as_slice).unwrap_or(&[]).iter().enumerate() {
                let mut prev = p.z()[a];
                let mut label = self.perms[0][choice[0]][k];
                term *= (p.level(1)[label] - prev).inv();
                for i in 2..j[a] {
                    prev = p.level(i - 1)[label];
                    let pos = members[i - 1].iter().position(|&b| b == a).expect("nested sets");
                    label = self.perms[i - 1][choice[i - 1]][pos];
                    term *= (p.level(i)[label] - prev).inv();
                }
            }
            total += term;
            // odometer over levels
            let mut lvl = 0;
            loop {
                if lvl == choice.len() {
                    return Ok(total);
                }
                choice[lvl] += 1;
                if choice[lvl] < self.perms[lvl].len() {
                    break;
                }
                choice[lvl] = 0;
                lvl += 1;
            }
        }
    }
}

/// `ω_J(T)` for a single multi-index.
pub fn omega_j<R: Real>(point: &CriticalPoint<R>, j: &[usize]) -> Result<Cx<R>> {
    WeightFunction::new(point)?.omega(j)
}

/// `ω(T) = Σ_J ω_J(T) e_J v` over admissible `J`.
pub fn bethe_vector<R: Real>(point: &CriticalPoint<R>) -> Result<TensorVector<R>> {
    let wf = WeightFunction::new(point)?;
    let lam = point.partition()?;
    let shape = TensorShape::new(lam.n_parts(), lam.size())?;
    let idx = admissible_indices(&lam);
    let vals: Vec<Result<Cx<R>>> = idx.par_iter().map(|j| wf.omega(j)).collect();
    let mut v = TensorVector::zero(shape);
    for (j, c) in idx.iter().zip(vals) {
        v.add_at(shape.pack(j), c?);
    }
    Ok(v)
}

/// Bethe vector at a critical point, with its singularity checked.
pub fn checked_bethe_vector<R: Real>(point: &CriticalPoint<R>, tol: &Tolerances) -> Result<TensorVector<R>> {
    let v = bethe_vector(point)?;
    let r = raising_residual(&v).to_f64_lossy();
    if r >= tol.check_tol {
        return Err(GaudinError::InvalidInput(format!("Bethe vector is not singular: raising residual {r:e}")));
    }
    Ok(v)
}

/// `(S(ω,ω), Hess, relative error)`.
pub fn norm_hessian_check<R: Real>(point: &CriticalPoint<R>) -> Result<(Cx<R>, Cx<R>, R)> {
    let w = bethe_vector(point)?;
    let lhs = shapovalov(&w, &w);
    let rhs = point.hessian()?;
    let denom = lhs.norm().max(rhs.norm());
    let rel = if denom.is_zero() { R::zero() } else { (lhs - rhs).norm() / denom };
    Ok((lhs, rhs, rel))
}

/// `S(ω(T1), ω(T2))` and its size relative to `‖ω(T1)‖ ‖ω(T2)‖`.
pub fn orthogonality_check<R: Real>(t1: &CriticalPoint<R>, t2: &CriticalPoint<R>, dedup_tol: R) -> Result<(Cx<R>, R)> {
    if t1.z() != t2.z() {
        return Err(GaudinError::InvalidInput("points have different sites".into()));
    }
    if t1.to_sigma().distance(&t2.to_sigma()) <= dedup_tol {
        return Err(GaudinError::SameOrbit);
    }
    let (a, b) = (bethe_vector(t1)?, bethe_vector(t2)?);
    let s = shapovalov(&a, &b);
    let scale = a.norm() * b.norm();
    Ok((s, if scale.is_zero() { s.norm() } else { s.norm() / scale }))
}
