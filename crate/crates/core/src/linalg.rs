//! Small dense complex linear algebra. Matrices are row-major `Vec<Vec<Cx<R>>>`; sizes here stay in the tens.

use num_traits::{One, Zero};

use crate::scalar::{Cx, Real};

pub type Matrix<R> = Vec<Vec<Cx<R>>>;

pub fn zeros<R: Real>(rows: usize, cols: usize) -> Matrix<R> {
    vec![vec![Cx::zero(); cols]; rows]
}

/// LU factorisation with partial pivoting, in place. Returns the row
/// permutation parity, or `None` when a pivot is exactly zero.
fn lu_in_place<R: Real>(a: &mut Matrix<R>, perm: &mut [usize]) -> Option<bool> {
    let n = a.len();
    let mut odd = false;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().partial_cmp(&a[j][k].norm()).unwrap()).unwrap();
        if a[p][k].is_zero() {
            return None;
        }
        if p != k {
            a.swap(p, k);
            perm.swap(p, k);
            odd = !odd;
        }
        let pivot = a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            a[i][k] = f;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
    }
    Some(odd)
}

/// Determinant; the empty matrix has determinant one.
pub fn det<R: Real>(m: &Matrix<R>) -> Cx<R> {
    let n = m.len();
    if n == 0 {
        return Cx::one();
    }
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    match lu_in_place(&mut a, &mut perm) {
        None => Cx::zero(),
        Some(odd) => {
            let d = (0..n).fold(Cx::<R>::one(), |acc, i| acc * a[i][i]);
            if odd {
                -d
            } else {
                d
            }
        }
    }
}

/// Solves `m x = b`; `None` for an exactly singular matrix.
pub fn solve<R: Real>(m: &Matrix<R>, b: &[Cx<R>]) -> Option<Vec<Cx<R>>> {
    let n = m.len();
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    lu_in_place(&mut a, &mut perm)?;
    let mut y: Vec<Cx<R>> = perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for j in 0..i {
            let t = a[i][j] * y[j];
            y[i] -= t;
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let t = a[i][j] * y[j];
            y[i] -= t;
        }
        y[i] /= a[i][i];
    }
    Some(y)
}

/// Thin SVD `A = U diag(s) V^H` of an `m x k` matrix with `m >= k`.
pub struct Svd<R: Real> {
    /// Columns of `U` (each of length `m`), unit norm where `s > 0`.
    pub u_cols: Vec<Vec<Cx<R>>>,
    pub s: Vec<R>,
    /// Columns of `V` (each of length `k`).
    pub v_cols: Vec<Vec<Cx<R>>>,
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd<R: Real>(a: &Matrix<R>) -> Svd<R> {
    let m = a.len();
    let k = if m == 0 { 0 } else { a[0].len() };
    let mut cols: Vec<Vec<Cx<R>>> = (0..k).map(|j| (0..m).map(|i| a[i][j]).collect()).collect();
    let mut v: Vec<Vec<Cx<R>>> =
        (0..k).map(|j| (0..k).map(|i| if i == j { Cx::one() } else { Cx::zero() }).collect()).collect();
    let tol = R::epsilon() * R::lit(m.max(1) as f64);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha: R = cols[p].iter().map(|c| c.norm_sqr()).sum();
                let beta: R = cols[q].iter().map(|c| c.norm_sqr()).sum();
                let gamma: Cx<R> = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() || g.is_zero() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (g + g);
                let t = zeta.signum() / (zeta.abs() + (R::one() + zeta * zeta).sqrt());
                let c = R::one() / (R::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let xp = cols[p][i];
                    let xq = cols[q][i] * phase.conj();
                    cols[p][i] = xp * c - xq * s;
                    cols[q][i] = xp * s + xq * c;
                }
                for i in 0..k {
                    let xp = v[p][i];
                    let xq = v[q][i] * phase.conj();
                    v[p][i] = xp * c - xq * s;
                    v[q][i] = xp * s + xq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let s: Vec<R> = cols.iter().map(|c| c.iter().map(|x| x.norm_sqr()).sum::<R>().sqrt()).collect();
    let u_cols = cols
        .into_iter()
        .zip(&s)
        .map(|(c, &sv)| if sv > R::zero() { c.into_iter().map(|x| x / sv).collect() } else { c })
        .collect();
    Svd { u_cols, s, v_cols: v }
}

/// Orthonormal basis of the numerical nullspace: right singular vectors whose
/// singular value is at most `rel_tol * s_max`.
pub fn nullspace<R: Real>(a: &Matrix<R>, rel_tol: R) -> Vec<Vec<Cx<R>>> {
    let d = svd(a);
    let smax = d.s.iter().copied().fold(R::zero(), R::max);
    let mut idx: Vec<usize> = (0..d.s.len()).filter(|&j| d.s[j] <= rel_tol * smax).collect();
    idx.sort_by(|&i, &j| d.s[i].partial_cmp(&d.s[j]).unwrap());
    idx.into_iter().map(|j| d.v_cols[j].clone()).collect()
}

/// Least-squares solution for several right-hand sides sharing one design
/// matrix, via SVD with relative cut-off `rcond`.
pub fn lstsq_multi<R: Real>(a: &Matrix<R>, rhs: &[Vec<Cx<R>>], rcond: R) -> Vec<Vec<Cx<R>>> {
    let d = svd(a);
    let k = d.s.len();
    let smax = d.s.iter().copied().fold(R::zero(), R::max);
    rhs.iter()
        .map(|b| {
            let mut x = vec![Cx::<R>::zero(); k];
            for j in 0..k {
                if d.s[j] <= rcond * smax || d.s[j].is_zero() {
                    continue;
                }
                let proj: Cx<R> = d.u_cols[j].iter().zip(b).map(|(u, bi)| u.conj() * bi).sum();
                let w = proj / d.s[j];
                for (xi, vi) in x.iter_mut().zip(&d.v_cols[j]) {
                    *xi += vi * w;
                }
            }
            x
        })
        .collect()
}

pub fn mat_vec<R: Real>(a: &Matrix<R>, x: &[Cx<R>]) -> Vec<Cx<R>> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn m(rows: &[&[(f64, f64)]]) -> Matrix<f64> {
        rows.iter().map(|r| r.iter().map(|&(a, b)| cx(a, b)).collect()).collect()
    }

    #[test]
    fn determinant_and_solve() {
        let a = m(&[&[(2.0, 0.0), (1.0, 1.0)], &[(0.0, -1.0), (3.0, 0.0)]]);
        // 6 - (1+i)(-i) = 6 - (1 - i)
        let d = det(&a);
        assert!((d - cx(5.0, 1.0)).norm() < 1e-14);
        let b = vec![cx(1.0, 0.0), cx(0.0, 2.0)];
        let x = solve(&a, &b).unwrap();
        let back = mat_vec(&a, &x);
        assert!((back[0] - b[0]).norm() < 1e-13 && (back[1] - b[1]).norm() < 1e-13);
        assert_eq!(det::<f64>(&Vec::new()), cx(1.0, 0.0));
        assert!(solve(&m(&[&[(0.0, 0.0)]]), &[cx(1.0, 0.0)]).is_none());
    }

    #[test]
    fn svd_nullspace_of_rank_deficient() {
        // third column = first + i*second
        let rows: Vec<Vec<Cx<f64>>> = (0..5)
            .map(|i| {
                let a: Cx<f64> = cx(i as f64, 1.0);
                let b: Cx<f64> = cx(1.0, -(i as f64) * 0.5);
                vec![a, b, a + cx::<f64>(0.0, 1.0) * b]
            })
            .collect();
        let ns = nullspace(&rows, 1e-10);
        assert_eq!(ns.len(), 1);
        let r = mat_vec(&rows, &ns[0]);
        assert!(r.iter().all(|c| c.norm() < 1e-12));
    }

    #[test]
    fn least_squares_recovers_exact_fit() {
        let xs: Vec<f64> = (0..8).map(|i| i as f64 * 0.3 - 1.0).collect();
        let a: Matrix<f64> = xs.iter().map(|&x| vec![cx(1.0, 0.0), cx(x, 0.0), cx(x * x, 0.0)]).collect();
        let b: Vec<Cx<f64>> = xs.iter().map(|&x| cx(2.0 - x + 0.5 * x * x, x)).collect();
        let sol = &lstsq_multi(&a, &[b], 1e-12)[0];
        assert!((sol[0] - cx(2.0, 0.0)).norm() < 1e-12);
        assert!((sol[1] - cx(-1.0, 1.0)).norm() < 1e-12);
        assert!((sol[2] - cx(0.5, 0.0)).norm() < 1e-12);
    }
}
