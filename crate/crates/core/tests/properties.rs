use gaudin_core::averaging::{random_sites, OrbitData, SymPolyF};
use gaudin_core::bethe::OperatorDiffOp;
use gaudin_core::characters::{char_o, hilbert_oracle, QSeries};
use gaudin_core::master::{CriticalPoint, SolverBudget, Tolerances};
use gaudin_core::poly::{wronskian, Polynomial};
use gaudin_core::ratfn::PartialFractions;
use gaudin_core::repr::{apply_e, shapovalov, singular_dim, Partition, TensorShape, TensorVector};
use gaudin_core::schubert::{flag_basis, PolySpace};
use gaudin_core::weightfn::bethe_vector;
use gaudin_core::C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cplx() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b))
}

fn poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(cplx(), 0..max_len).prop_map(Polynomial::new)
}

fn spread(n: usize, gap: f64) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(cplx(), n).prop_filter("points too close", move |v| {
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| (v[i] - v[j]).norm() > gap))
    })
}

fn vector(shape: TensorShape) -> impl Strategy<Value = TensorVector> {
    prop::collection::vec(cplx(), shape.dim()).prop_map(move |c| {
        TensorVector::from_entries(shape, c.into_iter().enumerate().map(|(k, x)| (shape.unpack(k), x)))
    })
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

fn syt_count(shape: &[usize]) -> usize {
    if shape.iter().all(|&p| p == 0) {
        return 1;
    }
    (0..shape.len())
        .filter(|&i| shape[i] > 0 && shape.get(i + 1).is_none_or(|&n| n < shape[i]))
        .map(|i| {
            let mut s = shape.to_vec();
            s[i] -= 1;
            syt_count(&s)
        })
        .sum()
}

fn partition() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..5, 1..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_product_evaluates_pointwise(p in poly(6), q in poly(6), u in cplx()) {
        prop_assert!(close((&p * &q).eval(u), p.eval(u) * q.eval(u), 1e-10));
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        prop_assert!(close(lhs.eval(u), rhs.eval(u), 1e-10));
    }

    #[test]
    fn wronskian_is_alternating(p in poly(5), q in poly(5), u in cplx()) {
        let a = wronskian(&[p.clone(), q.clone()]);
        let b = wronskian(&[q.clone(), p.clone()]);
        prop_assert!(close(a.eval(u), -b.eval(u), 1e-10));
        let direct = p.eval(u) * q.derivative().eval(u) - p.derivative().eval(u) * q.eval(u);
        prop_assert!(close(a.eval(u), direct, 1e-10));
        prop_assert!(wronskian(&[p.clone(), p.clone()]).max_coeff_norm() <= 1e-10 * (1.0 + p.max_coeff_norm().powi(2)));
    }

    #[test]
    fn partial_fractions_match_quotient(roots in spread(3, 0.3), num in poly(4), u in cplx()) {
        let den = Polynomial::from_roots(&roots);
        prop_assume!(roots.iter().all(|r| (u - r).norm() > 0.2));
        let pf = PartialFractions::from_quotient(&num, &den).unwrap();
        prop_assert!(close(pf.eval(u).unwrap(), num.eval(u) / den.eval(u), 1e-8));
        let sq = pf.mul(&pf).unwrap();
        prop_assert!(close(sq.eval(u).unwrap(), pf.eval(u).unwrap().powu(2), 1e-8));
    }

    #[test]
    fn gl_commutation_relations(v in vector(TensorShape::new(3, 2).unwrap()), i in 1..4usize, j in 1..4usize, k in 1..4usize, l in 1..4usize) {
        // [e_ij, e_kl] = δ_jk e_il − δ_li e_kj, summed over sites
        let tot = |a: usize, b: usize, x: &TensorVector| {
            let mut out = TensorVector::zero(x.shape());
            for s in 0..2 {
                out = out.add(&apply_e(a, b, s, x));
            }
            out
        };
        let lhs = tot(i, j, &tot(k, l, &v)).sub(&tot(k, l, &tot(i, j, &v)));
        let mut rhs = TensorVector::zero(v.shape());
        if j == k {
            rhs = rhs.add(&tot(i, l, &v));
        }
        if l == i {
            rhs = rhs.sub(&tot(k, j, &v));
        }
        prop_assert!(lhs.sub(&rhs).norm() < 1e-12 * (1.0 + v.norm()));
    }

    #[test]
    fn shapovalov_adjoint(v in vector(TensorShape::new(2, 3).unwrap()), w in vector(TensorShape::new(2, 3).unwrap()), s in 0..3usize) {
        let a = shapovalov(&apply_e(1, 2, s, &v), &w);
        let b = shapovalov(&v, &apply_e(2, 1, s, &w));
        prop_assert!(close(a, b, 1e-12));
    }

    #[test]
    fn singular_dim_counts_tableaux(p in partition()) {
        let l = Partition::new(p.clone()).unwrap();
        prop_assert_eq!(singular_dim(&l), syt_count(&p));
    }

    #[test]
    fn master_derivatives(z in spread(4, 0.4), t in spread(2, 0.3), h in 1e-6..1e-5f64) {
        prop_assume!(t.iter().all(|x| z.iter().all(|y| (x - y).norm() > 0.3)));
        let p = CriticalPoint::new(z, vec![t.clone()]).unwrap();
        let r = p.bae_residual().unwrap();
        let hm = p.hessian_matrix().unwrap();
        for k in 0..t.len() {
            let shift = |d: f64| {
                let mut tt = t.clone();
                tt[k] += C64::new(d, 0.0);
                p.with_flat_t(&tt)
            };
            let (pp, pm) = (shift(h), shift(-h));
            let dlog = (pp.log_phi().unwrap() - pm.log_phi().unwrap()) / (2.0 * h);
            prop_assert!(close(-dlog, r[k], 1e-5), "gradient {} vs {}", -dlog, r[k]);
            let (rp, rm) = (pp.bae_residual().unwrap(), pm.bae_residual().unwrap());
            for i in 0..t.len() {
                let fd = (rp[i] - rm[i]) / (2.0 * h);
                prop_assert!(close(-fd, hm[i][k], 1e-4), "hessian {} vs {}", -fd, hm[i][k]);
            }
        }
    }

    #[test]
    fn master_homogeneity(z in spread(4, 0.4), t in spread(2, 0.3), c in cplx()) {
        prop_assume!(c.norm() > 0.3);
        prop_assume!(t.iter().all(|x| z.iter().all(|y| (x - y).norm() > 0.3)));
        let p = CriticalPoint::new(z, vec![t]).unwrap();
        let q = p.scaled(c);
        let (r, rq) = (p.bae_residual().unwrap(), q.bae_residual().unwrap());
        for (a, b) in r.iter().zip(&rq) {
            prop_assert!(close(a / c, *b, 1e-10));
        }
        let (h, hq) = (p.hessian().unwrap(), q.hessian().unwrap());
        prop_assert!(close(h / c.powu(4), hq, 1e-9));
        let (w, wq) = (bethe_vector(&p).unwrap(), bethe_vector(&q).unwrap());
        prop_assert!(w.scale(c.powu(2).inv()).sub(&wq).norm() < 1e-9 * (1.0 + w.norm()));
    }

    #[test]
    fn weight_function_symmetric_in_levels(z in spread(4, 0.4), t in spread(3, 0.3)) {
        prop_assume!(t.iter().all(|x| z.iter().all(|y| (x - y).norm() > 0.3)));
        let p = CriticalPoint::new(z.clone(), vec![t[..2].to_vec(), t[2..].to_vec()]).unwrap();
        let q = CriticalPoint::new(z, vec![vec![t[1], t[0]], t[2..].to_vec()]).unwrap();
        let (w, wq) = (bethe_vector(&p).unwrap(), bethe_vector(&q).unwrap());
        prop_assert!(w.sub(&wq).norm() < 1e-12 * (1.0 + w.norm()));
    }

    #[test]
    fn bethe_operator_homogeneity(z in spread(3, 0.4), v in vector(TensorShape::new(2, 3).unwrap()), c in cplx(), u in cplx()) {
        prop_assume!(c.norm() > 0.3 && z.iter().all(|x| (u - x).norm() > 0.3));
        let a = OperatorDiffOp::build(2, &z).unwrap();
        let zc: Vec<C64> = z.iter().map(|x| x * c).collect();
        let b = OperatorDiffOp::build(2, &zc).unwrap();
        for i in 1..=2 {
            let lhs = b.apply_bi(i, u * c, &v).unwrap();
            let rhs = a.apply_bi(i, u, &v).unwrap().scale(c.powu(i as u32).inv());
            prop_assert!(lhs.sub(&rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn flag_basis_ignores_choice_of_basis(a in cplx(), b in cplx(), coeffs in prop::collection::vec(cplx(), 3)) {
        let lam = Partition::new(vec![2, 1]).unwrap();
        let x = PolySpace::from_coordinates(&lam, &coeffs).unwrap();
        let f = x.basis();
        let mixed = vec![&f[0] + &f[1].scale(a), f[1].scale(C64::new(1.0, 0.0) + b * b)];
        prop_assume!((C64::new(1.0, 0.0) + b * b).norm() > 0.2);
        let y = flag_basis(&mixed, Some(&lam)).unwrap();
        prop_assert!(x.distance(&y) < 1e-9);
        prop_assert_eq!(y.coordinates().len(), lam.size());
    }

    #[test]
    fn qseries_division_inverts_multiplication(a in prop::collection::vec(-5i64..5, 11), mut b in prop::collection::vec(-5i64..5, 11), sign in prop::bool::ANY) {
        b[0] = if sign { 1 } else { -1 };
        let (a, b) = (QSeries::from_coeffs(a).unwrap(), QSeries::from_coeffs(b).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().div_unit(&b).unwrap(), a);
    }

    #[test]
    fn characters_match_oracle(p in partition(), k in 0usize..40) {
        let l = Partition::new(p).unwrap();
        let c: QSeries = char_o(&l, k).unwrap();
        prop_assert_eq!(c.coeff(0), 1);
        prop_assert!(c.coeffs().iter().all(|&x| x >= 0));
        prop_assert_eq!(c, hilbert_oracle(&l, k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn averaging_is_linear_and_kills_the_ideal(seed in 0u64..1000, a in cplx(), b in cplx()) {
        let lam = Partition::new(vec![2, 2]).unwrap();
        let z = random_sites(4, &mut ChaCha8Rng::seed_from_u64(seed));
        let data = OrbitData::solve(&lam, &z, seed, &SolverBudget::default(), &Tolerances::default()).unwrap();
        prop_assume!(data.trusted());
        let f: SymPolyF = "s1_1^2 - s0_2".parse().unwrap();
        let g = SymPolyF::sigma(1, 2);
        let lhs = data.v_f(&f.scale(a).add(&g.scale(b)));
        let rhs = data.v_f(&f).scale(a).add(&data.v_f(&g).scale(b));
        prop_assert!(lhs.sub(&rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        // F vanishing on every orbit lies in the kernel
        let mut ideal = SymPolyF::one();
        for t in &data.points {
            let s = t.to_sigma();
            ideal = ideal.mul(&SymPolyF::sigma(1, 1).add(&SymPolyF::constant(-s.get(1, 1))));
        }
        let scale = data.v_f(&SymPolyF::sigma(1, 1).mul(&SymPolyF::sigma(1, 1))).norm();
        prop_assert!(data.v_f(&ideal).norm() < 1e-9 * (1.0 + scale));
    }

    #[test]
    fn averaging_is_homogeneous(seed in 0u64..1000, c in cplx()) {
        prop_assume!(c.norm() > 0.3);
        let lam = Partition::new(vec![2, 1]).unwrap();
        let z = random_sites(3, &mut ChaCha8Rng::seed_from_u64(seed));
        let zc: Vec<C64> = z.iter().map(|x| x * c).collect();
        let (bud, tol) = (SolverBudget::default(), Tolerances::default());
        let (d, dc) = (OrbitData::solve(&lam, &z, seed, &bud, &tol).unwrap(), OrbitData::solve(&lam, &zc, seed, &bud, &tol).unwrap());
        prop_assume!(d.trusted() && dc.trusted());
        let f = SymPolyF::sigma(1, 1);
        // deg F + s_λ = 1 + 1
        let lhs = dc.v_f(&f);
        let rhs = d.v_f(&f).scale(c.powu(2));
        prop_assert!(lhs.sub(&rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }
}
