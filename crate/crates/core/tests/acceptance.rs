//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use gaudin_core::averaging::{
    boundedness_probe, f_v_pairing, geometric_path, intertwining_check, polynomiality_check, random_sites, OrbitData,
    SymPolyF,
};
use gaudin_core::bethe::OperatorDiffOp;
use gaudin_core::characters::{char_o, char_v, QSeries};
use gaudin_core::master::{solve_bae, CriticalPoint, SolverBudget, Tolerances};
use gaudin_core::repr::{raising_residual, shapovalov, weight_of, Partition, TensorShape, TensorVector};
use gaudin_core::schubert::{d_t, flag_basis, iota, random_nice_point, sample_points, theta};
use gaudin_core::weightfn::{bethe_vector, orthogonality_check};
use gaudin_core::{Polynomial64, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lam(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

/// Standard Young tableaux counted by repeatedly removing a corner box.
fn syt_count(shape: &[usize]) -> usize {
    if shape.iter().all(|&p| p == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let is_corner = shape[i] > 0 && shape.get(i + 1).is_none_or(|&next| next < shape[i]);
        if is_corner {
            let mut s = shape.to_vec();
            s[i] -= 1;
            total += syt_count(&s);
        }
    }
    total
}

fn solved(lambda: &Partition, z_seed: u64) -> Result<(Vec<C64>, Vec<CriticalPoint>), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(z_seed);
    let z = random_sites(lambda.size(), &mut rng);
    let (pts, rep) =
        solve_bae(lambda, &z, z_seed, &SolverBudget::default(), &Tolerances::default()).map_err(|e| e.to_string())?;
    ensure(rep.count_matches(), || format!("{lambda} z-seed {z_seed}: found {} of {}", rep.found, rep.expected))?;
    Ok((z, pts))
}

fn closed_form() -> Outcome {
    let l = lam(&[1, 1]);
    let z = vec![re(0.0), re(2.0)];
    let (pts, _) = solve_bae(&l, &z, 0, &SolverBudget::default(), &Tolerances::default()).map_err(|e| e.to_string())?;
    ensure(pts.len() == 1, || format!("{} orbits", pts.len()))?;
    let p = &pts[0];
    ensure((p.level(1)[0] - re(1.0)).norm() < 1e-12, || format!("t = {}", p.level(1)[0]))?;
    let w = bethe_vector(p).map_err(|e| e.to_string())?;
    let s = w.shape();
    let expect = TensorVector::basis(s, &[2, 1]).sub(&TensorVector::basis(s, &[1, 2]));
    ensure(w.sub(&expect).norm() < 1e-12, || "ω differs from e_(2,1) − e_(1,2)".into())?;
    let norm = shapovalov(&w, &w);
    let hess = p.hessian().map_err(|e| e.to_string())?;
    ensure((norm - re(2.0)).norm() / 2.0 < 1e-12 && (hess - re(2.0)).norm() / 2.0 < 1e-12, || {
        format!("S = {norm}, Hess = {hess}")
    })?;
    let b = d_t(p).and_then(|d| d.eval_coeffs(re(3.0))).map_err(|e| e.to_string())?;
    ensure((b[0] - re(-4.0 / 3.0)).norm() < 1e-12 && (b[1] - re(2.0 / 3.0)).norm() < 1e-12, || {
        format!("D_T(3) = {b:?}")
    })?;
    let x = iota(p).map_err(|e| e.to_string())?;
    let span =
        flag_basis(&[Polynomial64::from_real(&[0.0, 0.0, 1.0]), Polynomial64::from_real(&[-1.0, 1.0])], Some(&l))
            .map_err(|e| e.to_string())?;
    ensure(x.distance(&span) < 1e-10, || "ι(T) differs from span{u², u−1}".into())?;
    for z in [vec![re(0.0), re(2.0)], vec![C64::new(1.0, 1.0), C64::new(-2.0, 0.5)]] {
        let v = gaudin_core::averaging::v_f(
            &l,
            &SymPolyF::<f64>::one(),
            &z,
            0,
            &SolverBudget::default(),
            &Tolerances::default(),
        )
        .map_err(|e| e.to_string())?;
        let c = (z[1] - z[0]) / 4.0;
        let err = (v.vector.get(&[2, 1]) - c).norm() + (v.vector.get(&[1, 2]) + c).norm();
        ensure(err < 1e-12, || format!("v_1 at {z:?} off by {err:e}"))?;
    }
    Ok("t = 1, S = Hess = 2, D_T(3) = (−4/3, 2/3), ι = span{u², u−1}, v_1 = (z2−z1)/4·(1,−1)".into())
}

fn counting() -> Outcome {
    let mut min_hess = f64::INFINITY;
    let mut runs = 0;
    for p in [&[2, 2][..], &[3, 1], &[2, 1, 1]] {
        let l = lam(p);
        let want = syt_count(p);
        for seed in 0..5 {
            let (_, pts) = solved(&l, 100 + seed)?;
            ensure(pts.len() == want, || format!("{l}: {} orbits, want {want}", pts.len()))?;
            for t in &pts {
                min_hess = min_hess.min(t.hessian().map_err(|e| e.to_string())?.norm());
            }
            runs += 1;
        }
    }
    ensure(min_hess > 1e-8, || format!("min |Hess| = {min_hess:e}"))?;
    Ok(format!("{runs} solves, counts match tableaux, min |Hess| = {min_hess:.3e}"))
}

fn bethe_vector_suite() -> Outcome {
    let (mut ri, mut rii, mut riii, mut riv) = (0f64, 0f64, 0f64, 0f64);
    let mut orbits = 0;
    for p in [&[1, 1][..], &[2, 2], &[3, 1], &[2, 1, 1], &[3, 2, 1]] {
        let l = lam(p);
        for seed in 0..3 {
            let (z, pts) = solved(&l, 200 + seed)?;
            let op = OperatorDiffOp::build(l.n_parts(), &z).map_err(|e| e.to_string())?;
            let ws: Vec<TensorVector> = pts.iter().map(|t| bethe_vector(t).unwrap()).collect();
            for (k, (t, w)) in pts.iter().zip(&ws).enumerate() {
                ri = ri.max(raising_residual(w));
                let mut poles = z.clone();
                poles.extend(t.flat_t());
                let us = sample_points(&poles, 3, k);
                let dt = d_t(t).map_err(|e| e.to_string())?;
                rii = rii.max(op.eigen_residual(w, &dt, &us).map_err(|e| e.to_string())?);
                let h = t.hessian().map_err(|e| e.to_string())?;
                riii = riii.max((shapovalov(w, w) - h).norm() / h.norm());
                orbits += 1;
            }
            for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    let (_, r) = orthogonality_check(&pts[a], &pts[b], 1e-6).map_err(|e| e.to_string())?;
                    riv = riv.max(r);
                }
            }
        }
    }
    ensure(ri < 1e-9 && rii < 1e-8 && riii < 1e-8 && riv < 1e-8, || {
        format!("singular {ri:e}, eigen {rii:e}, norm {riii:e}, orthogonality {riv:e}")
    })?;
    Ok(format!("{orbits} orbits: singular {ri:.1e}, eigen {rii:.1e}, norm {riii:.1e}, orthogonality {riv:.1e}"))
}

fn round_trips() -> Outcome {
    let (mut ti, mut it) = (0f64, 0f64);
    for p in [&[2, 2][..], &[3, 1], &[2, 1, 1], &[3, 2, 1], &[2, 2, 2]] {
        let l = lam(p);
        let (_, pts) = solved(&l, 300)?;
        for t in &pts {
            let s = iota(t).and_then(|x| theta(&x)).map_err(|e| e.to_string())?;
            ti = ti.max(s.distance(&t.to_sigma()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(301);
        for _ in 0..20 {
            let (x, t) = random_nice_point::<f64>(&l, &mut rng, 100).map_err(|e| e.to_string())?;
            it = it.max(x.distance(&iota(&t).map_err(|e| e.to_string())?));
        }
    }
    ensure(ti < 1e-8 && it < 1e-8, || format!("θ∘ι {ti:e}, ι∘θ {it:e}"))?;
    Ok(format!("θ∘ι {ti:.1e}, ι∘θ {it:.1e} over 20 spaces per λ"))
}

fn polynomiality() -> Outcome {
    let l = lam(&[2, 2]);
    let (b, t) = (SolverBudget::default(), Tolerances::default());
    let mut notes = Vec::new();
    for f in [SymPolyF::<f64>::one(), SymPolyF::<f64>::sigma(1, 1)] {
        let target = f.degree().unwrap() + 2;
        let r = polynomiality_check(&l, &f, target + 1, 5, &b, &t).map_err(|e| e.to_string())?;
        ensure(r.max_rel_residual < 1e-6 && r.above_degree_energy < 1e-8, || {
            format!("F = {f}: residual {:e}, energy {:e}", r.max_rel_residual, r.above_degree_energy)
        })?;
        notes.push(format!("F={f}: res {:.1e}, energy {:.1e}", r.max_rel_residual, r.above_degree_energy));
    }
    let s = geometric_path(1e-3, 30);
    let probe =
        boundedness_probe(&l, &SymPolyF::<f64>::one(), |s| vec![re(0.0), re(s), re(3.0), re(7.0)], &s, 5, &b, &t);
    ensure(probe.failures == 0 && probe.bounded, || {
        format!("probe: {} failures, max {} median {}", probe.failures, probe.max_norm, probe.median_norm)
    })?;
    notes.push(format!("probe max/median {:.3}", probe.max_norm / probe.median_norm));
    Ok(notes.join("; "))
}

fn inverse_identities() -> Outcome {
    let (mut pair, mut inter) = (0f64, 0f64);
    for p in [&[2, 2][..], &[3, 1], &[2, 1, 1]] {
        let l = lam(p);
        let mut rng = ChaCha8Rng::seed_from_u64(400);
        let z = random_sites(l.size(), &mut rng);
        let data = OrbitData::solve(&l, &z, 400, &SolverBudget::default(), &Tolerances::default())
            .map_err(|e| e.to_string())?;
        ensure(data.trusted(), || format!("{l}: incomplete orbit set"))?;
        for a in 0..l.n_parts() {
            for i in 1..=3 {
                let f = SymPolyF::<f64>::sigma(a, i);
                for k in 0..data.points.len() {
                    pair = pair.max(f_v_pairing(&data, &f, k).map_err(|e| e.to_string())?.2);
                }
            }
        }
        let poles: Vec<C64> = data.points.iter().flat_map(|t| t.flat_t()).chain(z.iter().copied()).collect();
        let us = sample_points(&poles, 2, 3);
        for g in [SymPolyF::<f64>::one(), SymPolyF::<f64>::sigma(1, 1)] {
            inter = inter.max(intertwining_check(&data, &g, &us).map_err(|e| e.to_string())?);
        }
    }
    ensure(pair < 1e-8 && inter < 1e-7, || format!("pairing {pair:e}, intertwining {inter:e}"))?;
    Ok(format!("pairing {pair:.1e}, intertwining {inter:.1e}"))
}

/// Partitions with at most `n` parts of size at most `max`, zero-padded.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=left.min(cap)).rev() {
            cur.push(p);
            rec(left - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=max {
        rec(size, size, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Counts monomials in the free generators `f_ij` by degree.
fn generator_series(parts: &[usize], k: usize) -> Vec<i64> {
    let n = parts.len();
    let d: Vec<usize> = parts.iter().enumerate().map(|(i, &p)| p + n - 1 - i).collect();
    let mut c = vec![0i64; k + 1];
    c[0] = 1;
    for &di in &d {
        for j in 1..=di {
            if d.contains(&(di - j)) {
                continue;
            }
            for m in j..=k {
                c[m] += c[m - j];
            }
        }
    }
    c
}

fn characters() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        for p in partitions(n, 6) {
            let l = Partition::new(p.clone()).unwrap();
            let co: QSeries = char_o(&l, 30).map_err(|e| e.to_string())?;
            let cv: QSeries = char_v(&l, 30).map_err(|e| e.to_string())?;
            ensure(co.coeffs() == generator_series(&p, 30).as_slice(), || format!("{l}: char_O differs from oracle"))?;
            let s: usize = p.iter().enumerate().map(|(i, &x)| i * x).sum();
            let shifted: Vec<i64> = (0..=30).map(|k| if k >= s { co.coeff(k - s) } else { 0 }).collect();
            ensure(cv.coeffs() == shifted.as_slice(), || format!("{l}: char_V is not the shifted char_O"))?;
            count += 1;
        }
    }
    Ok(format!("{count} partitions to q^30"))
}

fn operator_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    let (mut comm, mut sing) = (0f64, 0f64);
    let mut b1 = 0f64;
    for (nd, n) in [(2, 3), (2, 4), (3, 3)] {
        let z = random_sites(n, &mut rng);
        let op = OperatorDiffOp::build(nd, &z).map_err(|e| e.to_string())?;
        let shape = TensorShape::new(nd, n).unwrap();
        let rand_c = |r: &mut ChaCha8Rng| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let v = TensorVector::from_entries(shape, (0..shape.dim()).map(|k| (shape.unpack(k), rand_c(&mut rng))));
        let (u, u2) = (C64::new(3.1, 0.7), C64::new(-2.3, 1.9));
        for i in 1..=nd {
            for j in 1..=nd {
                let a = op.apply_bi(i, u, &op.apply_bi(j, u2, &v).unwrap()).unwrap();
                let b = op.apply_bi(j, u2, &op.apply_bi(i, u, &v).unwrap()).unwrap();
                comm = comm.max(a.sub(&b).norm() / v.norm());
            }
        }
        for k in 0..shape.dim() {
            let j = shape.unpack(k);
            let e = TensorVector::basis(shape, &j);
            let w = weight_of(&j, nd);
            for i in 1..=nd {
                let out = op.apply_bi(i, u, &e).unwrap();
                for (jj, c) in out.entries() {
                    ensure(c == C64::new(0.0, 0.0) || weight_of(&jj, nd) == w, || {
                        format!("B_{i} moved {j:?} to {jj:?}")
                    })?;
                }
            }
            let expect = -z.iter().map(|zs| (u - zs).inv()).sum::<C64>();
            let got = op.apply_bi(1, u, &e).unwrap();
            b1 = b1.max(got.sub(&e.scale(expect)).norm() / expect.norm());
        }
        // singular vectors: Bethe vectors of every λ with at most nd parts
        for p in partitions(nd, n).into_iter().filter(|p| p.iter().sum::<usize>() == n) {
            let l = Partition::new(p).unwrap();
            let (pts, _) =
                solve_bae(&l, &z, 1, &SolverBudget::default(), &Tolerances::default()).map_err(|e| e.to_string())?;
            for t in &pts {
                let w = bethe_vector(t).unwrap();
                for i in 1..=nd {
                    let bw = op.apply_bi(i, u, &w).unwrap();
                    sing = sing.max(raising_residual(&bw) / bw.norm().max(1e-300));
                }
            }
        }
    }
    ensure(comm < 1e-9 && sing < 1e-9 && b1 < 1e-14, || format!("commutator {comm:e}, singular {sing:e}, B_1 {b1:e}"))?;
    Ok(format!("commutator {comm:.1e}, weight exact, singular {sing:.1e}, B_1 {b1:.1e}"))
}

fn main() -> ExitCode {
    let suite: [(&str, fn() -> Outcome); 8] = [
        ("closed-form case", closed_form),
        ("orbit counting", counting),
        ("Bethe vector identities", bethe_vector_suite),
        ("round trips", round_trips),
        ("polynomiality", polynomiality),
        ("pairing and intertwining", inverse_identities),
        ("graded characters", characters),
        ("Bethe operator algebra", operator_algebra),
    ];
    let mut failed = 0;
    for (k, (name, f)) in suite.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {} ({name}): PASS [{secs:.2}s] {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.2}s] {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", suite.len() - failed, suite.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
