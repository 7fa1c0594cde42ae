use proptest::prelude::*;
use qhide::bell::BellLabel;
use qhide::bounds::*;
use qhide::linalg::{c, eigenvalues_hermitian, max_abs_diff, trace_product, CMatrix, CVector};
use qhide::pauli::PauliString;
use qhide::states::{bell_diagonal, bell_state_vector, h_operator, hiding_state, DensityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(r: &mut ChaCha8Rng) -> f64 {
    let u: f64 = r.random::<f64>().max(1e-300);
    let v: f64 = r.random();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> CVector {
    let v = CVector::from_fn(dim, |_, _| c(gaussian(r), gaussian(r)));
    let norm = v.norm();
    v / c(norm, 0.0)
}

// ---------- linear programming ----------

/// Brute-force LP oracle: every vertex is the solution of some square
/// subsystem of tight constraints.
fn vertex_oracle(obj: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> Option<f64> {
    let m = obj.len();
    let k = rows.len();
    let mut best: Option<f64> = None;
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let a = nalgebra::DMatrix::from_fn(m, m, |r, c| rows[idx[r]][c]);
        let b = nalgebra::DVector::from_fn(m, |r, _| rhs[idx[r]]);
        if a.determinant().abs() > 1e-10 {
            if let Some(x) = a.lu().solve(&b) {
                let feasible = rows.iter().zip(rhs).all(|(row, h)| row.iter().zip(x.iter()).map(|(p, q)| p * q).sum::<f64>() <= h + 1e-9);
                if feasible {
                    let v: f64 = obj.iter().zip(x.iter()).map(|(p, q)| p * q).sum();
                    best = Some(best.map_or(v, |b: f64| b.max(v)));
                }
            }
        }
        // next combination
        let mut i = m;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < k - m + i {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut r = rng(11);
    for trial in 0..200 {
        let m = 2 + trial % 3;
        let extra = 2 + trial % 5;
        let obj: Vec<f64> = (0..m).map(|_| gaussian(&mut r)).collect();
        let mut lp = LinearProgram::maximize(obj.clone());
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..m {
            lp.add_bounds(j, -1.0, 1.0);
            let mut e = vec![0.0; m];
            e[j] = 1.0;
            rows.push(e.clone());
            rhs.push(1.0);
            rows.push(e.iter().map(|v| -v).collect());
            rhs.push(1.0);
        }
        for _ in 0..extra {
            let row: Vec<f64> = (0..m).map(|_| gaussian(&mut r)).collect();
            let h = r.random::<f64>();
            lp.add_le(row.clone(), h);
            rows.push(row);
            rhs.push(h);
        }
        let expected = vertex_oracle(&obj, &rows, &rhs).expect("origin is feasible");
        let got = lp.solve().unwrap();
        assert!((got.value - expected).abs() < 1e-9, "trial {trial}: {} vs {expected}", got.value);
    }
}

// ---------- single-bit bound ----------

#[test]
fn bell_lp_optimum_equals_closed_form() {
    for n in 1..=2 {
        let (w, k) = sum_objective(n).unwrap();
        let (opt, povm) = bell_diag_lp(n, &w).unwrap();
        let closed = 1.0 + single_bit_bound(n).unwrap().tight;
        assert!((opt + k - closed).abs() < 1e-9, "n = {n}");
        assert!(povm.alpha.iter().all(|a| (0.0..=1.0).contains(a)));
        let diag = povm.pt_diagonal();
        assert!(diag.iter().all(|d| *d >= -1e-9 && *d <= 1.0 + 1e-9));
    }
}

#[test]
fn bell_lp_three_pairs_respects_bound() {
    let (w, k) = sum_objective(3).unwrap();
    let (opt, _) = bell_diag_lp(3, &w).unwrap();
    assert!((opt + k - 1.0 - 2.0 / 9.0).abs() < 1e-9, "{}", opt + k);
}

#[test]
fn maximizing_p00_alone_reaches_one() {
    for n in 1..=2 {
        let (even, _) = qhide::bell::cardinalities(n).unwrap();
        let w: Vec<f64> = BellLabel::all(n).map(|k| if k.is_even() { 1.0 / even as f64 } else { 0.0 }).collect();
        let (opt, _) = bell_diag_lp(n, &w).unwrap();
        assert!((opt - 1.0).abs() < 1e-9);
    }
}

#[test]
fn pt_diagonal_matches_dense_partial_transpose() {
    let mut r = rng(3);
    for n in 1..=2 {
        let alpha: Vec<f64> = (0..1 << (2 * n)).map(|_| r.random::<f64>()).collect();
        let povm = BellDiagPovm::new(n, alpha.clone()).unwrap();
        let dense = bell_diagonal(n, &alpha).unwrap().partial_transpose();
        for (m, d) in BellLabel::all(n).zip(povm.pt_diagonal()) {
            let v = bell_state_vector(&m);
            let expect = (v.adjoint() * dense.matrix() * &v)[(0, 0)].re;
            assert!((expect - d).abs() < 1e-12, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn bell_povm_probabilities_match_dense_traces() {
    let mut r = rng(4);
    for n in 1..=2 {
        let alpha: Vec<f64> = (0..1 << (2 * n)).map(|_| r.random::<f64>()).collect();
        let povm = BellDiagPovm::new(n, alpha.clone()).unwrap();
        let m0 = bell_diagonal(n, &alpha).unwrap();
        let p00 = trace_product(m0.matrix(), hiding_state(0, n).unwrap().matrix()).re;
        let p10 = trace_product(m0.matrix(), hiding_state(1, n).unwrap().matrix()).re;
        let (a, b) = povm.probabilities();
        assert!((a - p00).abs() < 1e-12 && (b - (1.0 - p10)).abs() < 1e-12);
    }
}

fn werner_lp(n: usize, t: f64) -> f64 {
    // Variables (α, β); every eigenvalue of M₀, M₁ and their partial
    // transposes is linear in them.
    let d = 2f64.powi(n as i32);
    let mut lp = LinearProgram::maximize(vec![-1.0, 1.0]);
    for row in [[1.0, -1.0], [1.0, 1.0], [1.0, 0.0], [1.0, d]] {
        lp.add_ge(row.to_vec(), 0.0);
        lp.add_le(row.to_vec(), 1.0);
    }
    lp.add_eq(vec![1.0, 1.0], t);
    lp.add_bounds(0, -2.0, 2.0);
    lp.add_bounds(1, -2.0, 2.0);
    1.0 + lp.solve().unwrap().value
}

#[test]
fn werner_region_matches_lp_and_dense_operators() {
    for n in 1..=3 {
        let h = h_operator(n).unwrap();
        let rho = [hiding_state(0, n).unwrap(), hiding_state(1, n).unwrap()];
        for t in unit_grid(21) {
            let (p11, povm) = werner_max_p11(n, t).unwrap();
            assert!((p11 - werner_lp(n, t)).abs() < 1e-9, "n = {n}, t = {t}");
            assert!(povm.is_valid(n, 1e-12));
            if n <= 2 {
                let dim = 1usize << (2 * n);
                let m0 = CMatrix::identity(dim, dim) * c(povm.alpha, 0.0) + h.matrix() * c(povm.beta * 2f64.powi(n as i32), 0.0);
                let op = qhide::states::HermitianOperator::new(m0.clone(), (1 << n, 1 << n)).unwrap();
                let m1 = CMatrix::identity(dim, dim) - &m0;
                let op1 = qhide::states::HermitianOperator::new(m1, (1 << n, 1 << n)).unwrap();
                for o in [&op, &op1] {
                    assert!(o.min_eigenvalue() > -1e-12 && o.partial_transpose().min_eigenvalue() > -1e-12);
                }
                let p00 = trace_product(&m0, rho[0].matrix()).re;
                let dense_p11 = 1.0 - trace_product(&m0, rho[1].matrix()).re;
                assert!((p00 - t).abs() < 1e-12 && (dense_p11 - p11).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn werner_region_maximum_is_single_bit_bound() {
    for n in 1..=2 {
        let region = werner_feasible_region(n, &unit_grid(101)).unwrap();
        let best = region.iter().map(|p| p.p00 + p.p11).fold(f64::MIN, f64::max);
        let (w, k) = sum_objective(n).unwrap();
        let lp = bell_diag_lp(n, &w).unwrap().0 + k;
        assert!((best - lp).abs() < 1e-9 && (best - 1.0 - 2.0 / (2f64.powi(n as i32) + 1.0)).abs() < 1e-9);
    }
}

#[test]
fn werner_examples() {
    assert!((werner_max_p11(1, 2.0 / 3.0).unwrap().0 - 1.0).abs() < 1e-15);
    assert!((werner_max_p11(2, 0.6).unwrap().0 - 2.0 / 3.0).abs() < 1e-15);
    for n in 1..8 {
        let (_, povm) = werner_max_p11(n, werner_kink(n)).unwrap();
        assert!(povm.beta.abs() <= 1.0 / (2f64.powi(n as i32) + 1.0) + 1e-15);
    }
}

#[test]
fn single_bit_bound_decreases() {
    let values: Vec<f64> = (1..40).map(|n| single_bit_bound(n).unwrap().tight).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    for n in 1..40 {
        let b = single_bit_bound(n).unwrap();
        assert!(b.tight <= b.weak);
    }
}

// ---------- multi-bit bound ----------

#[test]
fn recursion_equals_stirling() {
    for k in 1..=MULTI_BOUND_TEST_K {
        let (l, u) = l_recursion(k).unwrap();
        assert_eq!(l, l_stirling(k).unwrap(), "k = {k}");
        assert_eq!(l[k], 0.into());
        assert_eq!(u[k], 1.into());
        for p in 0..k {
            assert!(l[p] < 0.into() && u[p] > 0.into());
        }
    }
}

const MULTI_BOUND_TEST_K: usize = 16;

#[test]
fn delta_matches_direct_sum() {
    // Plain f64 evaluation for moderate n.
    for k in 1..=6 {
        let (l, _) = l_recursion(k).unwrap();
        for n in 1..=12 {
            let mut direct = 0.0;
            for p in 0..k {
                let binom = (0..k - p).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64);
                let lp: f64 = l[p].to_string().parse::<f64>().unwrap().abs();
                direct += binom * lp / 2f64.powi((n * (k - p)) as i32);
            }
            direct *= ((1u64 << k) - 1) as f64;
            let b = multi_bit_bound(n, k).unwrap();
            assert!((b.delta - direct).abs() <= 1e-12 * direct, "n = {n}, k = {k}");
            assert!((b.info_bound - 2f64.powi(k as i32) / std::f64::consts::LN_2 * direct).abs() <= 1e-12 * b.info_bound);
        }
    }
}

#[test]
fn asymptotic_delta_ratio() {
    for k in 4..=8 {
        let n = 2 * k + 8;
        let b = multi_bit_bound(n, k).unwrap();
        let ratio = b.delta / (k as f64 * 2f64.powi(k as i32 - n as i32));
        assert!((0.9..=1.1).contains(&ratio), "k = {k}: {ratio}");
    }
}

#[test]
fn contours_monotone_and_k1_row() {
    let ns: Vec<usize> = (1..=40).collect();
    let ks: Vec<usize> = (1..=10).collect();
    let table = multi_bit_contours(&ns, &ks).unwrap();
    for k in &ks {
        let row: Vec<f64> = table.iter().filter(|p| p.k == *k).map(|p| p.log2_info_bound).collect();
        assert!(row.windows(2).all(|w| w[1] < w[0]), "k = {k}");
    }
    for p in table.iter().filter(|p| p.k == 1) {
        let expect = 2.0 / std::f64::consts::LN_2 * 2f64.powi(-(p.n as i32));
        assert!((p.log2_info_bound.exp2() - expect).abs() < 1e-12 * expect);
    }
}

#[test]
fn required_n_tracks_asymptotic_growth() {
    for k in [6usize, 8, 10] {
        let eps = 1e-3;
        let exact = required_n(k, eps).unwrap();
        let approx = asymptotic_n(k, eps);
        assert!((exact as f64 - approx).abs() <= 2.0, "k = {k}: {exact} vs {approx}");
        assert!(multi_bit_bound(exact, k).unwrap().info_bound <= eps);
        assert!(multi_bit_bound(exact - 1, k).unwrap().info_bound > eps);
    }
}

// ---------- Theorem 1 ----------

#[test]
fn pauli_expansion_reconstructs() {
    let mut r = rng(5);
    for n in 1..=2 {
        let dim = 1 << (2 * n);
        let v = random_vector(&mut r, dim);
        let rho = DensityMatrix::pure(&v, (1 << n, 1 << n)).unwrap();
        let coeffs = pauli_coefficients(&rho).unwrap();
        assert!((coeffs.a[0] - 1.0).abs() < 1e-12);
        assert!(max_abs_diff(&coeffs.reconstruct(), rho.matrix()) < 1e-12);
    }
}

#[test]
fn singlet_coefficients() {
    let singlet = DensityMatrix::pure(&bell_state_vector(&BellLabel::singlets(1)), (2, 2)).unwrap();
    let coeffs = pauli_coefficients(&singlet).unwrap();
    for s in PauliString::all(2) {
        let expect = match s.to_string().as_str() {
            "+II" => 1.0,
            "+XX" | "+YY" | "+ZZ" => -1.0,
            _ => 0.0,
        };
        assert!((coeffs.get(&s) - expect).abs() < 1e-12, "{s}");
    }
}

fn orthogonal_pair(r: &mut ChaCha8Rng, dim: usize) -> (CVector, CVector) {
    let u = random_vector(r, dim);
    let v = random_vector(r, dim);
    let w = &v - &u * u.dotc(&v);
    let norm = w.norm();
    (u, w / c(norm, 0.0))
}

#[test]
fn orthogonal_pairs_have_anticorrelated_coefficients() {
    let mut r = rng(6);
    for _ in 0..20 {
        let (u, v) = orthogonal_pair(&mut r, 4);
        let a0 = pauli_coefficients(&DensityMatrix::pure(&u, (2, 2)).unwrap()).unwrap();
        let a1 = pauli_coefficients(&DensityMatrix::pure(&v, (2, 2)).unwrap()).unwrap();
        let dot: f64 = a0.a[1..].iter().zip(&a1.a[1..]).map(|(x, y)| x * y).sum();
        assert!((dot + 1.0).abs() < 1e-12);
    }
}

fn dense_distinguisher_value(rho0: &DensityMatrix, rho1: &DensityMatrix, d: &PauliDistinguisher) -> f64 {
    let s = d.string.dense();
    let id = CMatrix::identity(s.nrows(), s.ncols());
    let (plus, minus) = ((&id + &s) * c(0.5, 0.0), (&id - &s) * c(0.5, 0.0));
    let (m0, m1) = if d.flipped { (minus, plus) } else { (plus, minus) };
    trace_product(&m0, rho0.matrix()).re + trace_product(&m1, rho1.matrix()).re - 1.0
}

#[test]
fn random_orthogonal_pairs_meet_corollary() {
    let mut r = rng(7);
    let floor = 1.0 / 15f64.sqrt();
    for _ in 0..100 {
        let (u, v) = orthogonal_pair(&mut r, 4);
        let rho0 = DensityMatrix::pure(&u, (2, 2)).unwrap();
        let rho1 = DensityMatrix::pure(&v, (2, 2)).unwrap();
        let d = best_pauli_distinguisher(&rho0, &rho1).unwrap();
        assert!(d.achieved >= floor - 1e-12, "{}", d.achieved);
        assert!((dense_distinguisher_value(&rho0, &rho1, &d) - d.achieved).abs() < 1e-12);
    }
}

#[test]
fn hiding_pair_distinguisher() {
    for n in 1..=2 {
        let rho0 = hiding_state(0, n).unwrap();
        let rho1 = hiding_state(1, n).unwrap();
        let d = best_pauli_distinguisher(&rho0, &rho1).unwrap();
        assert!(d.achieved >= theorem1_curve(n, 0.0).unwrap() - 1e-12);
        assert!((dense_distinguisher_value(&rho0, &rho1, &d) - d.achieved).abs() < 1e-12);
        // A Pauli measurement is PPT, so it cannot beat the single-bit bound.
        assert!(d.achieved <= single_bit_bound(n).unwrap().tight + 1e-12);
    }
}

#[test]
fn locally_distinguishable_pair() {
    let zero = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let one = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    let b = CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
    let rho0 = DensityMatrix::pure(&zero.kronecker(&b), (2, 2)).unwrap();
    let rho1 = DensityMatrix::pure(&one.kronecker(&b), (2, 2)).unwrap();
    let d = best_pauli_distinguisher(&rho0, &rho1).unwrap();
    assert!((d.achieved - 1.0).abs() < 1e-12);
    assert_eq!(d.string.to_string(), "+ZI");
}

#[test]
fn non_orthogonal_rejected() {
    let rho = hiding_state(0, 1).unwrap();
    assert!(matches!(best_pauli_distinguisher(&rho, &rho), Err(qhide::error::Error::NonOrthogonal(_))));
}

#[test]
fn curve_endpoints() {
    for n in 1..=3 {
        let d = 16f64.powi(n) - 1.0;
        assert!((theorem1_curve(n as usize, 0.0).unwrap() - 1.0 / d.sqrt()).abs() < 1e-15);
        for x in [-1.0, 1.0] {
            assert!((theorem1_curve(n as usize, x).unwrap() - 2f64.sqrt() / d.sqrt()).abs() < 1e-15);
        }
    }
}

// ---------- Appendix A ----------

fn random_channel(r: &mut ChaCha8Rng, outcomes: usize) -> Vec<Vec<f64>> {
    (0..2)
        .map(|_| {
            let raw: Vec<f64> = (0..outcomes).map(|_| -r.random::<f64>().max(1e-300).ln()).collect();
            let s: f64 = raw.iter().sum();
            raw.into_iter().map(|v| v / s).collect()
        })
        .collect()
}

#[test]
fn random_channels_respect_information_cap() {
    let mut r = rng(8);
    for _ in 0..10_000 {
        let outcomes = 2 + r.random_range(0..5);
        let ch = random_channel(&mut r, outcomes);
        let prior = r.random::<f64>();
        let delta = decoding_advantage(&ch).unwrap();
        let info = channel_mutual_info(&[prior, 1.0 - prior], &ch).unwrap();
        assert!(info <= delta * binary_entropy(prior) + 1e-12, "{info} vs {delta}");
        let by_outcome = channel_mutual_info_by_outcome(prior, &ch).unwrap();
        assert!((info - by_outcome).abs() < 1e-12);
    }
}

#[test]
fn cap_channel_meets_constraint_with_equality() {
    for n in 1..6 {
        let delta = 2f64.powi(1 - n);
        let cap = mutual_info_cap(delta, 0.5).unwrap();
        assert!((cap.bits - delta).abs() < 1e-15);
        let info = channel_mutual_info(&[0.5, 0.5], &cap.channel).unwrap();
        assert!((info - cap.bits).abs() < 1e-12);
        assert!((decoding_advantage(&cap.channel).unwrap() - delta).abs() < 1e-15);
    }
}

// ---------- τ states ----------

#[test]
fn tau_single_copy_routes_agree() {
    let closed = tau_max_sum(1).unwrap();
    let generic = tau_max_sum_cutting_plane(1, CutPolicy::MostViolated).unwrap();
    let target = 1.0 + 3f64.sqrt() / 2.0;
    assert!((closed.upper - target).abs() < 1e-6);
    assert!((generic.upper - target).abs() < 1e-6);
    assert!((closed.p00 + closed.p11 - target).abs() < 1e-6);
}

fn check_solution(s: &TauSolve) {
    let op = s.point.operator().unwrap();
    let ev = eigenvalues_hermitian(op.matrix());
    assert!(ev[0] >= -1e-8 && *ev.last().unwrap() <= 1.0 + 1e-8, "{ev:?}");
    assert_eq!(op.partial_transpose().matrix(), op.matrix());
    let t0 = qhide::states::tau_parity_state(0, s.n).unwrap();
    let t1 = qhide::states::tau_parity_state(1, s.n).unwrap();
    assert!((trace_product(op.matrix(), t0.matrix()).re - s.p00).abs() < 1e-10);
    assert!((1.0 - trace_product(op.matrix(), t1.matrix()).re - s.p11).abs() < 1e-10);
    assert!(s.p00 + s.p11 <= s.upper + 1e-9);
}

#[test]
fn tau_two_copies() {
    let s = tau_max_sum(2).unwrap();
    check_solution(&s);
    assert!((s.upper - 1.75).abs() < 1e-3, "{}", s.upper);
    assert!((s.p00 + s.p11 - 1.75).abs() < 1e-3);
}

#[test]
fn tau_symmetrized_basis_is_orthogonal_and_permutation_invariant() {
    let basis = tau_symmetrized_basis(2).unwrap();
    for i in 0..basis.len() {
        for j in 0..i {
            assert!(basis[i].component_mul(&basis[j]).sum().abs() < 1e-12);
        }
    }
    // Swapping the two copies permutes (A₁, A₂, B₁, B₂) → (A₂, A₁, B₂, B₁).
    for b in &basis {
        let m = b.map(|v| c(v, 0.0));
        let swapped = qhide::linalg::permute_qubits(&m, &[1, 0, 3, 2]);
        assert!(max_abs_diff(&swapped, &m) < 1e-12);
    }
}

#[test]
fn tau_region_one_copy() {
    let grid = unit_grid(11);
    let region = tau_ppt_region(1, &grid).unwrap();
    assert_eq!(region.len(), grid.len());
    for p in &region {
        assert!(p.p11 <= 1.0 && p.p11_feasible <= p.p11 + 1e-9);
        assert!(p.p00 + p.p11 - 1.0 <= 3f64.sqrt() / 2.0 + 1e-6);
    }
}

#[test]
fn tau_region_two_copies_sample() {
    let region = tau_ppt_region(2, &[0.5, 0.8, 0.9]).unwrap();
    for p in &region {
        assert!(p.p00 + p.p11 <= 1.75 + 1e-6);
    }
    assert!((region[1].p11 - 0.95).abs() < 1e-6);
}

#[test]
fn repetition_and_emin() {
    let (b1, ratio) = tau_repetition_bound(1).unwrap();
    assert!((b1 - 3f64.sqrt() / 2.0).abs() < 1e-15);
    assert!((tau_repetition_bound(2).unwrap().0 - 0.75).abs() < 1e-15);
    assert!((tau_repetition_bound(3).unwrap().0 - 0.649519052838329).abs() < 1e-12);
    assert!((ratio - 4.8).abs() < 0.05);
    for n in 1..30 {
        assert_eq!(emin_lower_bound(n).unwrap(), 0.5 * (1.0 - 2f64.powi(-(n as i32))));
    }
}

// ---------- properties ----------

proptest! {
    #[test]
    fn werner_boundary_below_bound(n in 1usize..10, t in 0.0f64..=1.0) {
        let (p11, povm) = werner_max_p11(n, t).unwrap();
        prop_assert!(p11 <= 1.0 + 1e-15);
        prop_assert!(t + p11 - 1.0 <= single_bit_bound(n).unwrap().tight + 1e-12);
        prop_assert!(povm.is_valid(n, 1e-12));
    }

    #[test]
    fn curve_dominates_corollary(n in 1usize..6, x in -1.0f64..=1.0) {
        prop_assert!(theorem1_curve(n, x).unwrap() >= theorem1_curve(n, 0.0).unwrap());
    }

    #[test]
    fn cap_is_monotone_in_delta(d1 in 0.0f64..=1.0, d2 in 0.0f64..=1.0, p in 0.0f64..=1.0) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(mutual_info_cap(lo, p).unwrap().bits <= mutual_info_cap(hi, p).unwrap().bits + 1e-15);
    }
}
