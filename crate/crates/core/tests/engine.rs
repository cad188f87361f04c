//! Engine-level checks: hand-derived oracle values, the link between the two
//! F-parametrizations, and grid-oracle agreement for the two-state bound.

use gurlab_core::matlin::{
    random_hermitian, random_normal_operator, random_state, random_unitary, ComplexMatrix,
    SpectrumBox, StateVector,
};
use gurlab_core::ur_core::{
    gur_bound, lambda_form, lambda_grid_min, mean, objective_f, oracle_infimum, robertson,
    stationary_lambdas, weak_commutator, CrossMoments, Method,
};
use gurlab_core::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli(k: usize) -> ComplexMatrix {
    let entries = match k {
        1 => vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        2 => vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        _ => vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    };
    ComplexMatrix::new(2, entries).unwrap()
}

/// Mixed operator classes for campaign-style draws.
fn operator_of_class(dim: usize, seed: u64, class: u64) -> ComplexMatrix {
    match class % 3 {
        0 => random_hermitian(dim, seed, -1.0, 1.0),
        1 => random_unitary(dim, seed),
        _ => random_normal_operator(dim, seed, SpectrumBox::unit_square()),
    }
}

#[test]
fn weak_commutator_pauli_hand_value() {
    // q_{σ₁,σ₂}(e₀,e₀) = (e₀, [σ₁,σ₂] e₀) = 2i⟨σ₃⟩ = 2i
    let e0 = StateVector::basis(2, 0);
    let q = weak_commutator(&pauli(1), &pauli(2), &e0, &e0).unwrap();
    assert!((q - c(0.0, 2.0)).norm() < 1e-14);
}

#[test]
fn weak_commutator_antisymmetry_and_commuting_cases() {
    let psi = random_state(4, 5);
    let chi = random_state(4, 6);
    let a = random_normal_operator(4, 7, SpectrumBox::unit_square());
    assert!(weak_commutator(&a, &a, &psi, &chi).unwrap().norm() < 1e-12);
    let d1 = ComplexMatrix::real_diagonal(&[1.0, 2.0, 3.0, 4.0]);
    let d2 = ComplexMatrix::real_diagonal(&[-1.0, 0.5, 0.0, 2.0]);
    assert!(weak_commutator(&d1, &d2, &psi, &chi).unwrap().norm() < 1e-12);
}

#[test]
fn objective_collapses_to_two_deviation_product_at_means() {
    for seed in 0..10 {
        let a = operator_of_class(5, seed, seed);
        let b = operator_of_class(5, 100 + seed, seed + 1);
        let psi = random_state(5, 200 + seed);
        let m = CrossMoments::compute(&a, &b, &psi, &psi).unwrap();
        let f = objective_f(&a, &b, &psi, &psi, m.mean_a_phi, m.mean_b_phi).unwrap();
        assert!((f - 2.0 * m.dev_a_phi * m.dev_b_phi).abs() < 1e-12);
    }
}

#[test]
fn objective_grows_for_large_shifts() {
    let a = random_hermitian(4, 3, -1.0, 1.0);
    let b = random_hermitian(4, 4, -1.0, 1.0);
    let phi = random_state(4, 5);
    let chi = random_state(4, 6);
    let base = objective_f(&a, &b, &phi, &chi, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
    let far = objective_f(&a, &b, &phi, &chi, c(1e4, -1e4), c(0.0, 0.0)).unwrap();
    let farther = objective_f(&a, &b, &phi, &chi, c(1e6, 0.0), c(0.0, 1e6)).unwrap();
    assert!(far > base && farther > far);
}

#[test]
fn gur_bound_equal_states_reproduces_robertson() {
    for seed in 0..20 {
        let a = operator_of_class(6, 2 * seed, seed);
        let b = operator_of_class(6, 2 * seed + 1, seed + 2);
        let psi = random_state(6, 999 - seed);
        let general = gur_bound(&a, &b, &psi, &psi).unwrap();
        let special = robertson(&a, &b, &psi).unwrap();
        assert_eq!(special.method, Method::ClosedForm);
        // rhs = 2Δ(A)Δ(B) from independently computed moments
        let m = CrossMoments::compute(&a, &b, &psi, &psi).unwrap();
        let independent = 2.0 * m.dev_a_phi * m.dev_b_phi;
        assert!((general.rhs - independent).abs() < 1e-12);
        assert!((special.rhs - independent).abs() < 1e-12);
        assert!(general.holds() && special.holds());
    }
}

#[test]
fn gur_bound_same_operator_has_zero_lhs() {
    let a = random_normal_operator(5, 11, SpectrumBox::unit_square());
    let phi = random_state(5, 12);
    let chi = random_state(5, 13);
    let rep = gur_bound(&a, &a, &phi, &chi).unwrap();
    assert!(rep.lhs < 1e-12);
    assert!(rep.holds());
}

#[test]
fn degenerate_gap_returns_half() {
    // φ = χ makes both shift gaps vanish.
    let a = random_hermitian(4, 21, -1.0, 1.0);
    let b = random_hermitian(4, 22, -1.0, 1.0);
    let psi = random_state(4, 23);
    let m = CrossMoments::compute(&a, &b, &psi, &psi).unwrap();
    let cands = stationary_lambdas(&m);
    assert!(cands.degenerate);
    assert_eq!(cands.lambdas, vec![0.5]);
    // value is λ-independent: Δ_φ(A)Δ_χ(B) + Δ_φ(B)Δ_χ(A)
    let expect = m.dev_a_phi * m.dev_b_chi + m.dev_b_phi * m.dev_a_chi;
    for lam in [0.0, 0.3, 0.9] {
        assert!((lambda_form(lam, &m).unwrap() - expect).abs() < 1e-12);
    }
}

#[test]
fn quintic_candidates_cover_grid_minimum() {
    for seed in 0..60 {
        let dim = 2 + (seed as usize % 5);
        let a = operator_of_class(dim, 3 * seed, seed);
        let b = operator_of_class(dim, 3 * seed + 1, seed + 1);
        let phi = random_state(dim, 3 * seed + 2);
        let chi = random_state(dim, 7000 + seed);
        let m = CrossMoments::compute(&a, &b, &phi, &chi).unwrap();
        let cands = stationary_lambdas(&m);
        let best_cand = cands
            .lambdas
            .iter()
            .map(|&l| lambda_form(l, &m).unwrap())
            .fold(f64::INFINITY, f64::min);
        let (_, grid_min) = lambda_grid_min(&m, 10_000);
        assert!(
            (best_cand - grid_min).abs() <= 1e-8,
            "seed {seed}: candidates {best_cand} vs grid {grid_min}"
        );
    }
}

#[test]
fn lambda_link_holds_on_a_dense_sample() {
    // One instance, 100 random λ values: the λ-form and the definition-route
    // objective agree at the parametrized shifts within 1e-10.
    let a = random_normal_operator(5, 61, SpectrumBox::unit_square());
    let b = random_unitary(5, 62);
    let phi = random_state(5, 63);
    let chi = random_state(5, 64);
    let m = CrossMoments::compute(&a, &b, &phi, &chi).unwrap();
    let mut rng = gurlab_core::matlin::rng_from_seed(65);
    use rand::Rng;
    for _ in 0..100 {
        let lambda: f64 = rng.gen();
        let (sa, sb) = m.shifts(lambda);
        let by_lambda = lambda_form(lambda, &m).unwrap();
        let by_def = objective_f(&a, &b, &phi, &chi, sa, sb).unwrap();
        assert!((by_lambda - by_def).abs() <= 1e-10 * (1.0 + by_lambda));
    }
}

#[test]
fn oracle_recovers_means_for_equal_states() {
    let a = random_hermitian(4, 31, -1.0, 1.0);
    let b = random_hermitian(4, 32, -1.0, 1.0);
    let psi = random_state(4, 33);
    let oracle = oracle_infimum(&a, &b, &psi, &psi, None, 41).unwrap();
    let ma = mean(&a, &psi).unwrap();
    let mb = mean(&b, &psi).unwrap();
    assert!((oracle.a - ma).norm() < 1e-6);
    assert!((oracle.b - mb).norm() < 1e-6);
    let m = CrossMoments::compute(&a, &b, &psi, &psi).unwrap();
    assert!((oracle.value - 2.0 * m.dev_a_phi * m.dev_b_phi).abs() < 1e-8);
}

#[test]
fn oracle_plateau_when_gaps_vanish() {
    // δ⟨A⟩ = δ⟨B⟩ = 0 but φ ≠ χ: the λ-form is constant and the oracle must
    // land on that plateau value.
    let a = random_hermitian(3, 41, -1.0, 1.0);
    let b = random_hermitian(3, 42, -1.0, 1.0);
    let psi = random_state(3, 43);
    let m_same = CrossMoments::compute(&a, &b, &psi, &psi).unwrap();
    let expect = m_same.dev_a_phi * m_same.dev_b_chi + m_same.dev_b_phi * m_same.dev_a_chi;
    let oracle = oracle_infimum(&a, &b, &psi, &psi, None, 41).unwrap();
    assert!((oracle.value - expect).abs() < 1e-8);
}

#[test]
fn oracle_agrees_with_quintic_on_random_instances() {
    for seed in 0..25 {
        let dim = 2 + (seed as usize % 3) * 2; // 2, 4, 6
        let a = operator_of_class(dim, 17 * seed, seed);
        let b = operator_of_class(dim, 17 * seed + 3, seed + 1);
        let phi = random_state(dim, 17 * seed + 6);
        let chi = random_state(dim, 17 * seed + 9);
        let engine = gur_bound(&a, &b, &phi, &chi).unwrap();
        let oracle = oracle_infimum(&a, &b, &phi, &chi, None, 41).unwrap();
        let rel = (engine.rhs - oracle.value).abs() / (1.0 + oracle.value);
        assert!(rel <= 1e-6, "seed {seed}: engine {} oracle {}", engine.rhs, oracle.value);
        // The two F-evaluation routes agree at the oracle's minimizer.
        assert!((oracle.value - oracle.value_by_definition).abs() <= 1e-9);
        // The oracle can never improve on a true lower bound violation.
        assert!(engine.lhs <= oracle.value + 1e-9 * (1.0 + oracle.value));
    }
}

#[test]
fn transform_closed_form_lambda_matches_rederived_denominator() {
    // Under B = U, φ = Uχ the stationary condition collapses to
    // λ₁ = Δ_χ(A_U)/(Δ_χ(A_U)+Δ_χ(A)).
    for seed in 0..20 {
        let dim = 3 + (seed as usize % 4);
        let a = random_hermitian(dim, 51 + seed, -1.0, 1.0);
        let u = random_unitary(dim, 151 + seed);
        let chi = random_state(dim, 251 + seed);
        let phi = StateVector::from_unnormalized(u.apply(chi.amplitudes())).unwrap();
        let m = CrossMoments::compute(&a, &u, &phi, &chi).unwrap();

        // Δ_φ(A) = Δ_χ(A_U): rederived closed form
        let lambda_rederived = m.dev_a_phi / (m.dev_a_phi + m.dev_a_chi);
        let (grid_lambda, _) = lambda_grid_min(&m, 100_001);
        assert!(
            (grid_lambda - lambda_rederived).abs() < 1e-4,
            "seed {seed}: grid {grid_lambda} vs rederived {lambda_rederived}"
        );
        let engine = gur_bound(&a, &u, &phi, &chi).unwrap();
        assert!(
            (engine.lambda_star - lambda_rederived).abs() < 1e-7,
            "seed {seed}: quintic {} vs rederived {}",
            engine.lambda_star,
            lambda_rederived
        );
        // Closed-form rhs: Δ(U)·√([Δ(A_U)+Δ(A)]² + |δ⟨A⟩|²)
        let s = m.dev_a_phi + m.dev_a_chi;
        let closed = m.dev_b_chi * (s * s + m.delta_a().norm_sqr()).sqrt();
        assert!((engine.rhs - closed).abs() < 1e-9 * (1.0 + closed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_invariance_of_weak_commutator(
        seed in 0u64..10_000,
        are in -2.0f64..2.0, aim in -2.0f64..2.0,
        bre in -2.0f64..2.0, bim in -2.0f64..2.0,
    ) {
        let dim = 2 + (seed as usize % 5);
        let a = operator_of_class(dim, seed, seed);
        let b = operator_of_class(dim, seed.wrapping_add(77), seed + 1);
        let phi = random_state(dim, seed.wrapping_add(154));
        let chi = random_state(dim, seed.wrapping_add(231));
        let ident = ComplexMatrix::identity(dim);
        let shifted_a = &a - &ident.scale(c(are, aim));
        let shifted_b = &b - &ident.scale(c(bre, bim));
        let q0 = weak_commutator(&a, &b, &phi, &chi).unwrap();
        let q1 = weak_commutator(&shifted_a, &shifted_b, &phi, &chi).unwrap();
        prop_assert!((q0 - q1).norm() <= 1e-10 * (1.0 + q0.norm()));
    }

    #[test]
    fn weak_commutator_equals_strong_form(seed in 0u64..10_000) {
        let dim = 2 + (seed as usize % 6);
        let a = operator_of_class(dim, seed, seed);
        let b = operator_of_class(dim, seed.wrapping_add(13), seed + 2);
        let phi = random_state(dim, seed.wrapping_add(26));
        let chi = random_state(dim, seed.wrapping_add(39));
        let q = weak_commutator(&a, &b, &phi, &chi).unwrap();
        let comm_chi = a.commutator(&b).apply(chi.amplitudes());
        let strong: Complex64 = phi
            .amplitudes()
            .iter()
            .zip(comm_chi.iter())
            .map(|(p, w)| p.conj() * w)
            .sum();
        let scale = a.frobenius_norm() * b.frobenius_norm();
        prop_assert!((q - strong).norm() <= 1e-10 * (1.0 + scale));
    }

    #[test]
    fn lambda_form_matches_objective_at_parametrized_shifts(
        seed in 0u64..10_000,
        lambda in 0.0f64..=1.0,
    ) {
        let dim = 2 + (seed as usize % 5);
        let a = operator_of_class(dim, seed, seed);
        let b = operator_of_class(dim, seed.wrapping_add(5), seed + 1);
        let phi = random_state(dim, seed.wrapping_add(10));
        let chi = random_state(dim, seed.wrapping_add(15));
        let m = CrossMoments::compute(&a, &b, &phi, &chi).unwrap();
        let (sa, sb) = m.shifts(lambda);
        let by_lambda = lambda_form(lambda, &m).unwrap();
        let by_objective = objective_f(&a, &b, &phi, &chi, sa, sb).unwrap();
        prop_assert!((by_lambda - by_objective).abs() <= 1e-10 * (1.0 + by_lambda));
    }

    #[test]
    fn objective_dominates_weak_commutator(
        seed in 0u64..10_000,
        are in -3.0f64..3.0, aim in -3.0f64..3.0,
        bre in -3.0f64..3.0, bim in -3.0f64..3.0,
    ) {
        let dim = 2 + (seed as usize % 4);
        let a = operator_of_class(dim, seed, seed);
        let b = operator_of_class(dim, seed.wrapping_add(3), seed + 1);
        let phi = random_state(dim, seed.wrapping_add(6));
        let chi = random_state(dim, seed.wrapping_add(9));
        let q = weak_commutator(&a, &b, &phi, &chi).unwrap().norm();
        let f = objective_f(&a, &b, &phi, &chi, c(are, aim), c(bre, bim)).unwrap();
        prop_assert!(f >= q - 1e-9);
    }

    #[test]
    fn unitary_moment_identity(seed in 0u64..10_000) {
        let dim = 2 + (seed as usize % 8);
        let v = random_unitary(dim, seed);
        let psi = random_state(dim, seed.wrapping_add(1));
        let m = mean(&v, &psi).unwrap();
        let dev = gurlab_core::ur_core::deviation(&v, &psi).unwrap();
        prop_assert!((dev * dev + m.norm_sqr() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn two_state_inequality_holds(seed in 0u64..100_000) {
        let dim = 2 + (seed as usize % 7);
        let a = operator_of_class(dim, seed, seed);
        let b = operator_of_class(dim, seed.wrapping_add(1000), seed + 1);
        let phi = random_state(dim, seed.wrapping_add(2000));
        let chi = random_state(dim, seed.wrapping_add(3000));
        let rep = gur_bound(&a, &b, &phi, &chi).unwrap();
        prop_assert!(rep.slack >= -1e-9 * (1.0 + rep.rhs));
        prop_assert!((0.0..=1.0).contains(&rep.lambda_star));
    }
}
