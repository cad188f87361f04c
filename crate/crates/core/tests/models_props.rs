//! Cross-model invariants in campaign miniature: the acceptance suite runs
//! the full sizes, these keep the per-model contracts honest during
//! development.

use gurlab_core::matlin::{random_hermitian, random_state, random_unitary, rng_from_seed, StateVector};
use gurlab_core::models::{
    canonical_limit_check, dyadic_s_sequence, abs_j3_bound, rotor_bound_check,
    spread_identity_check, spread_limit_check, time_evolution_bound, unitary_transform_bound,
    weyl_bound_check, GaussianFamily, RotorModel, SpinJ, SpinRep, WeylPair,
};
use gurlab_core::report::FLAG_INFINITE_SPREAD;
use gurlab_core::Complex64;
use rand::Rng;

fn edge_safe_state(model: &RotorModel, margin: i64, seed: u64) -> StateVector {
    let mut rng = rng_from_seed(seed);
    let amps: Vec<Complex64> = (-model.m_max()..=model.m_max())
        .map(|m| {
            if m.abs() > model.m_max() - margin {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            }
        })
        .collect();
    StateVector::from_unnormalized(amps).unwrap()
}

#[test]
fn weyl_campaign_small() {
    for d in 2..=12 {
        let pair = WeylPair::clock_shift(d);
        for trial in 0..20u64 {
            let psi = random_state(d, d as u64 * 100 + trial);
            let rec = weyl_bound_check(&pair, &psi).unwrap();
            assert!(rec.passed, "d={d} trial={trial}: {rec:?}");
            if !rec.flags.contains(FLAG_INFINITE_SPREAD) {
                assert!((rec.extra["lambda_star"] - 0.5).abs() <= 1e-8);
            }
        }
    }
}

#[test]
fn weyl_swap_symmetry_all_dims() {
    for d in 2..=12 {
        let pair = WeylPair::clock_shift(d);
        let swapped = pair.swapped().expect("swap preserves the relation");
        assert!((swapped.epsilon() - pair.epsilon()).abs() < 1e-15);
    }
}

#[test]
fn canonical_gaussian_at_256_is_near_saturation() {
    let family = GaussianFamily {
        sigma: 1.0 / std::f64::consts::SQRT_2,
        center: 0.0,
        momentum: 0.0,
    };
    let rec = canonical_limit_check(256, &family).unwrap();
    assert!(rec.passed, "{rec:?}");
    // ½ ≤ Δ(X)·δ(U(β))/β with slack < 0.05 for the near-minimal packet
    assert!(rec.slack >= 0.0 && rec.slack < 0.05, "slack {}", rec.slack);
}

#[test]
fn rotor_campaign_small() {
    let model = RotorModel::new(64);
    for n in 1..=3i64 {
        for trial in 0..20u64 {
            let psi = edge_safe_state(&model, 8, 7000 + trial);
            let beta = 0.15 + 0.3 * (trial % 6) as f64;
            let rec = rotor_bound_check(&model, n, beta, &psi).unwrap();
            assert!(rec.passed, "n={n} trial={trial}: {rec:?}");
        }
    }
}

#[test]
fn spread_limit_random_dim16_converges() {
    let x = random_hermitian(16, 81, -1.0, 1.0);
    let psi = random_state(16, 82);
    let seq = dyadic_s_sequence(&x, 4, 10).unwrap();
    let rec = spread_limit_check(&x, &psi, &seq).unwrap();
    assert!(rec.passed, "{rec:?}");
    let order = rec.extra["order"];
    assert!((1.8..=2.2).contains(&order), "order {order}");
}

#[test]
fn spread_identity_random_matrix() {
    for seed in 0..5 {
        let x = random_hermitian(8, 90 + seed, -1.5, 1.5);
        let psi = random_state(8, 95 + seed);
        for s in [0.1, 1.3, 4.0] {
            let rec = spread_identity_check(&x, &psi, s).unwrap();
            assert!(rec.passed, "seed {seed} s={s}: {rec:?}");
        }
    }
}

#[test]
fn transform_and_evolution_random_campaign() {
    for seed in 0..10 {
        let a = random_hermitian(8, seed, -1.0, 1.0);
        let u = random_unitary(8, 60 + seed);
        let chi = random_state(8, 120 + seed);
        let rec = unitary_transform_bound(&a, &u, &chi).unwrap();
        assert!(rec.passed, "transform seed {seed}: {rec:?}");
        // the λ-grid answer must match the rederived closed form
        if let (Some(grid), Some(re)) =
            (rec.extra.get("lambda_grid"), rec.extra.get("lambda_rederived"))
        {
            assert!((grid - re).abs() < 1e-6, "seed {seed}: {grid} vs {re}");
        }

        let h = random_hermitian(8, 200 + seed, -1.0, 1.0);
        let rec = time_evolution_bound(&a, &h, &chi, 0.2, 1.1).unwrap();
        assert!(rec.passed, "evolution seed {seed}: {rec:?}");
    }
}

#[test]
fn abs_j3_all_small_spins() {
    for two_j in [1u32, 2, 3, 4, 5] {
        let rep = SpinRep::single(SpinJ::from_two_j(two_j));
        for trial in 0..10u64 {
            let psi = random_state(rep.dim, 300 + trial);
            let rec = abs_j3_bound(&rep, &psi).unwrap();
            assert!(rec.passed, "2j={two_j} trial={trial}: {rec:?}");
        }
    }
}
