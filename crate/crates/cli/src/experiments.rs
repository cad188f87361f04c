//! The experiment registry: every named experiment maps `(dim, seed)` to one
//! certified record, deterministically.

use gurlab_core::matlin::{
    random_hermitian, random_normal_operator, random_state, random_unitary, rng_from_seed,
    ComplexMatrix, SpectrumBox, StateVector,
};
use gurlab_core::models::{
    angmom_two_state_bound, bounded_norm_bound, canonical_limit_check, derivative_bound_check,
    dyadic_s_sequence, mean_transport_residual, abs_j3_bound, rotor_bound_check,
    spread_identity_check, spread_limit_check, time_evolution_bound, unitary_transform_bound,
    weyl_bound_check, GaussianFamily, RotorModel, SpinJ, SpinRep, WeylPair,
};
use gurlab_core::report::ExperimentRecord;
use gurlab_core::rotor_grid::{kraus_refinement, pathology_demo, GridFunction};
use gurlab_core::ur_core::{gur_bound, oracle_infimum, robertson, CrossMoments};
use gurlab_core::Complex64;
use rand::Rng;

pub type RunFn = fn(usize, u64) -> Result<ExperimentRecord, String>;

/// One registry entry.
pub struct Experiment {
    pub name: &'static str,
    pub description: &'static str,
    pub default_dims: &'static [usize],
    pub min_dim: usize,
    pub run: RunFn,
    /// Variant that forces the brute-force grid oracle as a cross-check;
    /// only bound-engine experiments support it.
    pub oracle_run: Option<RunFn>,
}

/// All experiments, in report order.
pub fn registry() -> &'static [Experiment] {
    &REGISTRY
}

pub fn find(name: &str) -> Option<&'static Experiment> {
    REGISTRY.iter().find(|e| e.name == name)
}

static REGISTRY: [Experiment; 18] = [
    Experiment {
        name: "two_state",
        description: "two-state bound on random normal pairs (Hermitian/unitary/generic mix)",
        default_dims: &[2, 3, 4, 6, 8, 12, 16, 24, 32],
        min_dim: 2,
        run: run_two_state,
        oracle_run: Some(oracle_two_state),
    },
    Experiment {
        name: "robertson",
        description: "equal-state specialization: rhs collapses to 2·Δ(A)Δ(B)",
        default_dims: &[2, 4, 8],
        min_dim: 2,
        run: run_robertson,
        oracle_run: Some(oracle_robertson),
    },
    Experiment {
        name: "weyl",
        description: "clock/shift pair: ½|ω−1| ≤ δ(W)δ(U), engine λ₁ = ½",
        default_dims: &[2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
        min_dim: 2,
        run: run_weyl,
        oracle_run: Some(oracle_weyl),
    },
    Experiment {
        name: "weyl_transport",
        description: "mean-transport identities under φ = Uψ, χ = W*ψ",
        default_dims: &[2, 3, 5, 8, 12],
        min_dim: 2,
        run: run_weyl_transport,
        oracle_run: None,
    },
    Experiment {
        name: "canonical",
        description: "discretized canonical pair: rescaled Weyl bound and its position-side limit",
        default_dims: &[128, 256],
        min_dim: 32,
        run: run_canonical,
        oracle_run: None,
    },
    Experiment {
        name: "rotor",
        description: "truncated rotor: ½|n| ≤ δ(W(n))Δ(L) on edge-safe states",
        default_dims: &[64],
        min_dim: 8,
        run: run_rotor,
        oracle_run: None,
    },
    Experiment {
        name: "spread_identity",
        description: "Δ²(V(s)) equals the sin² double sum over the spectral measure",
        default_dims: &[2, 4, 8, 16],
        min_dim: 2,
        run: run_spread_identity,
        oracle_run: None,
    },
    Experiment {
        name: "spread_limit",
        description: "Δ²(V(s))/s² → Δ²(X) with second-order convergence",
        default_dims: &[4, 8, 16],
        min_dim: 2,
        run: run_spread_limit,
        oracle_run: None,
    },
    Experiment {
        name: "unitary_transform",
        description: "|⟨A_U⟩−⟨A⟩| ≤ δ(U)[Δ(A_U)+Δ(A)] with λ₁ closed-form bookkeeping",
        default_dims: &[2, 4, 8],
        min_dim: 2,
        run: run_unitary_transform,
        oracle_run: Some(oracle_unitary_transform),
    },
    Experiment {
        name: "time_evolution",
        description: "Heisenberg-picture mean drift bound",
        default_dims: &[2, 4, 8],
        min_dim: 2,
        run: run_time_evolution,
        oracle_run: None,
    },
    Experiment {
        name: "derivative_bound",
        description: "½|d⟨A_t⟩/dt| ≤ Δ(H)Δ(A_t) via Richardson-checked differences",
        default_dims: &[2, 4, 8],
        min_dim: 2,
        run: run_derivative_bound,
        oracle_run: None,
    },
    Experiment {
        name: "spin_half",
        description: "spin-½: ½ ≤ Δ(J₁)+Δ(J₂) for every state",
        default_dims: &[2],
        min_dim: 2,
        run: run_spin_half,
        oracle_run: None,
    },
    Experiment {
        name: "angmom",
        description: "two-state angular-momentum inequality with real shifts",
        default_dims: &[2, 3, 4, 5],
        min_dim: 2,
        run: run_angmom,
        oracle_run: None,
    },
    Experiment {
        name: "bounded_norm",
        description: "‖J₃ψ‖ ≤ 2j(Δ(J₁)+Δ(J₂)), kernel variance identity included",
        default_dims: &[2, 3, 4, 5],
        min_dim: 2,
        run: run_bounded_norm,
        oracle_run: None,
    },
    Experiment {
        name: "abs_j3",
        description: "|J₃| bound with projection/sign operator identities, single irrep",
        default_dims: &[2, 3, 4, 5, 6],
        min_dim: 2,
        run: run_abs_j3,
        oracle_run: None,
    },
    Experiment {
        name: "abs_j3_sum",
        description: "|J₃| bound on uniform-parity direct sums",
        default_dims: &[6, 9, 12],
        min_dim: 4,
        run: run_abs_j3_sum,
        oracle_run: None,
    },
    Experiment {
        name: "kraus",
        description: "rotor boundary identity under grid refinement",
        default_dims: &[1024],
        min_dim: 128,
        run: run_kraus,
        oracle_run: None,
    },
    Experiment {
        name: "pathology",
        description: "L-eigenstate breaks the boundary-blind ΔΦΔL ≥ ½ bound",
        default_dims: &[256, 512],
        min_dim: 64,
        run: run_pathology,
        oracle_run: None,
    },
];

/// Independent sub-draws from one instance seed.
fn stream(seed: u64, lane: u64) -> u64 {
    // SplitMix64 on (seed, lane); documented in the README seeding notes.
    let mut z = seed ^ lane.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn err_to_string<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Mixed operator class keyed by a lane of the seed.
fn mixed_operator(dim: usize, seed: u64, class: u64) -> ComplexMatrix {
    match class % 3 {
        0 => random_hermitian(dim, seed, -1.0, 1.0),
        1 => random_unitary(dim, seed),
        _ => random_normal_operator(dim, seed, SpectrumBox::unit_square()),
    }
}

/// The instance behind the `two_state` experiment: a mixed-class operator pair
/// and two random states, all derived from one seed. Public so oracle
/// cross-examination can rebuild the exact same instance.
pub fn two_state_instance(
    dim: usize,
    seed: u64,
) -> (ComplexMatrix, ComplexMatrix, StateVector, StateVector) {
    let a = mixed_operator(dim, stream(seed, 1), seed);
    let b = mixed_operator(dim, stream(seed, 2), seed >> 2);
    let phi = random_state(dim, stream(seed, 3));
    let chi = random_state(dim, stream(seed, 4));
    (a, b, phi, chi)
}

fn run_two_state(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let (a, b, phi, chi) = two_state_instance(dim, seed);
    let rep = gur_bound(&a, &b, &phi, &chi).map_err(err_to_string)?;
    let tol = 1e-9 * (1.0 + rep.rhs);
    Ok(
        ExperimentRecord::bound("gur_random_pair", dim, rep.lhs, rep.rhs, tol)
            .with_extra("lambda_star", rep.lambda_star)
            .with_extra("a_star_re", rep.a_star.re)
            .with_extra("a_star_im", rep.a_star.im)
            .with_extra("b_star_re", rep.b_star.re)
            .with_extra("b_star_im", rep.b_star.im),
    )
}

fn oracle_two_state(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let (a, b, phi, chi) = two_state_instance(dim, seed);
    let rep = gur_bound(&a, &b, &phi, &chi).map_err(err_to_string)?;
    let oracle = oracle_infimum(&a, &b, &phi, &chi, None, 41).map_err(err_to_string)?;
    oracle_record("gur_random_pair", dim, rep.lhs, rep.rhs, rep.lambda_star, &oracle)
}

fn oracle_record(
    model: &str,
    dim: usize,
    lhs: f64,
    engine_rhs: f64,
    lambda_star: f64,
    oracle: &gurlab_core::ur_core::OracleInfimum,
) -> Result<ExperimentRecord, String> {
    let rel_gap = (engine_rhs - oracle.value).abs() / (1.0 + oracle.value);
    Ok(
        ExperimentRecord::bound(model, dim, lhs, oracle.value, 1e-9 * (1.0 + oracle.value))
            .with_extra("engine_rhs", engine_rhs)
            .with_extra("oracle_rhs", oracle.value)
            .with_extra("oracle_rel_gap", rel_gap)
            .with_extra("oracle_definition_gap", (oracle.value - oracle.value_by_definition).abs())
            .with_extra("lambda_star", lambda_star)
            .require(rel_gap <= 1e-6, "OracleDisagreement"),
    )
}

fn run_robertson(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let a = mixed_operator(dim, stream(seed, 1), seed);
    let b = mixed_operator(dim, stream(seed, 2), seed >> 2);
    let psi = random_state(dim, stream(seed, 3));
    let rep = robertson(&a, &b, &psi).map_err(err_to_string)?;
    // Independent moments for the 2ΔΔ contract.
    let m = CrossMoments::compute(&a, &b, &psi, &psi).map_err(err_to_string)?;
    let independent = 2.0 * m.dev_a_phi * m.dev_b_phi;
    let general = gur_bound(&a, &b, &psi, &psi).map_err(err_to_string)?;
    let tol = 1e-9 * (1.0 + rep.rhs);
    Ok(
        ExperimentRecord::bound("robertson_equal_state", dim, rep.lhs, rep.rhs, tol)
            .with_extra("rhs_independent", independent)
            .with_extra("rhs_general_engine", general.rhs)
            .require((rep.rhs - independent).abs() <= 1e-12, "ClosedFormMismatch")
            .require(
                (general.rhs - independent).abs() <= 1e-12,
                "GeneralEngineMismatch",
            ),
    )
}

fn oracle_robertson(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let a = mixed_operator(dim, stream(seed, 1), seed);
    let b = mixed_operator(dim, stream(seed, 2), seed >> 2);
    let psi = random_state(dim, stream(seed, 3));
    let rep = robertson(&a, &b, &psi).map_err(err_to_string)?;
    let oracle = oracle_infimum(&a, &b, &psi, &psi, None, 41).map_err(err_to_string)?;
    oracle_record("robertson_equal_state", dim, rep.lhs, rep.rhs, 0.5, &oracle)
}

fn run_weyl(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let pair = WeylPair::clock_shift(dim);
    let psi = random_state(dim, stream(seed, 1));
    weyl_bound_check(&pair, &psi).map_err(err_to_string)
}

fn oracle_weyl(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let pair = WeylPair::clock_shift(dim);
    let psi = random_state(dim, stream(seed, 1));
    let phi = StateVector::from_unnormalized(pair.u().apply(psi.amplitudes()))
        .map_err(err_to_string)?;
    let chi = StateVector::from_unnormalized(pair.w().adjoint().apply(psi.amplitudes()))
        .map_err(err_to_string)?;
    let rep = gur_bound(pair.w(), pair.u(), &phi, &chi).map_err(err_to_string)?;
    let oracle =
        oracle_infimum(pair.w(), pair.u(), &phi, &chi, None, 41).map_err(err_to_string)?;
    oracle_record("weyl_pair", dim, rep.lhs, rep.rhs, rep.lambda_star, &oracle)
}

fn run_weyl_transport(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let pair = WeylPair::clock_shift(dim);
    let psi = random_state(dim, stream(seed, 1));
    let residual = mean_transport_residual(&pair, &psi).map_err(err_to_string)?;
    Ok(ExperimentRecord::residual("weyl_transport", dim, residual, 1e-12))
}

fn run_canonical(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let mut rng = rng_from_seed(stream(seed, 1));
    let family = GaussianFamily {
        sigma: 0.55 + 0.25 * rng.gen::<f64>(),
        center: 0.6 * rng.gen::<f64>() - 0.3,
        momentum: 2.0 * rng.gen::<f64>() - 1.0,
    };
    canonical_limit_check(dim, &family).map_err(err_to_string)
}

fn run_rotor(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let m_max = dim as i64;
    let model = RotorModel::new(m_max);
    let margin = 8.min(m_max / 2).max(1);
    let psi = rotor_edge_safe_state(&model, margin, stream(seed, 1));
    let mut rng = rng_from_seed(stream(seed, 2));
    let n = 1 + (rng.gen::<u64>() % 3) as i64;
    let beta = 0.1 + 6.0 * rng.gen::<f64>();
    rotor_bound_check(&model, n, beta, &psi).map_err(err_to_string)
}

/// Random state supported away from the rotor truncation edge.
pub fn rotor_edge_safe_state(model: &RotorModel, margin: i64, seed: u64) -> StateVector {
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
    StateVector::from_unnormalized(amps).expect("margin leaves support")
}

fn run_spread_identity(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let x = random_hermitian(dim, stream(seed, 1), -1.0, 1.0);
    let psi = random_state(dim, stream(seed, 2));
    let mut rng = rng_from_seed(stream(seed, 3));
    let s = 20.0 * rng.gen::<f64>() - 10.0;
    spread_identity_check(&x, &psi, s).map_err(err_to_string)
}

fn run_spread_limit(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let x = random_hermitian(dim, stream(seed, 1), -1.0, 1.0);
    let psi = random_state(dim, stream(seed, 2));
    let seq = dyadic_s_sequence(&x, 4, 10).map_err(err_to_string)?;
    spread_limit_check(&x, &psi, &seq).map_err(err_to_string)
}

fn run_unitary_transform(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let a = mixed_operator(dim, stream(seed, 1), seed);
    let u = random_unitary(dim, stream(seed, 2));
    let chi = random_state(dim, stream(seed, 3));
    unitary_transform_bound(&a, &u, &chi).map_err(err_to_string)
}

fn oracle_unitary_transform(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let a = mixed_operator(dim, stream(seed, 1), seed);
    let u = random_unitary(dim, stream(seed, 2));
    let chi = random_state(dim, stream(seed, 3));
    let phi = StateVector::from_unnormalized(u.apply(chi.amplitudes())).map_err(err_to_string)?;
    let rep = gur_bound(&a, &u, &phi, &chi).map_err(err_to_string)?;
    let oracle = oracle_infimum(&a, &u, &phi, &chi, None, 41).map_err(err_to_string)?;
    oracle_record("unitary_transform", dim, rep.lhs, rep.rhs, rep.lambda_star, &oracle)
}

fn run_time_evolution(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let a = mixed_operator(dim, stream(seed, 1), seed);
    let h = random_hermitian(dim, stream(seed, 2), -1.0, 1.0);
    let chi = random_state(dim, stream(seed, 3));
    let mut rng = rng_from_seed(stream(seed, 4));
    let t1 = 2.0 * rng.gen::<f64>();
    let t2 = t1 + 2.0 * rng.gen::<f64>();
    time_evolution_bound(&a, &h, &chi, t1, t2).map_err(err_to_string)
}

fn run_derivative_bound(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let a = mixed_operator(dim, stream(seed, 1), seed);
    let h = random_hermitian(dim, stream(seed, 2), -1.0, 1.0);
    let chi = random_state(dim, stream(seed, 3));
    let mut rng = rng_from_seed(stream(seed, 4));
    let t = 2.0 * rng.gen::<f64>();
    derivative_bound_check(&a, &h, &chi, t, &[1e-2, 5e-3, 2.5e-3]).map_err(err_to_string)
}

fn run_spin_half(_dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let rep = SpinRep::single(SpinJ::from_two_j(1));
    let psi = random_state(2, stream(seed, 1));
    bounded_norm_bound(&rep, &psi).map_err(err_to_string)
}

fn spin_from_dim(dim: usize) -> SpinRep {
    SpinRep::single(SpinJ::from_two_j((dim - 1) as u32))
}

fn run_angmom(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let rep = spin_from_dim(dim);
    let phi = random_state(dim, stream(seed, 1));
    let psi = random_state(dim, stream(seed, 2));
    let mut rng = rng_from_seed(stream(seed, 3));
    let j1 = 2.0 * rng.gen::<f64>() - 1.0;
    let j2 = 2.0 * rng.gen::<f64>() - 1.0;
    angmom_two_state_bound(&rep, &phi, &psi, j1, j2).map_err(err_to_string)
}

fn run_bounded_norm(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let rep = spin_from_dim(dim);
    let psi = random_state(dim, stream(seed, 1));
    bounded_norm_bound(&rep, &psi).map_err(err_to_string)
}

fn run_abs_j3(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let rep = spin_from_dim(dim);
    let psi = random_state(dim, stream(seed, 1));
    abs_j3_bound(&rep, &psi).map_err(err_to_string)
}

fn run_abs_j3_sum(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    // Uniform-parity direct sum filling roughly `dim` total dimensions.
    let mut rng = rng_from_seed(stream(seed, 1));
    let fermionic = rng.gen::<bool>();
    let mut js = Vec::new();
    let mut total = 0usize;
    while total + 2 <= dim {
        let step = 1 + (rng.gen::<u64>() % 3) as u32; // j up to 3 in parity units
        let two_j = if fermionic { 2 * step - 1 } else { 2 * step };
        let j = SpinJ::from_two_j(two_j);
        if total + j.dim() > dim && !js.is_empty() {
            break;
        }
        total += j.dim();
        js.push(j);
    }
    if js.is_empty() {
        js.push(SpinJ::from_two_j(if fermionic { 1 } else { 2 }));
    }
    let rep = SpinRep::direct_sum(&js).map_err(err_to_string)?;
    let psi = random_state(rep.dim, stream(seed, 2));
    abs_j3_bound(&rep, &psi).map_err(err_to_string)
}

fn run_kraus(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let mut rng = rng_from_seed(stream(seed, 1));
    let kappa = 0.4 + 1.2 * rng.gen::<f64>();
    let phase0 = std::f64::consts::TAU * rng.gen::<f64>();
    let wobble = 0.5 + rng.gen::<f64>();
    let state = move |n: usize| {
        GridFunction::state_from_fn(n, |phi| {
            Complex64::from_polar((kappa * (phi - phase0).cos()).exp(), wobble * phi.sin())
        })
    };
    let mut levels = Vec::new();
    let mut n = dim.max(128);
    while n >= 64 && levels.len() < 5 {
        levels.push(n);
        n /= 2;
    }
    levels.reverse();
    kraus_refinement(state, &levels).map_err(err_to_string)
}

fn run_pathology(dim: usize, seed: u64) -> Result<ExperimentRecord, String> {
    let mut rng = rng_from_seed(stream(seed, 1));
    let m = (rng.gen::<u64>() % 8) as i64;
    pathology_demo(m, dim).map_err(err_to_string)
}
