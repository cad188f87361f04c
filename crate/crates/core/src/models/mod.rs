//! Finite-dimensional model systems exercising the two-state bound:
//! Weyl clock/shift pairs, a discretized canonical pair, the truncated
//! rotor, unitary-transform and time-evolution bounds, spread limits, and
//! spin representations.

mod canonical;
mod evolution;
mod rotor;
mod spin;
mod spread;
mod weyl;

pub use canonical::{canonical_limit_check, CanonicalGrid, GaussianFamily};
pub use evolution::{derivative_bound_check, time_evolution_bound, unitary_transform_bound};
pub use rotor::{rotor_bound_check, RotorModel};
pub use spin::{
    angmom_two_state_bound, bounded_norm_bound, abs_j3_bound, spin_system, Parity, SpinJ,
    SpinRep, SpinSystem,
};
pub use spread::{dyadic_s_sequence, spread_identity_check, spread_limit_check};
pub use weyl::{mean_transport_check, mean_transport_residual, weyl_bound_check, WeylPair};

use crate::matlin::MatlinError;
use crate::ur_core::UrError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("state carries {mass:.3e} probability mass within the truncation margin")]
    EdgeSupport { mass: f64 },
    #[error("direct sum mixes integer and half-integer spins")]
    MixedParity,
    #[error("commutation relation violated: residual {residual:.3e}")]
    BadWeylPair { residual: f64 },
    #[error(transparent)]
    Ur(#[from] UrError),
    #[error(transparent)]
    Matlin(#[from] MatlinError),
}

/// Certification tolerance for inequality slack, relative in the bound size.
pub(crate) fn bound_tol(rhs: f64) -> f64 {
    1e-9 * (1.0 + rhs)
}
