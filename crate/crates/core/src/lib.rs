//! Numerical certification of a two-state uncertainty relation on
//! finite-dimensional models.
//!
//! The crate is organized around one inequality: for normal operators `A`, `B`
//! and unit vectors `φ`, `χ`,
//!
//! ```text
//! |q_{A,B}(φ,χ)| ≤ inf_{a,b ∈ ℂ} ( ‖(A−a)φ‖‖(B−b)χ‖ + ‖(B−b)φ‖‖(A−a)χ‖ )
//! ```
//!
//! where `q_{A,B}(φ,χ) = (A*φ, Bχ) − (B*φ, Aχ)` is the weak commutator.
//! [`ur_core`] evaluates both sides (the right-hand side through a one-parameter
//! family with a quintic stationary condition, cross-checked by a brute-force
//! grid oracle), and [`models`] instantiates the bound on Weyl clock/shift
//! pairs, a discretized canonical pair, a truncated rotor, unitary transforms,
//! Heisenberg-picture evolution, and spin systems. [`rotor_grid`] discretizes
//! the angle/angular-momentum pair on `L²(⟨0,2π⟩)` to exhibit the boundary-term
//! identity behind the textbook `ΔΦ ΔL ≥ 1/2` pathology.
//!
//! All checkers emit [`report::ExperimentRecord`] rows consumed by the
//! `gurlab` command-line harness.

pub mod matlin;
pub mod models;
pub mod report;
pub mod rotor_grid;
pub mod ur_core;

pub use num_complex::Complex64;
