//! Experiment records: one row per certified inequality instance.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Flag set when a spread in the bound is infinite (a unitary mean vanished);
/// the inequality is then trivially true and the record passes by flag.
pub const FLAG_INFINITE_SPREAD: &str = "InfiniteSpread";
/// Flag set when the stationary polynomial degenerated (shift means equal) and
/// the λ-candidate set collapsed to {1/2}.
pub const FLAG_DEGENERATE: &str = "DegenerateCoefficients";
/// Flag set when the λ-limit machinery had nothing to resolve (zero variance).
pub const FLAG_TRIVIAL_LIMIT: &str = "TrivialLimit";
/// Flag set when an engine cross-check inside a checker disagreed with the
/// closed form it was supposed to reproduce.
pub const FLAG_ENGINE_MISMATCH: &str = "EngineMismatch";

/// Result row of one checker invocation.
///
/// `lhs`/`rhs` are the two sides of the certified inequality and
/// `slack = rhs − lhs`; for identity-style experiments `lhs` is the observed
/// residual, `rhs` the allowed budget, so `slack ≥ 0` still means "pass".
/// When a trivializing flag is present the bound holds vacuously; by
/// convention such records store `rhs = lhs`, `slack = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment_id: String,
    pub model: String,
    pub dim: usize,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub flags: BTreeSet<String>,
    pub passed: bool,
    pub extra: BTreeMap<String, f64>,
}

impl ExperimentRecord {
    /// Inequality-style record: pass iff `rhs − lhs ≥ −tolerance`.
    pub fn bound(model: &str, dim: usize, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            experiment_id: model.to_string(),
            model: model.to_string(),
            dim,
            seed: 0,
            lhs,
            rhs,
            slack,
            flags: BTreeSet::new(),
            passed: slack >= -tolerance,
            extra: BTreeMap::new(),
        }
    }

    /// Identity-style record: `residual` against an error `budget`.
    pub fn residual(model: &str, dim: usize, residual: f64, budget: f64) -> Self {
        Self::bound(model, dim, residual, budget, 0.0)
    }

    /// Trivially-true record (some spread was infinite); `flag` explains why.
    pub fn trivial(model: &str, dim: usize, lhs: f64, flag: &str) -> Self {
        let mut rec = Self::bound(model, dim, lhs, lhs, 0.0);
        rec.flags.insert(flag.to_string());
        rec.passed = true;
        rec
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    pub fn with_flag(mut self, flag: &str) -> Self {
        self.flags.insert(flag.to_string());
        self
    }

    /// Mark failed regardless of slack (cross-check mismatch inside a checker).
    pub fn fail(mut self, flag: &str) -> Self {
        self.flags.insert(flag.to_string());
        self.passed = false;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_experiment_id(mut self, id: &str) -> Self {
        self.experiment_id = id.to_string();
        self
    }

    /// And-in an additional condition without losing an earlier failure.
    pub fn require(mut self, ok: bool, flag: &str) -> Self {
        if !ok {
            self.flags.insert(flag.to_string());
            self.passed = false;
        }
        self
    }
}
