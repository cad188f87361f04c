//! Campaign harness for the gurlab engine: a registry of named experiments,
//! deterministic seeded dispatch, JSON-lines/CSV report emission, and replay.

pub mod campaign;
pub mod config;
pub mod emit;
pub mod experiments;
pub mod summary;
