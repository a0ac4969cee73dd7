//! Spectral preprocessing for QUBO problems.
//!
//! The crate augments a QUBO matrix with rank-1 reward/penalty terms built
//! from its dominant eigenpairs, and bundles what is needed to study the
//! effect: a tabu-search/path-relinking solver, random-walk landscape
//! statistics, benchmark instance I/O and generators, and an experiment
//! harness.

pub mod error;
pub mod harness;
pub mod instances;
pub mod landscape;
pub mod qubo;
pub mod seed;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use instances::{GeneratorFamily, GeneratorSpec, MdpInstance};
pub use landscape::{LandscapeStats, WalkConfig};
pub use qubo::{FlipGainState, QuboInstance, Solution};
pub use solver::{RunReport, SolverConfig};
pub use spectral::{EigenPair, SpectralSummary, TransformConfig};
