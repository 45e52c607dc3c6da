//! Deficiency of random binary chemical reaction networks.
//!
//! Networks are built from Erdős–Rényi graphs whose vertices are the
//! complexes of molecularity at most two on `n` species. The crate computes
//! deficiency exactly and estimates how often it is zero as `n` grows, with
//! edge probability on either side of `1/n^3`.

pub mod cli;
pub mod complex_space;
pub mod dsu;
pub mod er_sampler;
pub mod experiments;
pub mod netparse;
pub mod network_core;
pub mod rank;
pub mod stats;

pub use complex_space::{Complex, SpeciesId};
pub use er_sampler::ErTrialConfig;
pub use experiments::{EstimateRow, SweepSpec};
pub use network_core::{deficiency, DeficiencyReport, Reaction, ReactionNetwork, Vertex};
