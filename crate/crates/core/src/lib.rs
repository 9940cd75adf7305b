//! Dependency-network analytics for package ecosystems.
//!
//! Builds a directed package dependency graph from registry metadata (CRAN
//! style DCF indexes, JSON manifests, or edge lists) and profiles it in three
//! dimensions: structure (degree distributions, power-law exponent,
//! clustering, path lengths, random-graph baselines), individual packages
//! (vulnerability and controllability scores), and modules (Louvain
//! communities with keyword summaries).

#![forbid(unsafe_code)]

pub mod community;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod nodes;
pub mod pipeline;
pub mod structure;

pub use error::{Error, Result};
