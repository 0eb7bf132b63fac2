//! Soft happy colouring on stochastic block model graphs.
//!
//! A vertex is ρ-happy when at least `⌈ρ·deg(v)⌉` of its neighbours share
//! its colour. This crate generates seeded SBM instances with
//! community-aligned precolourings, extends precolourings with four
//! heuristics (greedy, neighbour greedy, local maximal, growth), evaluates
//! the outputs, computes the closed-form thresholds below which the
//! community colouring is ρ-happy with high probability, and runs
//! reproducible experiment sweeps.

pub mod colouring;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod sbm;
pub mod solvers;
pub mod theory;

pub use colouring::{
    happiness, is_rho_happy, same_colour_degree, Colour, HappinessReport, PartialColouring, Rho,
};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use io::{Instance, InstanceParams};
pub use metrics::{community_accuracy, evaluate, EvalRecord};
pub use sbm::{
    induced_colouring, sample_graph, sample_precolouring, CommunityAssignment, SbmParams,
};
pub use solvers::{Algorithm, SolveResult, SolverConfig};
pub use theory::ThresholdReport;
