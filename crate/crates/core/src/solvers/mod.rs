//! Heuristics that extend a partial colouring to a complete one, plus an
//! exhaustive oracle for tiny instances.
//!
//! Every solver keeps precoloured vertices fixed. Colour ties are always
//! broken towards the lowest colour index. Vertex choices are uniform under
//! the configured seed, or lowest-id when `deterministic` is set.

mod greedy;
mod growth;
mod lmc;
mod ngc;
mod oracle;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, PartialColouring, Rho};
use crate::error::{Error, Result};

pub use greedy::greedy_soft_mhv;
pub use growth::{classify_vertices, growth_soft_mhv, VertexClass, VertexClasses};
pub use lmc::lmc;
pub use ngc::ngc;
pub use oracle::{exact_oracle, OracleResult, ORACLE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub rho: Rho,
    pub seed: u64,
    /// Wall-clock budget in milliseconds; 0 means unlimited.
    pub time_limit_ms: u64,
    pub deterministic: bool,
}

impl SolverConfig {
    pub fn new(rho: Rho) -> Self {
        SolverConfig {
            rho,
            seed: 0,
            time_limit_ms: 0,
            deterministic: false,
        }
    }

    pub fn deterministic(rho: Rho) -> Self {
        SolverConfig {
            deterministic: true,
            ..Self::new(rho)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_time_limit_ms(mut self, ms: u64) -> Self {
        self.time_limit_ms = ms;
        self
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// Complete unless `timed_out`.
    pub colouring: PartialColouring,
    pub happy_count: usize,
    pub elapsed_ms: f64,
    pub timed_out: bool,
    /// Number of neighbour inspections made while choosing colours.
    pub work_counter: u64,
}

/// Wall-clock budget polled between outer-loop iterations.
pub(crate) struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    pub(crate) fn start(time_limit_ms: u64) -> Self {
        Deadline {
            start: Instant::now(),
            limit: (time_limit_ms > 0).then(|| Duration::from_millis(time_limit_ms)),
        }
    }

    pub(crate) fn expired(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() >= l)
    }

    pub(crate) fn elapsed_ms(&self) -> f64 {
        self.start.elapsed().as_secs_f64() * 1e3
    }
}

pub(crate) fn check_k(partial: &PartialColouring) -> Result<()> {
    if partial.k() == 0 {
        return Err(Error::param("at least one colour is required (k = 0)"));
    }
    Ok(())
}

/// Index of the first maximum among `values[1..]`, i.e. the lowest colour
/// attaining the maximum. `values[0]` is ignored.
pub(crate) fn lowest_argmax(values: &[usize]) -> Option<Colour> {
    let mut best: Option<(Colour, usize)> = None;
    for (c, &v) in values.iter().enumerate().skip(1) {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((c as Colour, v));
        }
    }
    best.map(|(c, _)| c)
}

/// Heuristics selectable from the command line and the experiment runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    Ngc,
    Lmc,
    Growth,
    /// The community-induced colouring, reported as a pseudo-solver.
    Community,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Greedy,
        Algorithm::Ngc,
        Algorithm::Lmc,
        Algorithm::Growth,
        Algorithm::Community,
        Algorithm::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Ngc => "ngc",
            Algorithm::Lmc => "lmc",
            Algorithm::Growth => "growth",
            Algorithm::Community => "community",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::param(format!(
                    "unknown algorithm {s:?}; expected one of greedy, ngc, lmc, growth, community, oracle"
                ))
            })
    }
}
