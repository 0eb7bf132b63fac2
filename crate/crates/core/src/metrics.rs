//! Evaluation of solver outputs: happiness and community agreement.

use serde::{Deserialize, Serialize};

use crate::colouring::{happy_count, PartialColouring, Rho};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::InstanceParams;
use crate::sbm::CommunityAssignment;
use crate::solvers::{Algorithm, SolveResult};
use crate::theory;

/// One result row. Field order matches the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub algo: Algorithm,
    pub n: usize,
    pub k: u32,
    pub p: f64,
    pub q: f64,
    pub pcc: usize,
    pub seed: u64,
    pub rho: f64,
    pub happy_count: usize,
    pub happy_ratio: f64,
    pub complete_happy: bool,
    pub community_accuracy: f64,
    pub elapsed_ms: f64,
    pub timed_out: bool,
    pub xi: f64,
    pub rho_below_xi: bool,
}

pub const CSV_HEADER: &str = "algo,n,k,p,q,pcc,seed,rho,happy_count,happy_ratio,complete_happy,community_accuracy,elapsed_ms,timed_out,xi,rho_below_xi";

/// Fraction of vertices whose colour equals their community label.
/// Uncoloured vertices count as disagreements.
pub fn community_accuracy(
    colouring: &PartialColouring,
    assignment: &CommunityAssignment,
) -> Result<f64> {
    if colouring.len() != assignment.len() {
        return Err(Error::contract(format!(
            "colouring has {} entries, assignment has {}",
            colouring.len(),
            assignment.len()
        )));
    }
    if colouring.is_empty() {
        return Ok(1.0);
    }
    let agree = colouring
        .as_slice()
        .iter()
        .zip(assignment.as_slice())
        .filter(|(c, a)| c == a)
        .count();
    Ok(agree as f64 / colouring.len() as f64)
}

/// Builds the result row for one solver run. The happiness is recomputed
/// from the colouring, and `xi` uses `ε = n⁻²`.
pub fn evaluate(
    graph: &Graph,
    assignment: &CommunityAssignment,
    algo: Algorithm,
    result: &SolveResult,
    rho: Rho,
    params: &InstanceParams,
) -> Result<EvalRecord> {
    result.colouring.check_len(graph)?;
    let n = graph.n();
    let happy = happy_count(graph, result.colouring.as_slice(), rho);
    let xi = theory::xi_default(n, params.k, params.p, params.q);
    Ok(EvalRecord {
        algo,
        n,
        k: params.k,
        p: params.p,
        q: params.q,
        pcc: params.pcc,
        seed: params.seed,
        rho: rho.as_f64(),
        happy_count: happy,
        happy_ratio: if n == 0 { 1.0 } else { happy as f64 / n as f64 },
        complete_happy: happy == n,
        community_accuracy: community_accuracy(&result.colouring, assignment)?,
        elapsed_ms: result.elapsed_ms,
        timed_out: result.timed_out,
        xi,
        rho_below_xi: rho.as_f64() < xi,
    })
}
