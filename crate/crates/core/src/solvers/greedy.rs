use crate::colouring::{happy_count, Colour, PartialColouring, Rho, UNCOLOURED};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

use super::{check_k, lowest_argmax, Deadline, SolveResult, SolverConfig};

/// Happy counts of the `k` single-colour completions of `colours`, where
/// `targets` are the vertices that receive the trial colour. Index 0 unused.
///
/// Returns `None` if the deadline expires before all colours are scored.
pub(super) fn score_single_colour_completions(
    graph: &Graph,
    colours: &mut [Colour],
    targets: &[Vertex],
    k: u32,
    rho: Rho,
    deadline: &Deadline,
    work: &mut u64,
) -> Option<Vec<usize>> {
    let mut scores = vec![0usize; k as usize + 1];
    for c in 1..=k {
        if deadline.expired() {
            for &v in targets {
                colours[v as usize] = UNCOLOURED;
            }
            return None;
        }
        for &v in targets {
            colours[v as usize] = c;
        }
        scores[c as usize] = happy_count(graph, colours, rho);
        *work += 2 * graph.m() as u64;
    }
    for &v in targets {
        colours[v as usize] = UNCOLOURED;
    }
    Some(scores)
}

/// Colours every uncoloured vertex with the single colour that maximises
/// the number of ρ-happy vertices, lowest colour on ties.
pub fn greedy_soft_mhv(
    graph: &Graph,
    partial: &PartialColouring,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_k(partial)?;
    partial.check_len(graph)?;
    let deadline = Deadline::start(config.time_limit_ms);
    let mut colouring = partial.clone();
    let mut colours = partial.as_slice().to_vec();
    let uncoloured: Vec<Vertex> = partial.uncoloured_vertices().collect();
    let mut work = 0;

    let mut timed_out = false;
    if !uncoloured.is_empty() {
        match score_single_colour_completions(
            graph,
            &mut colours,
            &uncoloured,
            partial.k(),
            config.rho,
            &deadline,
            &mut work,
        ) {
            Some(scores) => {
                let best = lowest_argmax(&scores).expect("k >= 1");
                for &v in &uncoloured {
                    colouring.set(v, best);
                }
            }
            None => timed_out = true,
        }
    }

    Ok(SolveResult {
        happy_count: happy_count(graph, colouring.as_slice(), config.rho),
        colouring,
        elapsed_ms: deadline.elapsed_ms(),
        timed_out,
        work_counter: work,
    })
}
