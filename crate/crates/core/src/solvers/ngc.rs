use crate::colouring::{happy_count, PartialColouring, UNCOLOURED};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

use super::greedy::score_single_colour_completions;
use super::{check_k, lowest_argmax, Deadline, SolveResult, SolverConfig};

/// Neighbour greedy colouring.
///
/// Each round scores the `k` single-colour completions exactly like the
/// greedy heuristic, then colours only the uncoloured neighbours of the
/// winning colour class. When the winner has no uncoloured neighbours the
/// round is rescored over colours that do; if no coloured vertex touches an
/// uncoloured one, the remainder takes the winning colour in bulk.
pub fn ngc(
    graph: &Graph,
    partial: &PartialColouring,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_k(partial)?;
    partial.check_len(graph)?;
    let deadline = Deadline::start(config.time_limit_ms);
    let k = partial.k();
    let mut colours = partial.as_slice().to_vec();
    let mut uncoloured: Vec<Vertex> = partial.uncoloured_vertices().collect();
    let mut work = 0;
    let mut timed_out = false;

    while !uncoloured.is_empty() {
        let Some(scores) = score_single_colour_completions(
            graph,
            &mut colours,
            &uncoloured,
            k,
            config.rho,
            &deadline,
            &mut work,
        ) else {
            timed_out = true;
            break;
        };
        let best = lowest_argmax(&scores).expect("k >= 1");

        // Which colour classes currently touch an uncoloured vertex.
        let mut touches = vec![false; k as usize + 1];
        for &u in &uncoloured {
            for &w in graph.neighbours(u) {
                touches[colours[w as usize] as usize] = true;
            }
            work += graph.degree(u) as u64;
        }

        let chosen = if touches[best as usize] {
            Some(best)
        } else {
            let restricted: Vec<usize> = scores
                .iter()
                .enumerate()
                .map(|(c, &s)| if c > 0 && touches[c] { s + 1 } else { 0 })
                .collect();
            match lowest_argmax(&restricted) {
                Some(c) if restricted[c as usize] > 0 => Some(c),
                _ => None,
            }
        };

        match chosen {
            Some(c) => {
                let temp: Vec<Vertex> = uncoloured
                    .iter()
                    .copied()
                    .filter(|&u| {
                        graph
                            .neighbours(u)
                            .iter()
                            .any(|&w| colours[w as usize] == c)
                    })
                    .collect();
                for &u in &temp {
                    colours[u as usize] = c;
                }
                uncoloured.retain(|&u| colours[u as usize] == UNCOLOURED);
            }
            None => {
                for &u in &uncoloured {
                    colours[u as usize] = best;
                }
                uncoloured.clear();
            }
        }
    }

    let colouring = PartialColouring::from_vec(colours, k)?;
    Ok(SolveResult {
        happy_count: happy_count(graph, colouring.as_slice(), config.rho),
        colouring,
        elapsed_ms: deadline.elapsed_ms(),
        timed_out,
        work_counter: work,
    })
}
