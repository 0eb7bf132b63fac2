use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::colouring::{happy_count, Colour, PartialColouring, UNCOLOURED};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

use super::{check_k, lowest_argmax, Deadline, SolveResult, SolverConfig};

/// Uncoloured vertices with at least one coloured neighbour.
enum Frontier {
    /// Lowest id first.
    Ordered(BinaryHeap<Reverse<Vertex>>),
    /// Uniform choice.
    Random {
        items: Vec<Vertex>,
        rng: Box<ChaCha8Rng>,
    },
}

impl Frontier {
    fn push(&mut self, v: Vertex) {
        match self {
            Frontier::Ordered(heap) => heap.push(Reverse(v)),
            Frontier::Random { items, .. } => items.push(v),
        }
    }

    fn pop(&mut self) -> Option<Vertex> {
        match self {
            Frontier::Ordered(heap) => heap.pop().map(|Reverse(v)| v),
            Frontier::Random { items, rng } => {
                if items.is_empty() {
                    return None;
                }
                let i = rng.gen_range(0..items.len());
                Some(items.swap_remove(i))
            }
        }
    }
}

/// Local maximal colouring.
///
/// Repeatedly takes an uncoloured vertex adjacent to the coloured set and
/// gives it the colour most frequent among its coloured neighbours (lowest
/// colour on ties). If no uncoloured vertex has a coloured neighbour, an
/// arbitrary uncoloured vertex takes the most frequent colour so far.
///
/// `work_counter` counts neighbour inspections; each vertex's list is read
/// once, so it never exceeds `2m`, plus one per fallback pick.
pub fn lmc(
    graph: &Graph,
    partial: &PartialColouring,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_k(partial)?;
    partial.check_len(graph)?;
    let deadline = Deadline::start(config.time_limit_ms);
    let n = graph.n();
    let k = partial.k() as usize;
    let mut colours = partial.as_slice().to_vec();
    let mut work = 0u64;

    let mut in_frontier = vec![false; n];
    let mut frontier = if config.deterministic {
        Frontier::Ordered(BinaryHeap::new())
    } else {
        Frontier::Random {
            items: Vec::new(),
            rng: Box::new(config.rng()),
        }
    };
    let mut class_size = vec![0usize; k + 1];

    for v in graph.vertices() {
        let c = colours[v as usize];
        if c == UNCOLOURED {
            continue;
        }
        class_size[c as usize] += 1;
        work += graph.degree(v) as u64;
        for &u in graph.neighbours(v) {
            if colours[u as usize] == UNCOLOURED && !in_frontier[u as usize] {
                in_frontier[u as usize] = true;
                frontier.push(u);
            }
        }
    }

    // Uncoloured vertices in id order, used only by the fallback.
    let mut next_unvisited = 0usize;
    let mut remaining = colours.iter().filter(|&&c| c == UNCOLOURED).count();
    let mut tally = vec![0usize; k + 1];
    let mut fresh: Vec<Vertex> = Vec::new();
    let mut timed_out = false;

    while remaining > 0 {
        if deadline.expired() {
            timed_out = true;
            break;
        }
        let (v, colour) = match frontier.pop() {
            Some(v) => {
                // One pass over N(v): tally colours and remember uncoloured
                // neighbours for the frontier.
                fresh.clear();
                for &u in graph.neighbours(v) {
                    let cu = colours[u as usize];
                    if cu == UNCOLOURED {
                        fresh.push(u);
                    } else {
                        tally[cu as usize] += 1;
                    }
                }
                work += graph.degree(v) as u64;
                let colour = lowest_argmax(&tally).expect("k >= 1");
                tally.iter_mut().for_each(|t| *t = 0);
                (v, colour)
            }
            None => {
                let v = pick_unreached(&colours, &mut next_unvisited, &mut frontier);
                work += 1;
                fresh.clear();
                fresh.extend_from_slice(graph.neighbours(v));
                work += graph.degree(v) as u64;
                (v, lowest_argmax(&class_size).expect("k >= 1") as Colour)
            }
        };
        colours[v as usize] = colour;
        class_size[colour as usize] += 1;
        remaining -= 1;
        for &u in &fresh {
            if colours[u as usize] == UNCOLOURED && !in_frontier[u as usize] {
                in_frontier[u as usize] = true;
                frontier.push(u);
            }
        }
    }

    let colouring = PartialColouring::from_vec(colours, partial.k())?;
    Ok(SolveResult {
        happy_count: happy_count(graph, colouring.as_slice(), config.rho),
        colouring,
        elapsed_ms: deadline.elapsed_ms(),
        timed_out,
        work_counter: work,
    })
}

/// Chooses an uncoloured vertex when the frontier is empty: lowest id in
/// deterministic mode, otherwise uniform over the uncoloured vertices.
fn pick_unreached(
    colours: &[Colour],
    next_unvisited: &mut usize,
    frontier: &mut Frontier,
) -> Vertex {
    if let Frontier::Random { rng, .. } = frontier {
        let pool: Vec<usize> = (0..colours.len())
            .filter(|&v| colours[v] == UNCOLOURED)
            .collect();
        return pool[rng.gen_range(0..pool.len())] as Vertex;
    }
    while colours[*next_unvisited] != UNCOLOURED {
        *next_unvisited += 1;
    }
    *next_unvisited as Vertex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::Rho;

    fn det() -> SolverConfig {
        SolverConfig::deterministic(Rho::ONE)
    }

    #[test]
    fn path_trace() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = PartialColouring::from_vec(vec![1, 0, 0, 2], 2).unwrap();
        let r = lmc(&g, &c, &det()).unwrap();
        assert_eq!(r.colouring.as_slice(), &[1, 1, 1, 2]);
        assert!(r.work_counter <= 2 * g.m() as u64 + g.n() as u64);
    }

    #[test]
    fn triangle_tie_takes_lowest() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = PartialColouring::from_vec(vec![1, 2, 0], 2).unwrap();
        assert_eq!(lmc(&g, &c, &det()).unwrap().colouring.get(2), 1);
    }

    #[test]
    fn fully_precoloured_is_unchanged() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = PartialColouring::from_vec(vec![2, 1, 2], 2).unwrap();
        assert_eq!(lmc(&g, &c, &det()).unwrap().colouring, c);
    }

    #[test]
    fn empty_precolouring_uses_colour_one() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = PartialColouring::uncoloured(3, 3);
        let r = lmc(&g, &c, &SolverConfig::new(Rho::ONE).with_seed(4)).unwrap();
        assert_eq!(r.colouring.as_slice(), &[1, 1, 1]);
    }

    #[test]
    fn disconnected_component_takes_majority_colour() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let c = PartialColouring::from_vec(vec![2, 0, 2, 0, 0], 2).unwrap();
        let r = lmc(&g, &c, &det()).unwrap();
        assert_eq!(r.colouring.as_slice(), &[2, 2, 2, 2, 2]);
    }

    #[test]
    fn seeded_runs_repeat() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let c = PartialColouring::from_vec(vec![1, 0, 0, 0, 0, 2], 2).unwrap();
        let cfg = SolverConfig::new(Rho::ONE).with_seed(17);
        assert_eq!(
            lmc(&g, &c, &cfg).unwrap().colouring,
            lmc(&g, &c, &cfg).unwrap().colouring
        );
    }
}
