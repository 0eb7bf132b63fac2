use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::colouring::{happy_count, Colour, PartialColouring, Rho, UNCOLOURED};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

use super::{check_k, lowest_argmax, Deadline, SolveResult, SolverConfig};

/// Growth classification of a vertex under a partial colouring.
///
/// Coloured vertices are `H`, `U` or `P`; uncoloured ones are `Lp`, `Lh`,
/// `Lu` or `Lf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexClass {
    /// Coloured and ρ-happy.
    H,
    /// Coloured and can no longer become happy: same-colour plus uncoloured
    /// neighbours fall short of `⌈ρ·deg⌉`.
    U,
    /// Coloured, not yet happy, but enough uncoloured neighbours remain.
    P,
    /// Uncoloured and adjacent to a P-vertex.
    Lp,
    /// Uncoloured, no P-neighbour, adjacent to an H or U vertex, and able to
    /// become happy.
    Lh,
    /// Like `Lh` but unable to become happy.
    Lu,
    /// Uncoloured with no coloured neighbour.
    Lf,
}

impl VertexClass {
    pub fn is_coloured_class(self) -> bool {
        matches!(self, VertexClass::H | VertexClass::U | VertexClass::P)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClasses {
    pub classes: Vec<VertexClass>,
    pub p: Vec<Vertex>,
    pub l_h: Vec<Vertex>,
    pub l_u: Vec<Vertex>,
    pub l_f: Vec<Vertex>,
}

impl VertexClasses {
    pub fn get(&self, v: Vertex) -> VertexClass {
        self.classes[v as usize]
    }

    pub fn count(&self, class: VertexClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }
}

/// Scratch space reused across reclassifications.
struct Classifier {
    tally: Vec<usize>,
    touched: Vec<Colour>,
}

impl Classifier {
    fn new(k: u32) -> Self {
        Classifier {
            tally: vec![0; k as usize + 1],
            touched: Vec::new(),
        }
    }

    fn classify(
        &mut self,
        graph: &Graph,
        colours: &[Colour],
        rho: Rho,
        work: &mut u64,
    ) -> VertexClasses {
        let n = graph.n();
        let mut classes = vec![VertexClass::Lf; n];
        let mut p = Vec::new();

        for v in graph.vertices() {
            let c = colours[v as usize];
            if c == UNCOLOURED {
                continue;
            }
            let (mut same, mut free) = (0, 0);
            for &u in graph.neighbours(v) {
                match colours[u as usize] {
                    UNCOLOURED => free += 1,
                    cu if cu == c => same += 1,
                    _ => {}
                }
            }
            *work += graph.degree(v) as u64;
            let need = rho.threshold(graph.degree(v));
            classes[v as usize] = if same >= need {
                VertexClass::H
            } else if same + free < need {
                VertexClass::U
            } else {
                p.push(v);
                VertexClass::P
            };
        }

        let (mut l_h, mut l_u, mut l_f) = (Vec::new(), Vec::new(), Vec::new());
        for v in graph.vertices() {
            if colours[v as usize] != UNCOLOURED {
                continue;
            }
            let (mut adj_p, mut adj_hu, mut free) = (false, false, 0);
            for &u in graph.neighbours(v) {
                let cu = colours[u as usize];
                if cu == UNCOLOURED {
                    free += 1;
                    continue;
                }
                match classes[u as usize] {
                    VertexClass::P => adj_p = true,
                    _ => adj_hu = true,
                }
                if self.tally[cu as usize] == 0 {
                    self.touched.push(cu);
                }
                self.tally[cu as usize] += 1;
            }
            *work += graph.degree(v) as u64;
            let best = self
                .touched
                .iter()
                .map(|&c| self.tally[c as usize])
                .max()
                .unwrap_or(0);
            for &c in &self.touched {
                self.tally[c as usize] = 0;
            }
            self.touched.clear();

            classes[v as usize] = if adj_p {
                VertexClass::Lp
            } else if adj_hu {
                if free + best >= rho.threshold(graph.degree(v)) {
                    l_h.push(v);
                    VertexClass::Lh
                } else {
                    l_u.push(v);
                    VertexClass::Lu
                }
            } else {
                l_f.push(v);
                VertexClass::Lf
            };
        }

        VertexClasses {
            classes,
            p,
            l_h,
            l_u,
            l_f,
        }
    }
}

/// Labels every vertex with its growth class. Thresholds use `⌈ρ·deg⌉`.
pub fn classify_vertices(
    graph: &Graph,
    partial: &PartialColouring,
    rho: Rho,
) -> Result<VertexClasses> {
    partial.check_len(graph)?;
    let mut work = 0;
    Ok(Classifier::new(partial.k()).classify(graph, partial.as_slice(), rho, &mut work))
}

struct Picker<R> {
    rng: Option<R>,
}

impl<R: Rng> Picker<R> {
    /// Lowest element of a sorted list, or a uniform one.
    fn one(&mut self, sorted: &[Vertex]) -> Vertex {
        match &mut self.rng {
            None => sorted[0],
            Some(rng) => sorted[rng.gen_range(0..sorted.len())],
        }
    }

    /// `count` elements of a sorted list: the lowest ones, or a uniform subset.
    fn some(&mut self, sorted: &[Vertex], count: usize) -> Vec<Vertex> {
        let count = count.min(sorted.len());
        match &mut self.rng {
            None => sorted[..count].to_vec(),
            Some(rng) => index::sample(rng, sorted.len(), count)
                .into_iter()
                .map(|i| sorted[i])
                .collect(),
        }
    }
}

/// Growth heuristic for soft happy colouring.
///
/// Classes are recomputed from scratch after every batch of assignments.
/// Priority order per step:
///
/// 1. a P-vertex `v` colours just enough uncoloured neighbours with `c(v)`
///    to become happy;
/// 2. otherwise an Lh-vertex takes its most frequent neighbouring colour and
///    colours enough uncoloured neighbours to become happy;
/// 3. otherwise the same for an Lu-vertex, with the neighbour count capped
///    at what is available;
/// 4. otherwise (only Lf left, i.e. uncoloured components without any
///    colour) one Lf-vertex takes the most frequent colour so far.
pub fn growth_soft_mhv(
    graph: &Graph,
    partial: &PartialColouring,
    config: &SolverConfig,
) -> Result<SolveResult> {
    check_k(partial)?;
    partial.check_len(graph)?;
    let deadline = Deadline::start(config.time_limit_ms);
    let rho = config.rho;
    let k = partial.k();
    let mut colours = partial.as_slice().to_vec();
    let mut classifier = Classifier::new(k);
    let mut picker = Picker {
        rng: (!config.deterministic).then(|| config.rng()),
    };
    let mut class_size = vec![0usize; k as usize + 1];
    for &c in &colours {
        class_size[c as usize] += 1;
    }
    let mut work = 0u64;
    let mut timed_out = false;
    let mut tally = vec![0usize; k as usize + 1];

    loop {
        let classes = classifier.classify(graph, &colours, rho, &mut work);
        let pending = classes.l_h.len() + classes.l_u.len() + classes.l_f.len();
        if classes.p.is_empty() && pending == 0 {
            break;
        }
        if deadline.expired() {
            timed_out = true;
            break;
        }

        let uncoloured_neighbours = |colours: &[Colour], v: Vertex| -> Vec<Vertex> {
            graph
                .neighbours(v)
                .iter()
                .copied()
                .filter(|&u| colours[u as usize] == UNCOLOURED)
                .collect()
        };

        if !classes.p.is_empty() {
            let v = picker.one(&classes.p);
            let c = colours[v as usize];
            let same = graph
                .neighbours(v)
                .iter()
                .filter(|&&u| colours[u as usize] == c)
                .count();
            let need = rho.threshold(graph.degree(v)) - same;
            let free = uncoloured_neighbours(&colours, v);
            debug_assert!(free.len() >= need);
            for u in picker.some(&free, need) {
                colours[u as usize] = c;
                class_size[c as usize] += 1;
            }
            debug_assert!(
                crate::colouring::happy_at(graph, &colours, v, rho),
                "P-vertex {v} not happy after its batch"
            );
            continue;
        }

        if let Some(list) = [&classes.l_h, &classes.l_u]
            .into_iter()
            .find(|l| !l.is_empty())
        {
            let v = picker.one(list);
            for &u in graph.neighbours(v) {
                tally[colours[u as usize] as usize] += 1;
            }
            tally[0] = 0;
            let c = lowest_argmax(&tally).expect("k >= 1");
            let same = tally[c as usize];
            tally.iter_mut().for_each(|t| *t = 0);

            colours[v as usize] = c;
            class_size[c as usize] += 1;
            let need = rho.threshold(graph.degree(v)).saturating_sub(same);
            let free = uncoloured_neighbours(&colours, v);
            for u in picker.some(&free, need) {
                colours[u as usize] = c;
                class_size[c as usize] += 1;
            }
            continue;
        }

        // Only uncoloured vertices without coloured neighbours remain.
        let v = picker.one(&classes.l_f);
        let c = lowest_argmax(&class_size).expect("k >= 1");
        colours[v as usize] = c;
        class_size[c as usize] += 1;
    }

    let colouring = PartialColouring::from_vec(colours, k)?;
    Ok(SolveResult {
        happy_count: happy_count(graph, colouring.as_slice(), rho),
        colouring,
        elapsed_ms: deadline.elapsed_ms(),
        timed_out,
        work_counter: work,
    })
}
