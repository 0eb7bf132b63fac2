//! Seeded stochastic block model instances G(n, k, p, q).
//!
//! Randomness comes from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64`.
//! Edge sampling uses stream 0 of that generator and precolouring uses
//! stream 1, so the two can be reproduced independently. Unordered pairs
//! `(u, v)`, `u < v`, are visited in lexicographic order and each consumes
//! exactly one uniform `f64` in `[0, 1)`; the edge is present when the
//! variate is below `p` (same community) or `q` (different communities).

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, PartialColouring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

const EDGE_STREAM: u64 = 0;
const PRECOLOUR_STREAM: u64 = 1;

/// Parameters of one generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SbmParams {
    n: usize,
    k: u32,
    p: f64,
    q: f64,
    pcc: usize,
    seed: u64,
}

impl SbmParams {
    /// Requires `0 < q < p <= 1`, `2 <= k <= n` and `pcc <= n / k`.
    pub fn new(n: usize, k: u32, p: f64, q: f64, pcc: usize, seed: u64) -> Result<Self> {
        if !(q > 0.0 && q < p && p <= 1.0) {
            return Err(Error::param(format!(
                "edge probabilities must satisfy 0 < q < p <= 1 (got p={p}, q={q})"
            )));
        }
        if k < 2 {
            return Err(Error::param(format!(
                "need at least 2 communities (got k={k})"
            )));
        }
        Self::relaxed(n, k, p, q, pcc, seed)
    }

    /// Like [`SbmParams::new`] but accepts any `p, q ∈ [0, 1]` and `k >= 1`.
    ///
    /// Useful for fixtures at the deterministic endpoints (`q = 0`,
    /// `p = q = 1`); not a valid model instance in general.
    pub fn relaxed(n: usize, k: u32, p: f64, q: f64, pcc: usize, seed: u64) -> Result<Self> {
        if !((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&q)) {
            return Err(Error::param(format!(
                "edge probabilities must lie in [0, 1] (got p={p}, q={q})"
            )));
        }
        if k == 0 || k as usize > n {
            return Err(Error::param(format!("need 1 <= k <= n (got k={k}, n={n})")));
        }
        if n > Vertex::MAX as usize {
            return Err(Error::param(format!("too many vertices: {n}")));
        }
        let smallest = n / k as usize;
        if pcc > smallest {
            return Err(Error::param(format!(
                "pcc={pcc} exceeds the smallest community size {smallest}"
            )));
        }
        Ok(SbmParams {
            n,
            k,
            p,
            q,
            pcc,
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn pcc(&self) -> usize {
        self.pcc
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Ground-truth community label per vertex, in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    labels: Vec<Colour>,
    k: u32,
}

impl CommunityAssignment {
    /// Contiguous blocks: the first `n mod k` communities get `⌈n/k⌉`
    /// vertices, the rest `⌊n/k⌋`.
    pub fn contiguous(n: usize, k: u32) -> Self {
        let k_us = k as usize;
        let (base, extra) = (n / k_us, n % k_us);
        let mut labels = Vec::with_capacity(n);
        for c in 0..k_us {
            let size = base + usize::from(c < extra);
            labels.extend(std::iter::repeat_n(c as Colour + 1, size));
        }
        CommunityAssignment { labels, k }
    }

    pub fn from_vec(labels: Vec<Colour>, k: u32) -> Result<Self> {
        if let Some((v, &c)) = labels.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(Error::param(format!(
                "vertex {v} has community {c}, expected 1..={k}"
            )));
        }
        Ok(CommunityAssignment { labels, k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Colour {
        self.labels[v as usize]
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.labels
    }

    /// Vertices of each community, index `c - 1` for community `c`.
    pub fn members(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.k as usize];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c as usize - 1].push(v as Vertex);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members().iter().map(Vec::len).collect()
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples the graph and its contiguous community assignment.
pub fn sample_graph(params: &SbmParams) -> (Graph, CommunityAssignment) {
    let n = params.n;
    let assignment = CommunityAssignment::contiguous(n, params.k);
    let labels = assignment.as_slice();
    let mut rng = rng_for(params.seed, EDGE_STREAM);

    // Visiting pairs lexicographically appends neighbours in ascending order.
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for u in 0..n {
        let cu = labels[u];
        for v in (u + 1)..n {
            let prob = if labels[v] == cu { params.p } else { params.q };
            if rng.gen::<f64>() < prob {
                adjacency[u].push(v as Vertex);
                adjacency[v].push(u as Vertex);
            }
        }
    }

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let total: usize = adjacency.iter().map(Vec::len).sum();
    let mut neighbours = Vec::with_capacity(total);
    for list in adjacency {
        neighbours.extend_from_slice(&list);
        offsets.push(neighbours.len());
    }
    (
        Graph::from_sorted_adjacency(offsets, neighbours),
        assignment,
    )
}

/// Chooses `pcc` vertices per community uniformly without replacement and
/// colours each with its community label.
pub fn sample_precolouring(
    assignment: &CommunityAssignment,
    pcc: usize,
    seed: u64,
) -> Result<PartialColouring> {
    let members = assignment.members();
    if let Some(smallest) = members.iter().map(Vec::len).min() {
        if pcc > smallest {
            return Err(Error::param(format!(
                "pcc={pcc} exceeds the smallest community size {smallest}"
            )));
        }
    }
    let mut rng = rng_for(seed, PRECOLOUR_STREAM);
    let mut colouring = PartialColouring::uncoloured(assignment.len(), assignment.k());
    for (i, community) in members.iter().enumerate() {
        for j in index::sample(&mut rng, community.len(), pcc) {
            colouring.set(community[j], i as Colour + 1);
        }
    }
    Ok(colouring)
}

/// Generates graph, communities and precolouring from one parameter set.
pub fn generate(params: &SbmParams) -> Result<(Graph, CommunityAssignment, PartialColouring)> {
    let (graph, assignment) = sample_graph(params);
    let precolouring = sample_precolouring(&assignment, params.pcc, params.seed)?;
    Ok((graph, assignment, precolouring))
}

/// The colouring that gives every vertex its community label.
pub fn induced_colouring(assignment: &CommunityAssignment) -> PartialColouring {
    PartialColouring::from_vec(assignment.as_slice().to_vec(), assignment.k())
        .expect("community labels lie in 1..=k")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        assert!(SbmParams::new(10, 2, 0.5, 0.5, 0, 0).is_err());
        assert!(SbmParams::new(10, 2, 0.5, 0.0, 0, 0).is_err());
        assert!(SbmParams::new(10, 2, 1.1, 0.1, 0, 0).is_err());
        assert!(SbmParams::new(10, 1, 0.5, 0.1, 0, 0).is_err());
        assert!(SbmParams::new(10, 11, 0.5, 0.1, 0, 0).is_err());
        assert!(SbmParams::new(10, 3, 0.5, 0.1, 4, 0).is_err());
        assert!(SbmParams::new(10, 3, 0.5, 0.1, 3, 0).is_ok());
        assert!(SbmParams::relaxed(4, 2, 1.0, 0.0, 0, 0).is_ok());
    }

    #[test]
    fn contiguous_blocks() {
        let a = CommunityAssignment::contiguous(11, 3);
        assert_eq!(a.as_slice(), &[1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3]);
        assert_eq!(a.sizes(), vec![4, 4, 3]);
    }

    #[test]
    fn two_disjoint_k2() {
        let params = SbmParams::relaxed(4, 2, 1.0, 0.0, 0, 3).unwrap();
        let (g, _) = sample_graph(&params);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(2, 3));
    }

    #[test]
    fn complete_k5() {
        let params = SbmParams::relaxed(5, 2, 1.0, 1.0, 0, 9).unwrap();
        assert_eq!(sample_graph(&params).0.m(), 10);
    }

    #[test]
    fn precolouring_one_per_community() {
        let a = CommunityAssignment::contiguous(9, 3);
        let c = sample_precolouring(&a, 1, 5).unwrap();
        let coloured: Vec<_> = c
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .collect();
        assert_eq!(coloured.len(), 3);
        for (v, &col) in coloured {
            assert_eq!(col, a.get(v as Vertex));
        }
        assert_eq!(sample_precolouring(&a, 0, 5).unwrap().uncoloured_count(), 9);
        assert!(sample_precolouring(&a, 4, 5).is_err());
    }

    #[test]
    fn induced_identity() {
        let a = CommunityAssignment::from_vec(vec![1, 1, 2, 2], 2).unwrap();
        assert_eq!(induced_colouring(&a).as_slice(), &[1, 1, 2, 2]);
        assert!(CommunityAssignment::from_vec(vec![0, 1], 2).is_err());
    }
}
