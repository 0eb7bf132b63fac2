//! Immutable simple undirected graphs in compressed adjacency form.

use crate::error::{Error, Result};

/// Vertex identifier. Internally 0-based.
pub type Vertex = u32;

/// A simple undirected graph stored as offsets into a flat neighbour array.
///
/// Neighbour lists are sorted ascending, contain no duplicates and no
/// self-loops, and every edge appears in both endpoint lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbours: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Duplicate edges (in either orientation) are merged. Self-loops and
    /// endpoints `>= n` are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if n > Vertex::MAX as usize {
            return Err(Error::param(format!("graph too large: {n} vertices")));
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w as usize,
                        n,
                    });
                }
            }
            if u == v {
                return Err(Error::param(format!("self-loop on vertex {u}")));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbours = vec![0; offsets[n]];
        for &(u, v) in edges {
            neighbours[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbours[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }

        // Sort and dedup each list, then compact.
        let mut compact = Vec::with_capacity(neighbours.len());
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        for v in 0..n {
            let list = &mut neighbours[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            let start = compact.len();
            for &w in list.iter() {
                if compact.len() == start || *compact.last().unwrap() != w {
                    compact.push(w);
                }
            }
            new_offsets.push(compact.len());
        }
        compact.shrink_to_fit();

        Ok(Graph {
            offsets: new_offsets,
            neighbours: compact,
        })
    }

    /// Builds a graph from sorted, symmetric, duplicate-free adjacency lists
    /// produced internally. Callers must uphold the invariants.
    pub(crate) fn from_sorted_adjacency(offsets: Vec<usize>, neighbours: Vec<Vertex>) -> Self {
        debug_assert_eq!(*offsets.last().unwrap_or(&0), neighbours.len());
        Graph {
            offsets,
            neighbours,
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.neighbours.len() / 2
    }

    #[inline]
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.neighbours[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbours(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbours(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v as usize,
                n: self.n(),
            })
        }
    }
}
