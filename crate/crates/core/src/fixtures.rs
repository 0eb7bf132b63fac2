//! Small hand-made instances used by tests and examples.

use crate::colouring::PartialColouring;
use crate::graph::{Graph, Vertex};
use crate::io::{Instance, InstanceParams};
use crate::sbm::CommunityAssignment;

/// Edges of the 14-vertex, three-community example graph, 1-based.
pub const FIG1_EDGES: [(Vertex, Vertex); 26] = [
    // community 1: vertices 1..=4
    (1, 2),
    (1, 3),
    (2, 3),
    (2, 4),
    (3, 4),
    // community 2: vertices 5..=9
    (5, 6),
    (5, 7),
    (5, 8),
    (5, 9),
    (6, 7),
    (7, 8),
    (7, 9),
    // community 3: vertices 10..=14
    (10, 11),
    (10, 12),
    (10, 14),
    (11, 12),
    (11, 13),
    (12, 13),
    (13, 14),
    // between communities
    (1, 12),
    (3, 8),
    (4, 5),
    (5, 14),
    (3, 13),
    (6, 10),
    (9, 11),
];

/// The example instance with communities {1–4}, {5–9}, {10–14} and no
/// precolouring. `p` and `q` record the observed intra- and inter-community
/// edge densities (19/26 and 7/65).
pub fn fig1() -> Instance {
    let edges: Vec<_> = FIG1_EDGES.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    let graph = Graph::from_edges(14, &edges).expect("fixture edges are valid");
    let mut labels = vec![1; 4];
    labels.extend([2; 5]);
    labels.extend([3; 5]);
    Instance {
        params: InstanceParams {
            n: 14,
            k: 3,
            p: 19.0 / 26.0,
            q: 7.0 / 65.0,
            pcc: 0,
            seed: 0,
        },
        graph,
        communities: CommunityAssignment::from_vec(labels, 3).expect("labels in 1..=3"),
        precolouring: PartialColouring::uncoloured(14, 3),
    }
}
