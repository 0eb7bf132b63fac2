use crate::colouring::{happy_count, PartialColouring, Rho};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest number of completions the oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub colouring: PartialColouring,
    pub max_happy: usize,
}

/// Exhaustive search over every completion of `partial` with colours
/// `1..=k`. Returns the lexicographically smallest colouring among those
/// with the most ρ-happy vertices.
pub fn exact_oracle(
    graph: &Graph,
    partial: &PartialColouring,
    rho: Rho,
    k: u32,
) -> Result<OracleResult> {
    partial.check_len(graph)?;
    if k == 0 {
        return Err(Error::param("at least one colour is required (k = 0)"));
    }
    if let Some(c) = partial.as_slice().iter().find(|&&c| c > k) {
        return Err(Error::param(format!("precolour {c} exceeds k = {k}")));
    }
    let free: Vec<Vertex> = partial.uncoloured_vertices().collect();
    let completions = (k as u64).checked_pow(free.len() as u32);
    if completions.is_none_or(|c| c > ORACLE_LIMIT) {
        return Err(Error::OracleTooLarge {
            uncoloured: free.len(),
            k,
            limit: ORACLE_LIMIT,
        });
    }

    let mut colours = partial.as_slice().to_vec();
    for &v in &free {
        colours[v as usize] = 1;
    }
    let mut best = colours.clone();
    let mut best_happy = happy_count(graph, &colours, rho);

    // Odometer with the highest-id free vertex as the fastest digit, which
    // walks completions in lexicographic order.
    loop {
        let mut i = free.len();
        loop {
            if i == 0 {
                let colouring = PartialColouring::from_vec(best, k)?;
                return Ok(OracleResult {
                    colouring,
                    max_happy: best_happy,
                });
            }
            i -= 1;
            let slot = &mut colours[free[i] as usize];
            if *slot < k {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
        let h = happy_count(graph, &colours, rho);
        if h > best_happy {
            best_happy = h;
            best.copy_from_slice(&colours);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_monochromatic() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = exact_oracle(&g, &PartialColouring::uncoloured(3, 2), Rho::ONE, 2).unwrap();
        assert_eq!(r.max_happy, 3);
        assert_eq!(r.colouring.as_slice(), &[1, 1, 1]);
    }

    #[test]
    fn path_optimum_is_two() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = PartialColouring::from_vec(vec![1, 0, 0, 2], 2).unwrap();
        let r = exact_oracle(&g, &c, "0.6".parse().unwrap(), 2).unwrap();
        assert_eq!(r.max_happy, 2);
        assert_eq!(r.colouring.as_slice(), &[1, 1, 1, 2]);
    }

    #[test]
    fn fully_precoloured() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let c = PartialColouring::from_vec(vec![1, 2], 2).unwrap();
        let r = exact_oracle(&g, &c, Rho::ONE, 2).unwrap();
        assert_eq!(r.max_happy, 0);
        assert_eq!(r.colouring, c);
    }

    #[test]
    fn refuses_large_instances() {
        let g = Graph::from_edges(30, &[]).unwrap();
        let err = exact_oracle(&g, &PartialColouring::uncoloured(30, 2), Rho::ONE, 2).unwrap_err();
        assert!(matches!(err, Error::OracleTooLarge { uncoloured: 30, .. }));
        assert_eq!(err.exit_code(), 3);
    }
}
