//! Partial colourings, the happiness fraction and ρ-happiness evaluation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Colour index. `0` means uncoloured, `1..=k` are proper colours.
pub type Colour = u32;

pub const UNCOLOURED: Colour = 0;

const MAX_FRACTION_DIGITS: u32 = 18;

/// Happiness fraction ρ ∈ [0, 1], held as an exact rational.
///
/// Thresholds `⌈ρ·deg⌉` are computed with integer arithmetic so that values
/// such as `0.3 * 10` land exactly on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rho {
    num: u64,
    den: u64,
}

impl Rho {
    pub const ZERO: Rho = Rho { num: 0, den: 1 };
    pub const ONE: Rho = Rho { num: 1, den: 1 };

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::param(format!("rho {num}/{den} not in [0, 1]")));
        }
        let g = gcd(num, den);
        Ok(Rho {
            num: num / g,
            den: den / g,
        })
    }

    /// Converts through the shortest decimal representation of `x`, so
    /// `Rho::new(0.3)` is exactly 3/10.
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || !(0.0..=1.0).contains(&x) {
            return Err(Error::param(format!("rho {x} not in [0, 1]")));
        }
        // Display prints the shortest round-trip digits without an exponent.
        format!("{x}").parse()
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌈ρ·degree⌉`.
    #[inline]
    pub fn threshold(&self, degree: usize) -> usize {
        let prod = self.num as u128 * degree as u128;
        prod.div_ceil(self.den as u128) as usize
    }
}

impl FromStr for Rho {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::param(format!("cannot parse rho from {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Rho::from_ratio(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac = frac.trim_end_matches('0');
        let (kept, rest) = frac.split_at(frac.len().min(MAX_FRACTION_DIGITS as usize));
        let den = 10u64.pow(kept.len() as u32);
        let mut num: u64 = if kept.is_empty() {
            0
        } else {
            kept.parse().map_err(|_| bad())?
        };
        // Digits beyond the kept precision round upwards, which preserves
        // every ceiling threshold for realistic degrees.
        if rest.bytes().any(|b| b != b'0') {
            num += 1;
        }
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(num))
            .ok_or_else(bad)?;
        Rho::from_ratio(num, den)
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_f64())
    }
}

impl Serialize for Rho {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Rho {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(d)?;
        Rho::new(x).map_err(serde::de::Error::custom)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Per-vertex colours in `{0, 1, …, k}` where `0` marks an uncoloured vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColouring {
    colours: Vec<Colour>,
    k: u32,
}

impl PartialColouring {
    /// All `n` vertices uncoloured.
    pub fn uncoloured(n: usize, k: u32) -> Self {
        PartialColouring {
            colours: vec![UNCOLOURED; n],
            k,
        }
    }

    pub fn from_vec(colours: Vec<Colour>, k: u32) -> Result<Self> {
        if let Some((v, &c)) = colours.iter().enumerate().find(|(_, &c)| c > k) {
            return Err(Error::param(format!(
                "vertex {v} has colour {c} but only {k} colours are permitted"
            )));
        }
        Ok(PartialColouring { colours, k })
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Colour {
        self.colours[v as usize]
    }

    #[inline]
    pub fn is_coloured(&self, v: Vertex) -> bool {
        self.colours[v as usize] != UNCOLOURED
    }

    /// Panics if `c > k`.
    #[inline]
    pub fn set(&mut self, v: Vertex, c: Colour) {
        assert!(c <= self.k, "colour {c} exceeds k = {}", self.k);
        self.colours[v as usize] = c;
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.colours
    }

    pub fn into_vec(self) -> Vec<Colour> {
        self.colours
    }

    pub fn is_complete(&self) -> bool {
        self.colours.iter().all(|&c| c != UNCOLOURED)
    }

    pub fn uncoloured_count(&self) -> usize {
        self.colours.iter().filter(|&&c| c == UNCOLOURED).count()
    }

    pub fn uncoloured_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colours
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == UNCOLOURED)
            .map(|(v, _)| v as Vertex)
    }

    /// True when every coloured vertex here has the same colour in `other`.
    pub fn is_extended_by(&self, other: &PartialColouring) -> bool {
        self.len() == other.len()
            && self
                .colours
                .iter()
                .zip(&other.colours)
                .all(|(&a, &b)| a == UNCOLOURED || a == b)
    }

    pub(crate) fn check_len(&self, graph: &Graph) -> Result<()> {
        if self.len() != graph.n() {
            return Err(Error::contract(format!(
                "colouring has {} entries but graph has {} vertices",
                self.len(),
                graph.n()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HappinessReport {
    pub happy: Vec<bool>,
    pub count: usize,
    pub ratio: f64,
}

/// `|N(v) ∩ V_{c(v)}|`, the number of neighbours sharing `v`'s colour.
pub fn same_colour_degree(graph: &Graph, colouring: &PartialColouring, v: Vertex) -> Result<usize> {
    graph.check_vertex(v)?;
    colouring.check_len(graph)?;
    let c = colouring.get(v);
    if c == UNCOLOURED {
        return Err(Error::contract(format!("vertex {v} is uncoloured")));
    }
    Ok(same_colour_count(graph, colouring.as_slice(), v, c))
}

#[inline]
pub(crate) fn same_colour_count(graph: &Graph, colours: &[Colour], v: Vertex, c: Colour) -> usize {
    graph
        .neighbours(v)
        .iter()
        .filter(|&&u| colours[u as usize] == c)
        .count()
}

/// Whether `v` has at least `⌈ρ·deg(v)⌉` neighbours of its own colour.
pub fn is_rho_happy(
    graph: &Graph,
    colouring: &PartialColouring,
    v: Vertex,
    rho: Rho,
) -> Result<bool> {
    let same = same_colour_degree(graph, colouring, v)?;
    Ok(same >= rho.threshold(graph.degree(v)))
}

#[inline]
pub(crate) fn happy_at(graph: &Graph, colours: &[Colour], v: Vertex, rho: Rho) -> bool {
    let c = colours[v as usize];
    c != UNCOLOURED && same_colour_count(graph, colours, v, c) >= rho.threshold(graph.degree(v))
}

/// Number of ρ-happy vertices; uncoloured vertices never count.
pub(crate) fn happy_count(graph: &Graph, colours: &[Colour], rho: Rho) -> usize {
    graph
        .vertices()
        .filter(|&v| happy_at(graph, colours, v, rho))
        .count()
}

/// Evaluates every vertex. Uncoloured vertices are reported unhappy.
pub fn happiness(graph: &Graph, colouring: &PartialColouring, rho: Rho) -> Result<HappinessReport> {
    colouring.check_len(graph)?;
    let colours = colouring.as_slice();
    let happy: Vec<bool> = graph
        .vertices()
        .map(|v| happy_at(graph, colours, v, rho))
        .collect();
    let count = happy.iter().filter(|&&h| h).count();
    let ratio = if happy.is_empty() {
        1.0
    } else {
        count as f64 / happy.len() as f64
    };
    Ok(HappinessReport {
        happy,
        count,
        ratio,
    })
}
