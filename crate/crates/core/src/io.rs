//! Instance files: DIMACS edge format with metadata comment lines.
//!
//! ```text
//! c happy-sbm v1
//! c params n=<n> k=<k> p=<p> q=<q> pcc=<pcc> seed=<seed>
//! p edge <n> <m>
//! e <u> <v>              one per edge, 1-based, u < v, sorted
//! c community <v> <c>    one per vertex, sorted by v
//! c precolour <v> <c>    one per precoloured vertex, sorted by v
//! ```
//!
//! Plain DIMACS readers see an ordinary edge list.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, PartialColouring, UNCOLOURED};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::sbm::{self, CommunityAssignment, SbmParams};

pub const MAGIC: &str = "c happy-sbm v1";

/// Instance metadata as recorded in the file. Unlike [`SbmParams`] this is
/// not validated against the model constraints, so hand-made fixtures fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub n: usize,
    pub k: u32,
    pub p: f64,
    pub q: f64,
    pub pcc: usize,
    pub seed: u64,
}

impl From<&SbmParams> for InstanceParams {
    fn from(p: &SbmParams) -> Self {
        InstanceParams {
            n: p.n(),
            k: p.k(),
            p: p.p(),
            q: p.q(),
            pcc: p.pcc(),
            seed: p.seed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub params: InstanceParams,
    pub graph: Graph,
    pub communities: CommunityAssignment,
    pub precolouring: PartialColouring,
}

impl Instance {
    pub fn generate(params: &SbmParams) -> Result<Self> {
        let (graph, communities, precolouring) = sbm::generate(params)?;
        Ok(Instance {
            params: params.into(),
            graph,
            communities,
            precolouring,
        })
    }

    pub fn to_dimacs(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        let _ = writeln!(
            out,
            "c params n={} k={} p={} q={} pcc={} seed={}",
            p.n, p.k, p.p, p.q, p.pcc, p.seed
        );
        let _ = writeln!(out, "p edge {} {}", self.graph.n(), self.graph.m());
        for (u, v) in self.graph.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        for (v, &c) in self.communities.as_slice().iter().enumerate() {
            let _ = writeln!(out, "c community {} {}", v + 1, c);
        }
        for (v, &c) in self.precolouring.as_slice().iter().enumerate() {
            if c != UNCOLOURED {
                let _ = writeln!(out, "c precolour {} {}", v + 1, c);
            }
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        fs::write(path, self.to_dimacs()).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Parses the text of an instance file; `path` is only used in errors.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse {
            path: PathBuf::from(path),
            line,
            msg,
        };

        let mut params: Option<InstanceParams> = None;
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        let mut communities: Vec<(usize, usize, Colour)> = Vec::new();
        let mut precolours: Vec<(usize, usize, Colour)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let mut tok = raw.split_whitespace();
            match tok.next() {
                None => continue,
                Some("c") => match tok.next() {
                    Some("params") => {
                        params = Some(parse_params(tok).map_err(|m| err(lineno, m))?);
                    }
                    Some(kind @ ("community" | "precolour")) => {
                        let (v, c) = parse_pair(tok).map_err(|m| err(lineno, m))?;
                        let c = Colour::try_from(c)
                            .map_err(|_| err(lineno, format!("colour {c} too large")))?;
                        let target = if kind == "community" {
                            &mut communities
                        } else {
                            &mut precolours
                        };
                        target.push((lineno, v, c));
                    }
                    _ => {}
                },
                Some("p") => {
                    if tok.next() != Some("edge") {
                        return Err(err(lineno, "expected `p edge <n> <m>`".into()));
                    }
                    header = Some(parse_pair(tok).map_err(|m| err(lineno, m))?);
                }
                Some("e") => {
                    let Some((n, _)) = header else {
                        return Err(err(lineno, "edge before `p edge` line".into()));
                    };
                    let (u, v) = parse_pair(tok).map_err(|m| err(lineno, m))?;
                    for w in [u, v] {
                        if w == 0 || w > n {
                            return Err(err(lineno, format!("vertex {w} outside 1..={n}")));
                        }
                    }
                    if u == v {
                        return Err(err(lineno, format!("self-loop on vertex {u}")));
                    }
                    edges.push(((u - 1) as Vertex, (v - 1) as Vertex));
                }
                Some(other) => {
                    return Err(err(lineno, format!("unrecognised line type {other:?}")));
                }
            }
        }

        let (n, m) = header.ok_or_else(|| err(0, "missing `p edge` line".into()))?;
        let params = params.ok_or_else(|| err(0, "missing `c params` line".into()))?;
        if params.n != n {
            return Err(err(0, format!("params n={} but header n={n}", params.n)));
        }
        let graph = Graph::from_edges(n, &edges).map_err(|e| err(0, e.to_string()))?;
        if graph.m() != m {
            return Err(err(
                0,
                format!("header declares {m} edges, found {}", graph.m()),
            ));
        }

        let mut labels = vec![0; n];
        for &(lineno, v, c) in &communities {
            if v == 0 || v > n {
                return Err(err(lineno, format!("vertex {v} outside 1..={n}")));
            }
            labels[v - 1] = c;
        }
        if let Some(v) = labels.iter().position(|&c| c == 0) {
            return Err(err(0, format!("vertex {} has no community line", v + 1)));
        }
        let communities =
            CommunityAssignment::from_vec(labels, params.k).map_err(|e| err(0, e.to_string()))?;

        let mut colours = vec![UNCOLOURED; n];
        for &(lineno, v, c) in &precolours {
            if v == 0 || v > n {
                return Err(err(lineno, format!("vertex {v} outside 1..={n}")));
            }
            if c == UNCOLOURED {
                return Err(err(lineno, "precolour must be at least 1".into()));
            }
            colours[v - 1] = c;
        }
        let precolouring =
            PartialColouring::from_vec(colours, params.k).map_err(|e| err(0, e.to_string()))?;

        Ok(Instance {
            params,
            graph,
            communities,
            precolouring,
        })
    }
}

fn parse_pair<'a>(
    mut tok: impl Iterator<Item = &'a str>,
) -> std::result::Result<(usize, usize), String> {
    let mut next = || -> std::result::Result<usize, String> {
        let t = tok.next().ok_or("missing field")?;
        t.parse()
            .map_err(|_| format!("expected an integer, got {t:?}"))
    };
    Ok((next()?, next()?))
}

fn parse_params<'a>(
    tok: impl Iterator<Item = &'a str>,
) -> std::result::Result<InstanceParams, String> {
    let (mut n, mut k, mut p, mut q, mut pcc, mut seed) = (None, None, None, None, None, None);
    for field in tok {
        let (key, val) = field
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {field:?}"))?;
        let bad = || format!("bad value for {key}: {val:?}");
        match key {
            "n" => n = Some(val.parse().map_err(|_| bad())?),
            "k" => k = Some(val.parse().map_err(|_| bad())?),
            "p" => p = Some(val.parse().map_err(|_| bad())?),
            "q" => q = Some(val.parse().map_err(|_| bad())?),
            "pcc" => pcc = Some(val.parse().map_err(|_| bad())?),
            "seed" => seed = Some(val.parse().map_err(|_| bad())?),
            _ => return Err(format!("unknown parameter {key:?}")),
        }
    }
    let missing = |name: &str| format!("params line lacks {name}");
    Ok(InstanceParams {
        n: n.ok_or_else(|| missing("n"))?,
        k: k.ok_or_else(|| missing("k"))?,
        p: p.ok_or_else(|| missing("p"))?,
        q: q.ok_or_else(|| missing("q"))?,
        pcc: pcc.ok_or_else(|| missing("pcc"))?,
        seed: seed.ok_or_else(|| missing("seed"))?,
    })
}
