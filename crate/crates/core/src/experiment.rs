//! Reproducible experiment sweeps over generated instances.
//!
//! Seeding rules:
//! - instance `i` (0-based, in enumeration order) uses seed `base_seed + i`
//!   for its graph, precolouring and, in random mode, its parameter draws
//!   (ChaCha8 stream 2);
//! - a solver run uses [`solver_seed`] of the instance seed, the algorithm
//!   and the position of ρ in the instance's ρ list.
//!
//! Rows are streamed to `<output>.partial` as instances finish, so an
//! interrupted sweep can be resumed: rows already present in the output or
//! the partial file are skipped, a truncated trailing line is discarded,
//! and the final CSV is rewritten sorted by `(seed, rho, algo)`.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::Rho;
use crate::error::{Error, Result};
use crate::io::Instance;
use crate::metrics::{evaluate, EvalRecord, CSV_HEADER};
use crate::sbm::{induced_colouring, SbmParams};
use crate::solvers::{self, Algorithm, SolveResult, SolverConfig};

const PARAM_STREAM: u64 = 2;

/// Runs one algorithm on an instance. `Community` reports the
/// community-induced colouring; `Oracle` enumerates exhaustively.
pub fn run_algorithm(
    algo: Algorithm,
    instance: &Instance,
    config: &SolverConfig,
) -> Result<SolveResult> {
    let graph = &instance.graph;
    let partial = &instance.precolouring;
    match algo {
        Algorithm::Greedy => solvers::greedy_soft_mhv(graph, partial, config),
        Algorithm::Ngc => solvers::ngc(graph, partial, config),
        Algorithm::Lmc => solvers::lmc(graph, partial, config),
        Algorithm::Growth => solvers::growth_soft_mhv(graph, partial, config),
        Algorithm::Community => {
            let start = std::time::Instant::now();
            let colouring = induced_colouring(&instance.communities);
            let happy_count =
                crate::colouring::happy_count(graph, colouring.as_slice(), config.rho);
            Ok(SolveResult {
                colouring,
                happy_count,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                timed_out: false,
                work_counter: 0,
            })
        }
        Algorithm::Oracle => {
            let start = std::time::Instant::now();
            let res = solvers::exact_oracle(graph, partial, config.rho, instance.params.k)?;
            Ok(SolveResult {
                colouring: res.colouring,
                happy_count: res.max_happy,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                timed_out: false,
                work_counter: 0,
            })
        }
    }
}

/// Seed for one solver run, derived from the instance seed.
pub fn solver_seed(instance_seed: u64, algo: Algorithm, rho_index: usize) -> u64 {
    let algo_tag = Algorithm::ALL.iter().position(|&a| a == algo).unwrap() as u64 + 1;
    splitmix64(instance_seed ^ (algo_tag << 56) ^ ((rho_index as u64) << 40))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Cartesian product of the listed values, `instances` per cell.
    Grid,
    /// `instances` independent draws of every parameter.
    Random,
}

/// A parameter given as a single value, a list, or an inclusive range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Choice<T> {
    Fixed(T),
    List(Vec<T>),
    Range { min: T, max: T },
}

/// Sampling of a [`Choice::Range`] value.
pub trait Draw: Copy {
    fn draw(min: Self, max: Self, rng: &mut ChaCha8Rng) -> Self;
}

impl Draw for usize {
    fn draw(min: Self, max: Self, rng: &mut ChaCha8Rng) -> Self {
        rng.gen_range(min..=max)
    }
}

impl Draw for u32 {
    fn draw(min: Self, max: Self, rng: &mut ChaCha8Rng) -> Self {
        rng.gen_range(min..=max)
    }
}

impl Draw for f64 {
    /// Uniform on `(min, max]`.
    fn draw(min: Self, max: Self, rng: &mut ChaCha8Rng) -> Self {
        max - (max - min) * rng.gen::<f64>()
    }
}

impl<T: Draw> Choice<T> {
    fn grid_values(&self, name: &str) -> Result<Vec<T>> {
        match self {
            Choice::Fixed(x) => Ok(vec![*x]),
            Choice::List(xs) if !xs.is_empty() => Ok(xs.clone()),
            Choice::List(_) => Err(Error::param(format!("{name}: empty list"))),
            Choice::Range { .. } => Err(Error::param(format!(
                "{name}: ranges are only allowed in random mode"
            ))),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> T {
        match self {
            Choice::Fixed(x) => *x,
            Choice::List(xs) => xs[rng.gen_range(0..xs.len())],
            Choice::Range { min, max } => T::draw(*min, *max, rng),
        }
    }

    fn check(&self, name: &str, ok: impl Fn(T) -> bool) -> Result<()>
    where
        T: std::fmt::Debug,
    {
        let bad: Vec<T> = match self {
            Choice::Fixed(x) => vec![*x],
            Choice::List(xs) => {
                if xs.is_empty() {
                    return Err(Error::param(format!("{name}: empty list")));
                }
                xs.clone()
            }
            Choice::Range { min, max } => vec![*min, *max],
        }
        .into_iter()
        .filter(|&x| !ok(x))
        .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::param(format!("{name}: invalid value(s) {bad:?}")))
        }
    }
}

/// How the inter-community probability is chosen for a given `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QSpec {
    /// Absolute values.
    Values { values: Vec<f64> },
    /// `q = r·p` for each listed ratio.
    Ratio { ratios: Vec<f64> },
    /// `start, start + step, …` up to the bound `q_max_over_p · p`.
    Ladder { start: f64, step: f64 },
    /// Uniform on `(0, q_max_over_p · p]`. Random mode only.
    Uniform,
}

impl QSpec {
    fn candidates(&self, p: f64, max_ratio: f64) -> Vec<f64> {
        let round = |x: f64| (x * 1e12).round() / 1e12;
        match self {
            QSpec::Values { values } => values.clone(),
            QSpec::Ratio { ratios } => ratios.iter().map(|r| round(r * p)).collect(),
            QSpec::Ladder { start, step } => {
                let bound = max_ratio * p + 1e-12;
                (0..)
                    .map(|j| round(start + j as f64 * step))
                    .take_while(|&q| q <= bound)
                    .collect()
            }
            QSpec::Uniform => Vec::new(),
        }
    }
}

/// How ρ values are assigned to each instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RhoSpec {
    /// Every instance is solved at each listed ρ.
    Values { values: Vec<f64> },
    /// `count` independent draws per instance, uniform on `(0, 1]` and
    /// rounded to three decimals.
    Uniform { count: usize },
}

fn default_time_limit() -> u64 {
    40_000
}

fn default_q_ratio() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub base_seed: u64,
    /// Per grid cell in grid mode, in total in random mode.
    pub instances: usize,
    #[serde(default = "default_time_limit")]
    pub time_limit_ms: u64,
    #[serde(default)]
    pub deterministic: bool,
    pub algorithms: Vec<Algorithm>,
    /// Upper bound on `q / p`; 0.5 mirrors the published protocol.
    #[serde(default = "default_q_ratio")]
    pub q_max_over_p: f64,
    #[serde(default)]
    pub threads: Option<usize>,
    pub n: Choice<usize>,
    pub k: Choice<u32>,
    pub p: Choice<f64>,
    pub q: QSpec,
    pub pcc: Choice<usize>,
    pub rho: RhoSpec,
}

/// One planned instance and the ρ values it is solved at.
#[derive(Debug, Clone, PartialEq)]
pub struct PlannedInstance {
    pub index: usize,
    pub params: SbmParams,
    pub rhos: Vec<Rho>,
}

impl ExperimentConfig {
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::param(format!("{}: {e}", path.display())))
    }

    /// Desk-scale slice of the 1,000-vertex grid test: n = 500,
    /// k ∈ {2, 5, 10}, p ∈ {0.3, 0.7}, q = p/10, pcc = 5, ρ = 0.1…1.0,
    /// two instances per cell.
    pub fn test1_desk() -> Self {
        ExperimentConfig {
            mode: Mode::Grid,
            base_seed: 1,
            instances: 2,
            time_limit_ms: 40_000,
            deterministic: false,
            algorithms: vec![
                Algorithm::Greedy,
                Algorithm::Ngc,
                Algorithm::Lmc,
                Algorithm::Growth,
                Algorithm::Community,
            ],
            q_max_over_p: 0.5,
            threads: None,
            n: Choice::Fixed(500),
            k: Choice::List(vec![2, 5, 10]),
            p: Choice::List(vec![0.3, 0.7]),
            q: QSpec::Ratio { ratios: vec![0.1] },
            pcc: Choice::Fixed(5),
            rho: RhoSpec::Values { values: tenths() },
        }
    }

    /// Random draws from the 1,000-vertex test's ranges: k ∈ 2..=20,
    /// p ∈ {0.1, …, 0.9}, q ∈ {0.01, 0.11, …} ≤ p/2, pcc ∈ 1..=10, each
    /// instance solved at ρ = 0.1…1.0.
    pub fn test1_random(instances: usize) -> Self {
        ExperimentConfig {
            mode: Mode::Random,
            instances,
            n: Choice::Fixed(1000),
            k: Choice::Range { min: 2, max: 20 },
            p: Choice::List((1..=9).map(|i| i as f64 / 10.0).collect()),
            q: QSpec::Ladder {
                start: 0.01,
                step: 0.1,
            },
            pcc: Choice::Range { min: 1, max: 10 },
            ..Self::test1_desk()
        }
    }

    /// Desk-scale version of the variable-size test: 200 <= n < 3000,
    /// k ∈ 2..=20, p ∈ (0, 1], q ∈ (0, p/2], one ρ ∈ (0, 1] per instance,
    /// 120 s limit.
    pub fn test2_desk(instances: usize) -> Self {
        ExperimentConfig {
            mode: Mode::Random,
            instances,
            time_limit_ms: 120_000,
            n: Choice::Range {
                min: 200,
                max: 2999,
            },
            k: Choice::Range { min: 2, max: 20 },
            p: Choice::Range { min: 0.0, max: 1.0 },
            q: QSpec::Uniform,
            pcc: Choice::Range { min: 1, max: 10 },
            rho: RhoSpec::Uniform { count: 1 },
            ..Self::test1_desk()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::param("no algorithms selected"));
        }
        if self.instances == 0 {
            return Err(Error::param("instances must be positive"));
        }
        if !(self.q_max_over_p > 0.0 && self.q_max_over_p < 1.0) {
            return Err(Error::param(format!(
                "q_max_over_p must lie in (0, 1), got {}",
                self.q_max_over_p
            )));
        }
        self.n.check("n", |n| n >= 2)?;
        self.k.check("k", |k| k >= 2)?;
        self.p.check("p", |p| (0.0..=1.0).contains(&p))?;
        self.pcc.check("pcc", |_| true)?;
        match &self.rho {
            RhoSpec::Values { values } => {
                if values.is_empty() {
                    return Err(Error::param("rho: empty list"));
                }
                for &r in values {
                    Rho::new(r)?;
                }
            }
            RhoSpec::Uniform { count } if *count == 0 => {
                return Err(Error::param("rho: count must be positive"));
            }
            RhoSpec::Uniform { .. } => {}
        }
        match (&self.q, self.mode) {
            (QSpec::Uniform, Mode::Grid) => {
                return Err(Error::param(
                    "q: uniform draws are only allowed in random mode",
                ));
            }
            (QSpec::Values { values }, _) | (QSpec::Ratio { ratios: values }, _)
                if values.is_empty() =>
            {
                return Err(Error::param("q: empty list"));
            }
            (QSpec::Ladder { start, step }, _) if !(*start > 0.0 && *step > 0.0) => {
                return Err(Error::param("q: ladder start and step must be positive"));
            }
            _ => {}
        }
        if self.mode == Mode::Grid {
            for p in self.p.grid_values("p")? {
                for q in self.q.candidates(p, self.q_max_over_p) {
                    if q > self.q_max_over_p * p + 1e-12 {
                        return Err(Error::param(format!(
                            "q={q} exceeds {}·p for p={p}",
                            self.q_max_over_p
                        )));
                    }
                }
            }
        } else if let QSpec::Values { values } = &self.q {
            let p_min = match &self.p {
                Choice::Fixed(p) => *p,
                Choice::List(xs) => xs.iter().copied().fold(f64::INFINITY, f64::min),
                Choice::Range { min, .. } => *min,
            };
            if let Some(q) = values
                .iter()
                .find(|&&q| q > self.q_max_over_p * p_min + 1e-12)
            {
                return Err(Error::param(format!(
                    "q={q} exceeds {}·p for p={p_min}",
                    self.q_max_over_p
                )));
            }
        }
        Ok(())
    }

    /// Enumerates the instances of the sweep in canonical order.
    pub fn plan(&self) -> Result<Vec<PlannedInstance>> {
        self.validate()?;
        let mut out = Vec::new();
        match self.mode {
            Mode::Grid => {
                let ns = self.n.grid_values("n")?;
                let ks = self.k.grid_values("k")?;
                let ps = self.p.grid_values("p")?;
                let pccs = self.pcc.grid_values("pcc")?;
                for &n in &ns {
                    for &k in &ks {
                        for &p in &ps {
                            for q in self.q.candidates(p, self.q_max_over_p) {
                                for &pcc in &pccs {
                                    for _ in 0..self.instances {
                                        let index = out.len();
                                        let seed = self.base_seed.wrapping_add(index as u64);
                                        let params = SbmParams::new(n, k, p, q, pcc, seed)?;
                                        out.push(PlannedInstance {
                                            index,
                                            params,
                                            rhos: self.rhos_for(seed)?,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Mode::Random => {
                for index in 0..self.instances {
                    let seed = self.base_seed.wrapping_add(index as u64);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(PARAM_STREAM);
                    let params = self.draw_params(seed, &mut rng)?;
                    out.push(PlannedInstance {
                        index,
                        params,
                        rhos: self.rhos_for(seed)?,
                    });
                }
            }
        }
        Ok(out)
    }

    fn draw_params(&self, seed: u64, rng: &mut ChaCha8Rng) -> Result<SbmParams> {
        // Redraw until the combination is admissible (p > 0 with a
        // non-empty q range, pcc fitting the smallest community).
        for _ in 0..10_000 {
            let n = self.n.sample(rng);
            let k = self.k.sample(rng);
            let p = self.p.sample(rng);
            let q = match &self.q {
                QSpec::Uniform => Choice::Range {
                    min: 0.0,
                    max: self.q_max_over_p * p,
                }
                .sample(rng),
                other => {
                    let cands = other.candidates(p, self.q_max_over_p);
                    if cands.is_empty() {
                        continue;
                    }
                    cands[rng.gen_range(0..cands.len())]
                }
            };
            let pcc = self.pcc.sample(rng);
            if let Ok(params) = SbmParams::new(n, k, p, q, pcc, seed) {
                return Ok(params);
            }
        }
        Err(Error::param(
            "could not draw admissible parameters from the configured ranges",
        ))
    }

    fn rhos_for(&self, seed: u64) -> Result<Vec<Rho>> {
        match &self.rho {
            RhoSpec::Values { values } => values.iter().map(|&r| Rho::new(r)).collect(),
            RhoSpec::Uniform { count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(PARAM_STREAM + 1);
                (0..*count)
                    .map(|_| {
                        let draw = 1000 - rng.gen_range(0..1000u64);
                        Rho::from_ratio(draw, 1000)
                    })
                    .collect()
            }
        }
    }
}

fn tenths() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

/// Solves one planned instance with every configured algorithm and ρ.
pub fn run_instance(
    config: &ExperimentConfig,
    planned: &PlannedInstance,
) -> Result<Vec<EvalRecord>> {
    run_instance_filtered(config, planned, &|_, _| true)
}

fn run_instance_filtered(
    config: &ExperimentConfig,
    planned: &PlannedInstance,
    wanted: &(dyn Fn(Algorithm, Rho) -> bool + Sync),
) -> Result<Vec<EvalRecord>> {
    let instance = Instance::generate(&planned.params)?;
    let mut rows = Vec::new();
    for (ri, &rho) in planned.rhos.iter().enumerate() {
        for &algo in &config.algorithms {
            if !wanted(algo, rho) {
                continue;
            }
            let solver = SolverConfig {
                rho,
                seed: solver_seed(planned.params.seed(), algo, ri),
                time_limit_ms: config.time_limit_ms,
                deterministic: config.deterministic,
            };
            let result = run_algorithm(algo, &instance, &solver)?;
            let mut rec = evaluate(
                &instance.graph,
                &instance.communities,
                algo,
                &result,
                rho,
                &instance.params,
            )?;
            if config.deterministic {
                // Wall-clock time is the only non-reproducible column.
                rec.elapsed_ms = 0.0;
            }
            rows.push(rec);
        }
    }
    Ok(rows)
}

type RowKey = (u64, u64, Algorithm);

fn row_key(r: &EvalRecord) -> RowKey {
    (r.seed, r.rho.to_bits(), r.algo)
}

/// Sorts rows into canonical `(seed, rho, algo)` order.
pub fn sort_rows(rows: &mut [EvalRecord]) {
    rows.sort_by(|a, b| {
        a.seed
            .cmp(&b.seed)
            .then(a.rho.total_cmp(&b.rho))
            .then(a.algo.cmp(&b.algo))
    });
}

/// Runs the whole sweep in memory, in canonical order.
pub fn run(config: &ExperimentConfig) -> Result<Vec<EvalRecord>> {
    let plan = config.plan()?;
    let work = || -> Result<Vec<EvalRecord>> {
        let chunks: Vec<Vec<EvalRecord>> = plan
            .par_iter()
            .map(|p| run_instance(config, p))
            .collect::<Result<_>>()?;
        let mut rows: Vec<EvalRecord> = chunks.into_iter().flatten().collect();
        sort_rows(&mut rows);
        Ok(rows)
    };
    with_threads(config.threads, work)
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Reads result rows, stopping quietly at a malformed trailing record.
pub fn read_rows(path: &Path) -> Result<Vec<EvalRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(file);
    let mut rows = Vec::new();
    let records: Vec<_> = rdr.deserialize::<EvalRecord>().collect();
    let last = records.len();
    for (i, rec) in records.into_iter().enumerate() {
        match rec {
            Ok(r) => rows.push(r),
            Err(_) if i + 1 == last => break,
            Err(e) => {
                return Err(Error::Csv {
                    path: path.to_path_buf(),
                    source: e,
                })
            }
        }
    }
    Ok(rows)
}

/// Writes rows with the standard header.
pub fn write_rows(path: &Path, rows: &[EvalRecord]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let csv_err = |e| Error::Csv {
        path: path.to_path_buf(),
        source: e,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(',')).map_err(csv_err)?;
    }
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn partial_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".partial");
    PathBuf::from(s)
}

/// Runs the sweep and persists it at `output`, resuming from any rows
/// already written there or in its `.partial` companion.
///
/// Returns all rows of the finished CSV.
pub fn run_to_file(config: &ExperimentConfig, output: &Path) -> Result<Vec<EvalRecord>> {
    let plan = config.plan()?;
    let partial = partial_path(output);

    let mut existing = Vec::new();
    if output.exists() {
        existing.extend(read_rows(output)?);
    }
    let partial_rows = if partial.exists() {
        read_rows(&partial)?
    } else {
        Vec::new()
    };
    existing.extend(partial_rows.iter().cloned());
    let done: HashSet<RowKey> = existing.iter().map(row_key).collect();

    // Rewrite the partial file from its valid rows so appends start clean.
    write_rows(&partial, &partial_rows)?;
    let file = OpenOptions::new()
        .append(true)
        .open(&partial)
        .map_err(|e| Error::io(&partial, e))?;
    let writer = Mutex::new(
        csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(BufWriter::new(file)),
    );

    let wanted = |seed: u64| {
        let done = &done;
        move |algo: Algorithm, rho: Rho| !done.contains(&(seed, rho.as_f64().to_bits(), algo))
    };

    let fresh: Vec<Vec<EvalRecord>> = with_threads(config.threads, || {
        plan.par_iter()
            .map(|p| {
                let filter = wanted(p.params.seed());
                let any = p
                    .rhos
                    .iter()
                    .any(|&r| config.algorithms.iter().any(|&a| filter(a, r)));
                if !any {
                    return Ok(Vec::new());
                }
                let rows = run_instance_filtered(config, p, &filter)?;
                let mut w = writer.lock().unwrap();
                for r in &rows {
                    w.serialize(r).map_err(|e| Error::Csv {
                        path: partial.clone(),
                        source: e,
                    })?;
                }
                w.flush().map_err(|e| Error::io(&partial, e))?;
                Ok(rows)
            })
            .collect::<Result<_>>()
    })?;
    drop(writer);

    // Deduplicate on key, keeping the first occurrence.
    let mut merged: BTreeMap<(u64, u64, Algorithm), EvalRecord> = BTreeMap::new();
    for r in existing.into_iter().chain(fresh.into_iter().flatten()) {
        merged.entry(row_key(&r)).or_insert(r);
    }
    let mut rows: Vec<EvalRecord> = merged.into_values().collect();
    sort_rows(&mut rows);

    let mut tmp = output.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    write_rows(&tmp, &rows)?;
    fs::rename(&tmp, output).map_err(|e| Error::io(output, e))?;
    fs::remove_file(&partial).map_err(|e| Error::io(&partial, e))?;
    Ok(rows)
}

/// Per-algorithm aggregates over a set of rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgoSummary {
    pub algo: Algorithm,
    pub runs: usize,
    pub mean_happy: f64,
    pub mean_accuracy: f64,
    pub complete_happy_rate: f64,
    pub runs_below_xi: usize,
    pub complete_happy_rate_below_xi: f64,
    pub accurate_detection_rate: f64,
    pub timeouts: usize,
}

pub fn summarize(rows: &[EvalRecord]) -> Vec<AlgoSummary> {
    let mut by_algo: BTreeMap<Algorithm, Vec<&EvalRecord>> = BTreeMap::new();
    for r in rows {
        by_algo.entry(r.algo).or_default().push(r);
    }
    let mean = |xs: &[f64]| {
        if xs.is_empty() {
            0.0
        } else {
            xs.iter().sum::<f64>() / xs.len() as f64
        }
    };
    by_algo
        .into_iter()
        .map(|(algo, rs)| {
            let below: Vec<_> = rs.iter().filter(|r| r.rho_below_xi).collect();
            let rate = |xs: &[&&EvalRecord], f: fn(&EvalRecord) -> bool| {
                if xs.is_empty() {
                    0.0
                } else {
                    xs.iter().filter(|r| f(r)).count() as f64 / xs.len() as f64
                }
            };
            let all: Vec<_> = rs.iter().collect();
            AlgoSummary {
                algo,
                runs: rs.len(),
                mean_happy: mean(&rs.iter().map(|r| r.happy_count as f64).collect::<Vec<_>>()),
                mean_accuracy: mean(&rs.iter().map(|r| r.community_accuracy).collect::<Vec<_>>()),
                complete_happy_rate: rate(&all, |r| r.complete_happy),
                runs_below_xi: below.len(),
                complete_happy_rate_below_xi: rate(&below, |r| r.complete_happy),
                accurate_detection_rate: rate(&all, |r| r.community_accuracy == 1.0),
                timeouts: rs.iter().filter(|r| r.timed_out).count(),
            }
        })
        .collect()
}

/// Renders rows as CSV text.
pub fn to_csv_string(rows: &[EvalRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        let _ = w.write_record(CSV_HEADER.split(','));
    }
    for r in rows {
        w.serialize(r).expect("in-memory csv");
    }
    let mut buf = w.into_inner().expect("in-memory csv");
    buf.flush().ok();
    String::from_utf8(buf).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_test1_row_count() {
        let cfg = ExperimentConfig::test1_desk();
        let plan = cfg.plan().unwrap();
        assert_eq!(plan.len(), 12);
        assert_eq!(plan.iter().map(|p| p.rhos.len()).sum::<usize>(), 120);
    }

    #[test]
    fn ladder_respects_half_p() {
        let q = QSpec::Ladder {
            start: 0.01,
            step: 0.1,
        };
        assert_eq!(q.candidates(0.1, 0.5), vec![0.01]);
        assert_eq!(q.candidates(0.3, 0.5), vec![0.01, 0.11]);
        assert_eq!(q.candidates(0.9, 0.5), vec![0.01, 0.11, 0.21, 0.31, 0.41]);
    }

    #[test]
    fn rejects_q_above_half_p() {
        let mut cfg = ExperimentConfig::test1_desk();
        cfg.q = QSpec::Ratio { ratios: vec![0.6] };
        assert!(cfg.validate().is_err());
        cfg.q = QSpec::Values { values: vec![0.2] };
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::test2_desk(3);
        cfg.q = QSpec::Values { values: vec![0.4] };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn random_plan_is_reproducible_and_admissible() {
        let cfg = ExperimentConfig::test2_desk(30);
        let a = cfg.plan().unwrap();
        assert_eq!(a, cfg.plan().unwrap());
        for p in &a {
            let sp = &p.params;
            assert!((200..3000).contains(&sp.n()));
            assert!(sp.q() <= sp.p() / 2.0);
            assert_eq!(p.rhos.len(), 1);
            assert!(p.rhos[0].as_f64() > 0.0);
        }
    }

    #[test]
    fn toml_config_parses() {
        let text = r#"
            mode = "grid"
            base_seed = 7
            instances = 1
            algorithms = ["greedy", "lmc"]
            n = 60
            k = [2, 3]
            p = 0.6
            pcc = 2
            q = { kind = "ratio", ratios = [0.1, 0.2] }
            rho = { kind = "values", values = [0.5] }
        "#;
        let cfg: ExperimentConfig = toml::from_str(text).unwrap();
        assert_eq!(cfg.time_limit_ms, 40_000);
        assert_eq!(cfg.plan().unwrap().len(), 4);
    }

    #[test]
    fn solver_seeds_differ() {
        let a = solver_seed(5, Algorithm::Lmc, 0);
        assert_ne!(a, solver_seed(5, Algorithm::Lmc, 1));
        assert_ne!(a, solver_seed(5, Algorithm::Growth, 0));
        assert_ne!(a, solver_seed(6, Algorithm::Lmc, 0));
    }
}
