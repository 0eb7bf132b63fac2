use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use softhappy::experiment::{self, ExperimentConfig};
use softhappy::solvers::{exact_oracle, Algorithm, SolverConfig};
use softhappy::{evaluate, Error, Instance, Result, Rho, SbmParams, ThresholdReport};

#[derive(Parser)]
#[command(
    name = "softhappy",
    version,
    about = "Soft happy colouring on stochastic block model graphs"
)]
struct Cli {
    /// Default directory for generated files.
    #[arg(
        long,
        global = true,
        env = "SOFTHAPPY_OUT_DIR",
        default_value = "results"
    )]
    out_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an SBM instance and write it in DIMACS format.
    Generate(GenerateArgs),
    /// Run one algorithm on an instance file and write its result row.
    Solve(SolveArgs),
    /// Exhaustively maximise the happy count on a small instance.
    Oracle(OracleArgs),
    /// Print the closed-form thresholds for a parameter set.
    Thresholds(ThresholdArgs),
    /// Run an experiment sweep and write a CSV of result rows.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    pcc: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; defaults to `<out-dir>/sbm-n<n>-k<k>-s<seed>.dimacs`.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long)]
    algo: Algorithm,
    #[arg(long)]
    rho: Rho,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 40_000)]
    time_limit_ms: u64,
    /// Lowest-id vertex choice instead of seeded random choice.
    #[arg(long)]
    deterministic: bool,
    /// Result file, `.json` or `.csv`; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Also write the final colouring, one colour per line.
    #[arg(long)]
    colouring_out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long)]
    rho: Rho,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    rho: f64,
    /// Failure probability; defaults to n⁻².
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Test1Desk,
    Test1Random,
    Test2Desk,
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML experiment configuration.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Overrides the instance count (random presets default to 20).
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    base_seed: Option<u64>,
    #[arg(long)]
    time_limit_ms: Option<u64>,
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Output CSV; defaults to `<out-dir>/experiment.csv`.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => generate(a, &cli.out_dir),
        Command::Solve(a) => solve(a),
        Command::Oracle(a) => oracle(a),
        Command::Thresholds(a) => thresholds(a),
        Command::Experiment(a) => run_experiment(a, &cli.out_dir),
    }
}

fn generate(a: GenerateArgs, out_dir: &Path) -> Result<()> {
    let params = SbmParams::new(a.n, a.k, a.p, a.q, a.pcc, a.seed)?;
    let path = a
        .out
        .unwrap_or_else(|| out_dir.join(format!("sbm-n{}-k{}-s{}.dimacs", a.n, a.k, a.seed)));
    let instance = Instance::generate(&params)?;
    instance.write(&path)?;
    println!(
        "wrote {} (n={}, m={})",
        path.display(),
        instance.graph.n(),
        instance.graph.m()
    );
    Ok(())
}

fn solve(a: SolveArgs) -> Result<()> {
    let instance = Instance::read(&a.instance)?;
    let config = SolverConfig {
        rho: a.rho,
        seed: a.seed,
        time_limit_ms: a.time_limit_ms,
        deterministic: a.deterministic,
    };
    let result = experiment::run_algorithm(a.algo, &instance, &config)?;
    let record = evaluate(
        &instance.graph,
        &instance.communities,
        a.algo,
        &result,
        a.rho,
        &instance.params,
    )?;

    if let Some(path) = &a.colouring_out {
        let text: String = result
            .colouring
            .as_slice()
            .iter()
            .map(|c| format!("{c}\n"))
            .collect();
        std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
    }

    match &a.out {
        Some(path) if path.extension().is_some_and(|e| e == "json") => {
            let json = serde_json::to_string_pretty(&record).expect("record serialises");
            std::fs::write(path, json + "\n").map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })
        }
        Some(path) => experiment::write_rows(path, std::slice::from_ref(&record)),
        None => {
            print!(
                "{}",
                experiment::to_csv_string(std::slice::from_ref(&record))
            );
            Ok(())
        }
    }
}

fn oracle(a: OracleArgs) -> Result<()> {
    let instance = Instance::read(&a.instance)?;
    let res = exact_oracle(
        &instance.graph,
        &instance.precolouring,
        a.rho,
        instance.params.k,
    )?;
    println!("max_happy {}", res.max_happy);
    let colours: Vec<String> = res
        .colouring
        .as_slice()
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!("colouring {}", colours.join(" "));
    Ok(())
}

fn thresholds(a: ThresholdArgs) -> Result<()> {
    let report = ThresholdReport::compute(a.n, a.k, a.p, a.q, a.rho, a.epsilon)?;
    let mut out = std::io::stdout().lock();
    if a.json {
        let json = serde_json::to_string_pretty(&report).expect("report serialises");
        let _ = writeln!(out, "{json}");
    } else {
        let _ = writeln!(out, "n                 {}", report.n);
        let _ = writeln!(out, "k                 {}", report.k);
        let _ = writeln!(out, "p                 {}", report.p);
        let _ = writeln!(out, "q                 {}", report.q);
        let _ = writeln!(out, "rho               {}", report.rho);
        let _ = writeln!(out, "xi                {:.6}", report.xi);
        let _ = writeln!(out, "xi_tilde          {:.6}", report.xi_tilde);
        let _ = writeln!(out, "epsilon_used      {:e}", report.epsilon_used);
        let _ = writeln!(out, "phi               {:.7}", report.phi);
        let _ = writeln!(out, "epsilon_tilde     {:e}", report.epsilon_tilde);
        let _ = writeln!(out, "expected_degree   {:.4}", report.expected_degree);
        let _ = writeln!(out, "prob_lower_bound  {:.6}", report.prob_lower_bound);
        let _ = writeln!(out, "inequality_holds  {}", report.inequality_holds);
    }
    Ok(())
}

fn run_experiment(a: ExperimentArgs, out_dir: &Path) -> Result<()> {
    let instances = a.instances.unwrap_or(20);
    let mut config = match (a.config, a.preset) {
        (Some(path), _) => ExperimentConfig::from_toml_file(&path)?,
        (None, Some(Preset::Test1Desk)) => ExperimentConfig::test1_desk(),
        (None, Some(Preset::Test1Random)) => ExperimentConfig::test1_random(instances),
        (None, Some(Preset::Test2Desk)) => ExperimentConfig::test2_desk(instances),
        (None, None) => unreachable!("clap requires one of --config and --preset"),
    };
    if let Some(n) = a.instances {
        config.instances = n;
    }
    if let Some(s) = a.base_seed {
        config.base_seed = s;
    }
    if let Some(t) = a.time_limit_ms {
        config.time_limit_ms = t;
    }
    if a.deterministic {
        config.deterministic = true;
    }
    if a.threads.is_some() {
        config.threads = a.threads;
    }
    let path = a.out.unwrap_or_else(|| out_dir.join("experiment.csv"));
    let rows = experiment::run_to_file(&config, &path)?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    println!("algo       runs  mean_happy  mean_acc  CH_rate  CH_rate(rho<xi)  timeouts");
    for s in experiment::summarize(&rows) {
        println!(
            "{:<9} {:>5}  {:>10.2}  {:>8.4}  {:>7.4}  {:>15}  {:>8}",
            s.algo.name(),
            s.runs,
            s.mean_happy,
            s.mean_accuracy,
            s.complete_happy_rate,
            if s.runs_below_xi == 0 {
                "-".to_string()
            } else {
                format!(
                    "{:.4} ({})",
                    s.complete_happy_rate_below_xi, s.runs_below_xi
                )
            },
            s.timeouts
        );
    }
    Ok(())
}
