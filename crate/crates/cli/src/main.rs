//! `hyperreg`: generate instances, measure quasirandomness, build and audit regularity
//! partitions and decompositions, and run the verification suites.

mod commands;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use run::{sha256_hex, write_artifacts, CliError, Digest256, Inputs, RunManifest, EXIT_AUDIT, EXIT_USAGE};

#[derive(Parser, Serialize)]
#[command(name = "hyperreg", version, about = "Regularity partitions and quasirandomness audits for graphs and 3-graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write every artifact and manifest.json into this directory instead of printing.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Digit cap for evaluating symbolic bounds.
    #[arg(long, global = true, default_value_t = hyperreg::bound::DEFAULT_DIGIT_CAP)]
    digits: u64,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Cmd {
    /// Build an instance from a named construction.
    Gen(GenArgs),
    /// Densities and subgraph counts.
    Stats(StatsArgs),
    /// dev2 / dev23 deviations and, optionally, the disc23 defect.
    Quasi(QuasiArgs),
    /// VC, VC2 or slicewise VC dimension with a shattering witness.
    Vcdim(VcdimArgs),
    /// Energy-increment regularity partition of a graph.
    Partition(PartitionArgs),
    /// Strong regularity decomposition of a 3-graph.
    Decompose(DecomposeArgs),
    /// Re-check a stored decomposition against an instance.
    Audit(AuditArgs),
    /// One-sided regular decomposition of a triangle-generated tripartite 3-graph.
    DeltaReg(DeltaArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Run one experiment over a grid of densities and seeds.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Powerset,
    RandomGraph,
    RandomTriad,
    Random3graph,
    DummyExtend,
    Bip,
    Trip,
    Blowup,
    Hard,
    Duplication,
}

#[derive(Args, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instance file the construction starts from.
    #[arg(long)]
    pub base: Option<String>,
    /// Part sizes `a,b,c` for random triads (defaults to n,n,n).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Attach a trigraph keeping each triangle with this probability.
    #[arg(long)]
    pub fill: Option<f64>,
    /// Triad file whose XY pairs select the alternating duplication shape.
    #[arg(long)]
    pub alternate: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Xy,
    Xz,
    Yz,
}

#[derive(Args, Serialize)]
pub struct StatsArgs {
    pub instance: String,
    /// Component whose codegrees are profiled (triads only).
    #[arg(long, value_enum, default_value_t = SideArg::Xy)]
    pub side: SideArg,
    #[arg(long, default_value_t = 0.1)]
    pub tau: f64,
    /// Also emit the codegree histogram as codegrees.csv.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuasiMode {
    /// Deviation sums only.
    Dev,
    /// Also the disc23 defect by exhaustive search.
    Exact,
    /// Also a disc23 lower bound by local search.
    Heuristic,
}

#[derive(Args, Serialize)]
pub struct QuasiArgs {
    pub instance: String,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon1: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon2: f64,
    #[arg(long, value_enum, default_value_t = QuasiMode::Dev)]
    pub mode: QuasiMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Local-search restarts in heuristic mode.
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
    /// Three-part partition file, needed for 3-graph instances.
    #[arg(long)]
    pub parts: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VcKind {
    Vc,
    Vc2,
    Svc,
}

#[derive(Args, Serialize)]
pub struct VcdimArgs {
    pub instance: String,
    #[arg(long, value_enum)]
    pub kind: VcKind,
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Serialize)]
pub struct PartitionArgs {
    pub instance: String,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    /// Starting partition file; the trivial partition otherwise.
    #[arg(long)]
    pub init: Option<String>,
    /// Decomposition file whose cells are regularized jointly.
    #[arg(long)]
    pub colors: Option<String>,
    /// Seed of the sampled audit of the result.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = hyperreg::quasi::DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Args, Serialize)]
pub struct DecomposeArgs {
    pub instance: String,
    #[arg(long, default_value_t = 0.3)]
    pub epsilon1: f64,
    /// `const:V`, `power:SCALE:EXP` or `table:V1,V2,...`.
    #[arg(long, default_value = "power:1:1")]
    pub eps2: String,
    #[arg(long)]
    pub max_t: Option<usize>,
    #[arg(long)]
    pub max_ell: Option<usize>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Recorded in the manifest; the decomposer itself is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Serialize)]
pub struct AuditArgs {
    pub instance: String,
    /// Decomposition file, or the output of `delta-reg`.
    #[arg(long)]
    pub decomposition: String,
    #[arg(long, default_value_t = 0.3)]
    pub epsilon1: f64,
    /// Defaults to the decomposition's own schedule at its ℓ.
    #[arg(long)]
    pub epsilon2: Option<f64>,
    /// Non-triviality threshold; ε₁/48 by default.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Run the one-sided regularity audit at this δ instead.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Three-part partition file, needed for 3-graph instances in δ mode.
    #[arg(long)]
    pub parts: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Serialize)]
pub struct DeltaArgs {
    pub instance: String,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Partition V₀ that the vertex parts must refine; the three sides otherwise.
    #[arg(long)]
    pub v0: Option<String>,
    /// ε to use instead of the literal constant, which is too small to run.
    #[arg(long)]
    pub eps_override: Option<f64>,
    /// Three-part partition file, needed for 3-graph instances.
    #[arg(long)]
    pub parts: Option<String>,
    /// Seed of the sampled subset checks in the audit.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    /// Counting-lemma slack on random triads.
    Counting,
    /// Regularity partitions of random graphs.
    Partition,
    /// Strong decompositions of random 3-graphs.
    Decompose,
    /// One-sided regular decompositions of random triangle 3-graphs.
    Delta,
}

#[derive(Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// Vertices (per part for triads).
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub p: Vec<f64>,
    /// Instances per density.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// ε for partitions, ε₁ for decompositions, δ for the delta experiment.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Gen(_) => "gen",
            Cmd::Stats(_) => "stats",
            Cmd::Quasi(_) => "quasi",
            Cmd::Vcdim(_) => "vcdim",
            Cmd::Partition(_) => "partition",
            Cmd::Decompose(_) => "decompose",
            Cmd::Audit(_) => "audit",
            Cmd::DeltaReg(_) => "delta-reg",
            Cmd::Verify(_) => "verify",
            Cmd::Sweep(_) => "sweep",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Cmd::Gen(a) => Some(a.seed),
            Cmd::Quasi(a) => Some(a.seed),
            Cmd::Partition(a) => Some(a.seed),
            Cmd::Decompose(a) => Some(a.seed),
            Cmd::Audit(a) => Some(a.seed),
            Cmd::DeltaReg(a) => Some(a.seed),
            Cmd::Verify(a) => Some(a.seed),
            Cmd::Sweep(a) => Some(a.seed),
            Cmd::Stats(_) | Cmd::Vcdim(_) => None,
        }
    }
}

fn set_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("HYPERREG_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("HYPERREG_THREADS={v:?} is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let start = Instant::now();
    if let Err(e) = set_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    let inputs = Inputs::default();
    let outcome = commands::dispatch(&cli.cmd, cli.digits, &inputs);
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let status = if outcome.audit_failed { EXIT_AUDIT } else { 0 };
    let manifest = RunManifest {
        command: cli.cmd.name().to_string(),
        argv: argv.into_iter().skip(1).collect(),
        flags: serde_json::to_value(&cli).expect("flags serialize"),
        seed: cli.cmd.seed(),
        inputs: inputs.digests(),
        outputs: outcome
            .artifacts
            .iter()
            .map(|a| Digest256 { path: a.name.clone(), sha256: sha256_hex(a.content.as_bytes()) })
            .collect(),
        exit_status: status,
        wall_secs: start.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    match &cli.out {
        Some(dir) => {
            let mut all = outcome.artifacts;
            all.push(run::Artifact { name: "manifest.json".into(), content: manifest_text });
            if let Err(e) = write_artifacts(dir, &all) {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
        }
        None => {
            if let Some(first) = outcome.artifacts.first() {
                print!("{}", first.content);
            }
            eprintln!("manifest: {}", serde_json::to_string(&manifest).expect("manifest serializes"));
        }
    }
    ExitCode::from(status)
}
