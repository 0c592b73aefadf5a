use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use ccma::bilinear::{brute_force_min_rank, json, SearchOutcome, TargetAlgebra};
use ccma::bounds::{self, AsymptoticParams};
use ccma::codes::{code_from_decomposition, supercode_from_symmetric};
use ccma::curve::CurveInstance;
use ccma::gf::GaloisField;
use ccma::planner::{self, report, verify_file, Strategy, SynthOptions};
use ccma::Error;
use clap::{Args, Parser, Subcommand};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "ccma", version, about = "Synthesize and check bilinear multiplication algorithms over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best verified algorithm for F_{q^n} (or F_{q^n}[t]/(t^l)) over F_q.
    Synth(SynthArgs),
    /// Re-run exhaustive verification of an algorithm or certificate file.
    Verify { file: PathBuf },
    /// Regenerate a reference table of bounds.
    Bounds(BoundsArgs),
    /// Linear code (or supercode) of a decomposition.
    Codes(CodesArgs),
    /// Exhaustive minimum-rank search for a tiny extension.
    Search(SearchArgs),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    /// Truncation order; 1 targets the field itself.
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Comma-separated subset of g0, tower, curve.
    #[arg(long, value_delimiter = ',', default_value = "g0,tower,curve")]
    strategies: Vec<String>,
    #[arg(long)]
    max_place_degree: Option<usize>,
    #[arg(long)]
    max_mult: Option<usize>,
    /// Extra curve instance configs, in addition to the shipped ones.
    #[arg(long = "curve")]
    curves: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// One of table1, table2, table3, csym, msym, m.
    #[arg(long)]
    table: String,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
    /// Compare synthesized ranks against the table instead.
    #[arg(long)]
    achieved: bool,
    /// Largest degree synthesized by --achieved.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Curve-family constants replacing the shipped reference values.
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(Args)]
struct CodesArgs {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    supercode: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_rank: usize,
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(e) if e.is_guard() => EXIT_GUARD,
            Some(Error::Verification(_)) => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn mismatch(msg: String) -> Failure {
    Failure { code: EXIT_MISMATCH, err: anyhow::anyhow!(msg) }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn say(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(anyhow::Error::new(e).context("writing stdout").into()),
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))?,
        None => say(&format!("{text}\n"))?,
    }
    Ok(())
}

fn synth(a: SynthArgs) -> Result<(), Failure> {
    let strategies = a
        .strategies
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Strategy>())
        .collect::<Result<BTreeSet<_>, _>>()?;
    let mut opts = SynthOptions { strategies, max_place_degree: a.max_place_degree, max_mult: a.max_mult, ..Default::default() };
    for p in &a.curves {
        let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        opts.instances.push(CurveInstance::from_json(&s)?);
    }
    let cert = planner::synth_truncated(a.q, a.n, a.l, &opts)?;
    eprintln!("rank {} via {}", cert.rank, cert.techniques.join(", "));
    emit(a.out.as_deref(), &cert.to_json_string())
}

fn verify(file: &Path) -> Result<(), Failure> {
    let r = verify_file(file)?;
    say(&format!("{r}\n"))?;
    if r.passed() {
        Ok(())
    } else {
        Err(mismatch(format!("{} does not verify", file.display())))
    }
}

fn bounds_cmd(a: BoundsArgs) -> Result<(), Failure> {
    if a.achieved {
        let opts = SynthOptions::default();
        let rows = match a.table.as_str() {
            "table1" => report::achieved_exact(&opts),
            "table2" => report::achieved_small_field(a.max_n, &opts),
            "table3" => report::achieved_truncated(a.max_n, &opts),
            other => return Err(Failure::from(Error::Parse(format!("--achieved supports table1, table2, table3, not {other}")))),
        };
        let text = if a.json { serde_json::to_string_pretty(&rows).context("serializing rows")? } else { report::to_csv(&rows) };
        say(&text)?;
        let bad: Vec<_> = rows
            .iter()
            .filter(|r| r.status.starts_with("inconsistent") || r.status.starts_with("verification") || (a.table == "table1" && !r.achieved()))
            .collect();
        if bad.is_empty() {
            return Ok(());
        }
        return Err(mismatch(format!("{} row(s) failed: {}", bad.len(), bad.iter().map(|r| format!("q={} {}: {}", r.q, r.params, r.status)).collect::<Vec<_>>().join("; "))));
    }
    let params = match &a.params {
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            AsymptoticParams::from_json(&s)?
        }
        None => AsymptoticParams::reference(),
    };
    let rows = bounds::table(&a.table, &params)?;
    let text = if a.json { bounds::to_json(&rows) } else { bounds::to_csv(&rows) };
    say(&text)?;
    if a.json {
        say("\n")?;
    }
    let bad: Vec<_> = rows.iter().filter(|r| r.matches_reference == Some(false)).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(mismatch(format!(
            "mismatches: {}",
            bad.iter().map(|r| format!("(q={} {}, expected {}, got {})", r.q, r.params, r.printed, r.value)).collect::<Vec<_>>().join(", ")
        )))
    }
}

fn codes(a: CodesArgs) -> Result<(), Failure> {
    let s = std::fs::read_to_string(&a.from).with_context(|| format!("reading {}", a.from.display()))?;
    let alg = planner::load_algorithm(&s)?;
    if !alg.verify()? {
        return Err(mismatch(format!("{} does not verify", a.from.display())));
    }
    let text = if a.supercode {
        let sc = supercode_from_symmetric(&alg)?;
        serde_json::to_string_pretty(&sc.to_json()).context("serializing supercode")?
    } else {
        let mut code = code_from_decomposition(&alg)?;
        match code.compute_distance() {
            Ok(d) => eprintln!("[{}, {}, {d}] code", code.length(), code.dimension()),
            Err(e) if e.is_guard() => eprintln!("minimum distance skipped: {e}"),
            Err(e) => return Err(e.into()),
        }
        serde_json::to_string_pretty(&code.to_json()).context("serializing code")?
    };
    emit(a.out.as_deref(), &text)
}

fn search(a: SearchArgs) -> Result<(), Failure> {
    let field = Arc::new(GaloisField::of_order(a.q)?);
    let target = TargetAlgebra::extension_canonical(&field, a.n);
    match brute_force_min_rank(Arc::clone(&field), &target, a.max_rank, a.symmetric)? {
        SearchOutcome::Found(alg) => {
            eprintln!("minimum rank {}", alg.rank());
            emit(a.out.as_deref(), &json::to_string(&alg))
        }
        SearchOutcome::ExceedsMaxRank => {
            say(&format!("no decomposition of rank <= {}\n", a.max_rank))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Synth(a) => synth(a),
        Command::Verify { file } => verify(&file),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Codes(a) => codes(a),
        Command::Search(a) => search(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
