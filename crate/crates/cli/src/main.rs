//! `tridiag`: analyze additive codes over GF(4), run tridiagonal censuses and
//! deal or reconstruct matrix-projection secret shares.
//!
//! Results are JSON on stdout. Exit status is 0 on success, 1 on a domain
//! error (with `{"error", "message", "version"}` on stdout) and 2 on a usage
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tridiag::census::{census_filter, run_census, CensusPredicate};
use tridiag::code::singleton_classify;
use tridiag::linalg::render_row;
use tridiag::sss::{deal, max_participants, reconstruct, DealerConfig, PublicBundle, Share};
use tridiag::{AdditiveCode, DmaxTable, Error, F2Matrix, F4Matrix, GeneratorVectorPair, F4};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "tridiag", version, about = "Additive tridiagonal codes over GF(4) and projection secret sharing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a code given as a pair "n;abits;bbits" or a code file
    Analyze(AnalyzeArgs),
    /// Enumerate every tridiagonal code of length n
    Census(CensusArgs),
    /// Threshold secret sharing
    #[command(subcommand)]
    Sss(SssCommand),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Generator pair "n;abits;bbits" or path to a code file ("n k" header)
    #[arg(value_parser = parse_target)]
    target: Target,
    /// JSON object mapping n to the best known distance d_max
    #[arg(long)]
    dmax_table: Option<PathBuf>,
}

#[derive(Args)]
struct CensusArgs {
    /// Code length
    #[arg(long)]
    n: usize,
    /// Worker threads (defaults to the available parallelism)
    #[arg(long)]
    workers: Option<usize>,
    /// Keep only pairs matching: reversible, extremal or distance=<d>
    #[arg(long, value_parser = parse_predicate)]
    filter: Option<CensusPredicate>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SssCommand {
    /// Split a binary 2n x 2n secret into m shares
    Deal(DealArgs),
    /// Recover the secret from n share files
    Reconstruct(ReconstructArgs),
}

#[derive(Args)]
struct DealArgs {
    /// Generator pair "n;abits;bbits" (n >= 2)
    #[arg(long, value_parser = pair_syntax)]
    pair: String,
    /// Secret matrix in matrix text format, entries 0/1
    #[arg(long)]
    secret: PathBuf,
    /// Number of participants
    #[arg(long)]
    m: usize,
    /// Seed for the coefficient sampler
    #[arg(long)]
    seed: u64,
    /// Directory receiving share-<i>.f4 and public.json
    #[arg(long)]
    outdir: PathBuf,
}

#[derive(Args)]
struct ReconstructArgs {
    /// public.json written by `sss deal`
    #[arg(long)]
    public: PathBuf,
    /// Share files, exactly n of them
    #[arg(required = true)]
    shares: Vec<PathBuf>,
}

#[derive(Clone)]
enum Target {
    Pair(String),
    File(PathBuf),
}

/// Rejects malformed pair text; lengths are checked later as domain errors.
fn pair_syntax(s: &str) -> Result<String, String> {
    match GeneratorVectorPair::parse_relaxed(s) {
        Err(e @ Error::Parse(_)) => Err(e.to_string()),
        _ => Ok(s.to_string()),
    }
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s.contains(';') {
        pair_syntax(s).map(Target::Pair)
    } else {
        Ok(Target::File(PathBuf::from(s)))
    }
}

fn parse_predicate(s: &str) -> Result<CensusPredicate, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Option<String>, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn rows(m: &F4Matrix) -> Vec<String> {
    (0..m.rows()).map(|i| render_row(m.row(i))).collect()
}

/// `Γ + ωI` with binary `Γ` and zero diagonal.
fn is_graph_form(g: &F4Matrix) -> bool {
    g.is_square()
        && (0..g.rows())
            .all(|i| (0..g.cols()).all(|j| if i == j { g[(i, j)] == F4::OMEGA } else { g[(i, j)].is_binary() }))
}

fn analyze(args: &AnalyzeArgs) -> Outcome {
    let table = match &args.dmax_table {
        Some(path) => Some(DmaxTable::parse_json(&read(path)?)?),
        None => None,
    };
    let (pair, code, dual) = match &args.target {
        Target::Pair(text) => {
            let t = GeneratorVectorPair::parse(text)?.build();
            (Some(t.pair().to_string()), t.code(), Some(t.graph_dual_generator()))
        }
        Target::File(path) => {
            let code = AdditiveCode::parse_text(&read(path)?)?;
            let dual = is_graph_form(code.generator()).then(|| code.generator().transpose());
            (None, code, dual)
        }
    };
    let n = code.len();
    let min_distance = match code.min_distance() {
        Ok(d) => Some(d),
        Err(Error::NoNonzeroCodeword) => None,
        Err(e) => return Err(e.into()),
    };
    let verdict = match min_distance {
        Some(d) if code.f2_rank() == n => Some(singleton_classify(n, n, d, table.as_ref())?),
        _ => None,
    };
    let report = json!({
        "version": VERSION,
        "pair": pair,
        "n": n,
        "k": code.k(),
        "f2_rank": code.f2_rank(),
        "min_distance": min_distance,
        "weight_distribution": code.weight_distribution()?,
        "reversible": code.is_reversible()?,
        "verdict": verdict,
        "dual_generator": dual.as_ref().map(rows),
    });
    Ok(Some(pretty(&report)))
}

fn census(args: &CensusArgs) -> Outcome {
    let workers = args.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
    let report = match args.filter {
        None => {
            let mut v = serde_json::to_value(run_census(args.n, workers)?).expect("report serializes");
            v["version"] = json!(VERSION);
            v
        }
        Some(pred) => {
            let pairs: Vec<String> = census_filter(args.n, pred, workers)?.iter().map(|p| p.to_string()).collect();
            json!({
                "version": VERSION,
                "n": args.n,
                "filter": pred.to_string(),
                "count": pairs.len(),
                "pairs": pairs,
            })
        }
    };
    match &args.out {
        Some(path) => {
            write(path, &pretty(&report))?;
            eprintln!("census report written to {}", path.display());
            Ok(None)
        }
        None => Ok(Some(pretty(&report))),
    }
}

fn sss_deal(args: &DealArgs) -> Outcome {
    let secret = F2Matrix::parse_text(&read(&args.secret)?)?;
    let pair = GeneratorVectorPair::parse_relaxed(&args.pair)?;
    let cfg = DealerConfig { pair, m: args.m, secret, seed: args.seed };
    let (shares, public) = deal(&cfg)?;
    fs::create_dir_all(&args.outdir).map_err(|e| Failure::Io(format!("{}: {e}", args.outdir.display())))?;
    let mut names = Vec::with_capacity(shares.len());
    for share in &shares {
        let name = format!("share-{}.f4", share.index);
        write(&args.outdir.join(&name), &share.to_text())?;
        names.push(name);
    }
    write(&args.outdir.join("public.json"), &public.to_json())?;
    let limit = max_participants(public.n);
    Ok(Some(pretty(&json!({
        "version": VERSION,
        "n": public.n,
        "m": public.m,
        "pair": public.pair.to_string(),
        "seed": args.seed,
        "shares": names,
        "public": "public.json",
        "max_participants": { "value": limit.value.map(|v| v.to_string()), "note": limit.note },
    }))))
}

fn sss_reconstruct(args: &ReconstructArgs) -> Outcome {
    let public = PublicBundle::parse_json(&read(&args.public)?)?;
    let shares = args.shares.iter().map(|p| Ok(Share::parse_text(&read(p)?)?)).collect::<Result<Vec<_>, Failure>>()?;
    let secret = reconstruct(&shares, &public)?;
    Ok(Some(secret.to_text()))
}

fn fail(name: &str, message: String, code: u8) -> ExitCode {
    eprintln!("error: {message}");
    print!("{}", pretty(&json!({ "error": name, "message": message, "version": VERSION })));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Census(a) => census(a),
        Command::Sss(SssCommand::Deal(a)) => sss_deal(a),
        Command::Sss(SssCommand::Reconstruct(a)) => sss_reconstruct(a),
    };
    match outcome {
        Ok(out) => {
            if let Some(text) = out {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e @ Error::Arity { .. })) => fail(e.name(), e.to_string(), 2),
        Err(Failure::Domain(e)) => fail(e.name(), e.to_string(), 1),
        Err(Failure::Io(message)) => fail("IoError", message, 1),
    }
}
