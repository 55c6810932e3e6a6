//! `ffque`: Eisenstein coefficients, quotient spectra, level sweeps and the
//! verification battery from the command line.

use clap::{Args, Parser, Subcommand};
use ffque::arith::{ramanujan_discrepancy, write_discrepancy_csv};
use ffque::eisenstein::{coeff_closed, eval_direct, index_gamma0, order_pgl2_residue, p1_point_count, CoeffSource, GroupPoint};
use ffque::ff::Poly;
use ffque::que::{que_sweep, run_verification_suite, Config, TestWeight};
use ffque::tree::{adjacency_spectrum, build_quotient};
use num_complex::Complex64;
use serde_json::json;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ffque", version, about = "Level-aspect Eisenstein series over F_q(T)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients, direct values and the Gamma0 index.
    #[command(subcommand)]
    Eisenstein(EisCommand),
    /// Truncated quotient graph of Gamma0(A): adjacency list, manifest and spectrum.
    Spectrum(SpectrumArgs),
    /// Level sweeps of the Eisenstein inner product.
    #[command(subcommand)]
    Que(QueCommand),
    /// Runs the verification battery; exit status 1 if any hard check fails.
    Verify(VerifyArgs),
    /// Brute against closed Ramanujan sums as CSV.
    RamanujanReport(ReportArgs),
}

#[derive(Subcommand)]
enum EisCommand {
    Coeff(CoeffArgs),
    Eval(EvalArgs),
    Index(IndexArgs),
}

#[derive(Args)]
struct CoeffArgs {
    #[arg(long, default_value_t = 5)]
    q: u32,
    #[arg(long = "A")]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long = "Q", default_value = "0")]
    qp: String,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, default_value_t = 5)]
    q: u32,
    /// Vertex as `n=<int>,x=<Laurent tail>`.
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long = "A")]
    a: String,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct IndexArgs {
    #[arg(long, default_value_t = 5)]
    q: u32,
    #[arg(long = "A")]
    a: String,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, default_value_t = 5)]
    q: u32,
    #[arg(long = "A")]
    a: String,
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long, default_value_t = 8)]
    degbound: i64,
    /// Directory for `adjacency.txt` and `manifest.json`.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum QueCommand {
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 5)]
    q: u32,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 1)]
    deg_min: usize,
    #[arg(long, default_value_t = 6)]
    deg_max: usize,
    /// Weight support as `n:value` pairs, e.g. `0:1,1:1/2`.
    #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
    psi: String,
    /// Use the coefficients obtained by unfolding instead of the closed formulas.
    #[arg(long)]
    unfolded: bool,
    #[arg(long, default_value = "que_sweep.csv")]
    csv: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Flat `key = value` file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Where to write the JSON summary.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value_t = 5)]
    q: u32,
    /// Levels, comma separated.
    #[arg(long = "A", default_value = "T,T+1")]
    a: String,
    #[arg(long, default_value_t = 3)]
    deg_x: usize,
    #[arg(long, default_value_t = 3)]
    deg_q: usize,
    #[arg(long, default_value = "ramanujan_report.csv")]
    out: PathBuf,
}

type CliResult<T> = Result<T, String>;

fn poly(q: u32, s: &str) -> CliResult<Poly> {
    Poly::parse(q, s).map_err(|e| e.to_string())
}

fn complex(s: &str) -> CliResult<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<Complex64>().map_err(|_| format!("cannot parse complex number `{s}`"))
}

fn create(path: &PathBuf) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| format!("{}: {e}", path.display()))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

fn eisenstein(cmd: EisCommand) -> CliResult<()> {
    match cmd {
        EisCommand::Coeff(c) => {
            let a = poly(c.q, &c.a)?;
            let qp = poly(c.q, &c.qp)?;
            let v = coeff_closed(c.n, &qp, complex(&c.s)?, &a).map_err(|e| e.to_string())?;
            println!("{}", json!({"value_re": v.re, "value_im": v.im, "truncation_bound": 0.0}));
        }
        EisCommand::Eval(c) => {
            let g = GroupPoint::parse(c.q, &c.g).map_err(|e| e.to_string())?;
            let a = poly(c.q, &c.a)?;
            let v = eval_direct(&g, complex(&c.s)?, &a, c.tol).map_err(|e| e.to_string())?;
            println!("{}", v.to_json());
        }
        EisCommand::Index(c) => {
            let a = poly(c.q, &c.a)?;
            let m = index_gamma0(&a).map_err(|e| e.to_string())?;
            let p1 = p1_point_count(&a).map_err(|e| e.to_string())?;
            let order = order_pgl2_residue(&a).map_err(|e| e.to_string())?;
            println!("{}", json!({"A": a.to_string(), "m": m, "p1_points": p1, "order": order}));
        }
    }
    Ok(())
}

fn spectrum(c: SpectrumArgs) -> CliResult<()> {
    let a = poly(c.q, &c.a)?;
    let g = build_quotient(&a, c.depth, c.degbound).map_err(|e| e.to_string())?;
    std::fs::create_dir_all(&c.out_dir).map_err(|e| e.to_string())?;
    let mut adj = create(&c.out_dir.join("adjacency.txt"))?;
    g.write_adjacency(&mut adj).map_err(|e| e.to_string())?;
    adj.flush().map_err(|e| e.to_string())?;
    let mut manifest = g.manifest();
    manifest["spectrum"] = serde_json::to_value(adjacency_spectrum(&g)).map_err(|e| e.to_string())?;
    let mut mf = create(&c.out_dir.join("manifest.json"))?;
    writeln!(mf, "{}", pretty(&manifest)).map_err(|e| e.to_string())?;
    println!("{}", pretty(&manifest));
    Ok(())
}

fn sweep(c: SweepArgs) -> CliResult<()> {
    let psi = TestWeight::parse(&c.psi).map_err(|e| e.to_string())?;
    let source = if c.unfolded { CoeffSource::Unfolded } else { CoeffSource::Closed };
    let run = que_sweep(c.q, c.t, c.deg_min..=c.deg_max, &psi, source).map_err(|e| e.to_string())?;
    run.write_csv(create(&c.csv)?).map_err(|e| e.to_string())?;
    println!("{}", pretty(&run.summary_json()));
    Ok(())
}

fn verify(c: VerifyArgs) -> CliResult<bool> {
    let cfg = match &c.config {
        Some(p) => Config::from_file(p).map_err(|e| e.to_string())?,
        None => Config::default(),
    };
    let report = run_verification_suite(&cfg);
    for check in &report.checks {
        println!("{}", check.line());
    }
    println!("hard checks passed: {}", report.hard_passed);
    if let Some(path) = &c.json {
        let mut w = create(path)?;
        let v = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        writeln!(w, "{}", pretty(&v)).map_err(|e| e.to_string())?;
    }
    Ok(report.hard_passed)
}

fn ramanujan_report(c: ReportArgs) -> CliResult<()> {
    let levels = c.a.split(',').map(|s| poly(c.q, s.trim())).collect::<CliResult<Vec<_>>>()?;
    let rows = ramanujan_discrepancy(c.q, &levels, c.deg_x, c.deg_q).map_err(|e| e.to_string())?;
    write_discrepancy_csv(&rows, create(&c.out)?).map_err(|e| e.to_string())?;
    let mismatches = rows.iter().filter(|r| !r.match_flag).count();
    println!("{}", json!({"rows": rows.len(), "mismatches": mismatches, "csv": c.out}));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eisenstein(c) => eisenstein(c).map(|_| true),
        Command::Spectrum(c) => spectrum(c).map(|_| true),
        Command::Que(QueCommand::Sweep(c)) => sweep(c).map(|_| true),
        Command::Verify(c) => verify(c),
        Command::RamanujanReport(c) => ramanujan_report(c).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
