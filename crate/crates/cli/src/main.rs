//! `cyclebook`: predict, construct, verify, tabulate and brute-force
//! `R(C_m, B_n^(k))`.
//!
//! Exit codes: 0 ok, 1 I/O, 2 domain, 3 strict hypothesis, 4 assembly,
//! 5 parse, 6 budget.

mod manifest;
mod table;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cyclebook::constructions::lower_bound_witness;
use cyclebook::oracle::{self, Enumeration, TinyRamsey, Verdict, MAX_ENUM_ORDER, RAW_ENUM_ORDER};
use cyclebook::verify::{verify_graph, Expectations, Mode, VerifyConfig};
use cyclebook::{formula, io, Error};
use serde_json::{json, Value};

use manifest::RunManifest;

#[derive(Parser)]
#[command(name = "cyclebook", version, about = "Ramsey numbers of long even cycles versus books")]
struct Cli {
    /// Seed recorded in manifests and used by any randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    G6,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the predicted Ramsey number as JSON.
    Predict {
        #[arg(long)]
        t: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        /// Treat hypothesis flags as errors (exit 3).
        #[arg(long)]
        strict: bool,
    },
    /// Build the lower-bound witness and write it to disk.
    Construct {
        #[arg(long)]
        t: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Graph file format; the spec is always JSON.
        #[arg(long, value_enum, default_value = "g6")]
        format: GraphFormat,
    },
    /// Check a graph for C_m-freeness and complement book-freeness.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// With --t, the order is checked against the prediction.
        #[arg(long)]
        t: Option<i64>,
        /// Witness spec JSON whose claimed min-union is checked.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Tabulate predictions over every valid n for a range of t.
    Table {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: i64,
        /// Inclusive range `a..b`, or a single value.
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
    },
    /// Exhaustive tiny-scale Ramsey scan.
    Oracle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "max")]
        n_max: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

enum Failure {
    Io(String),
    Lib(Error),
    Strict(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InfeasibleAssembly { .. } => 4,
        Error::Parse(_) => 5,
        Error::ResourceLimit(_) => 6,
        _ => 2,
    }
}

fn write_file(path: &Path, text: &str) -> Result<PathBuf, Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(path.to_path_buf())
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &impl serde::Serialize) {
    emit(&(serde_json::to_string_pretty(v).expect("output serializes") + "\n"));
}

fn predict(t: i64, k: i64, n: i64, m: i64, strict: bool) -> Result<(), Failure> {
    let pred = formula::predict(t, k, n, m)?;
    emit(&(pred.to_json() + "\n"));
    if strict && !pred.flags.is_empty() {
        let codes: Vec<_> = pred.flags.iter().map(|f| f.code).collect();
        return Err(Failure::Strict(codes.join(", ")));
    }
    Ok(())
}

fn construct(
    (t, k, n, m): (i64, i64, i64, i64),
    out: &Path,
    format: GraphFormat,
    seed: u64,
    started: Instant,
) -> Result<(), Failure> {
    let ctx = formula::validate(t, k, n, m)?;
    let (g, spec) = lower_bound_witness(&ctx)?;
    fs::create_dir_all(out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    let name = format!("t{t}_k{k}_n{n}_m{m}");
    let graph_path = match format {
        GraphFormat::G6 => write_file(&out.join(format!("{name}.g6")), &(io::to_graph6(&g) + "\n"))?,
        GraphFormat::Json => write_file(&out.join(format!("{name}.graph.json")), &(io::to_json(&g) + "\n"))?,
    };
    let spec_path = write_file(&out.join(format!("{name}.json")), &(spec.to_json() + "\n"))?;
    let manifest_path = out.join(format!("{name}.manifest.json"));
    RunManifest::new(
        "construct",
        json!({"t": t, "k": k, "n": n, "m": m}),
        seed,
        started,
        vec![graph_path.clone(), spec_path.clone()],
    )
    .write(&manifest_path)
    .map_err(|e| Failure::Io(format!("{}: {e}", manifest_path.display())))?;
    print_json(&json!({
        "family": spec.family,
        "order": g.order(),
        "claimed_min_union": spec.claimed_min_union,
        "graph": graph_path,
        "spec": spec_path,
        "manifest": manifest_path,
    }));
    Ok(())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn claimed_min_union(path: &Path) -> Result<Option<usize>, Failure> {
    let v: Value = serde_json::from_str(&read_text(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(v.get("claimed_min_union").and_then(Value::as_u64).map(|x| x as usize))
}

fn verify(
    path: &Path,
    (m, n, k): (usize, usize, usize),
    t: Option<i64>,
    spec: Option<&Path>,
    mode: &str,
) -> Result<(), Failure> {
    let mode: Mode = mode.parse()?;
    let g = io::parse_graph(&read_text(path)?).map_err(|e| match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    })?;
    let order = match t {
        Some(t) => Some(formula::predict(t, k as i64, n as i64, m as i64)?.g - 1),
        None => None,
    };
    let min_union = match spec {
        Some(p) => claimed_min_union(p)?,
        None => None,
    };
    let report = verify_graph(&g, (m, n, k), mode, &VerifyConfig::default(), Expectations { order, min_union })?;
    print_json(&report);
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<i64>, Error> {
    let bad = || Error::Parse(format!("expected a range a..b, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a < 2 || a > b {
        return Err(Error::OutOfRange(format!("t range {a}..{b} is empty or has t < 2")));
    }
    Ok(a..=b)
}

fn table(k: i64, m: i64, t: &str, format: TableFormat) -> Result<(), Failure> {
    let ts = parse_range(t).map_err(|e| match e {
        // a malformed range is still a domain error for this command
        Error::Parse(msg) => Error::OutOfRange(msg),
        other => other,
    })?;
    let rows = table::rows(k, m, ts)?;
    if rows.is_empty() {
        return Err(Error::OutOfRange("no valid (t, n) in range".into()).into());
    }
    let text = match format {
        TableFormat::Md => table::markdown(&rows),
        TableFormat::Csv => table::csv(&rows),
    };
    emit(&text);
    Ok(())
}

fn oracle_scan((m, n, k): (usize, usize, usize), n_max: usize, out: &Path, seed: u64, started: Instant) -> Result<(), Failure> {
    if n_max > MAX_ENUM_ORDER {
        return Err(Error::ResourceLimit(format!("--max {n_max} exceeds the exhaustive limit {MAX_ENUM_ORDER}")).into());
    }
    let mut scans = Vec::new();
    let mut result = TinyRamsey::LowerBoundOnly { bound: n_max + 1 };
    for order in 1..=n_max {
        let mode = if order <= RAW_ENUM_ORDER { Enumeration::Raw } else { Enumeration::Classes };
        let scan = oracle::ramsey_exhaustive(m, n, k, order, mode)?;
        emit(&(serde_json::to_string(&scan).expect("scan serializes") + "\n"));
        let done = scan.verdict == Verdict::AllArrow;
        scans.push(scan);
        if done {
            result = TinyRamsey::Value { value: order };
            break;
        }
    }
    let summary = json!({"m": m, "n": n, "k": k, "max": n_max, "result": result, "scans": scans});
    fs::create_dir_all(out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    let name = format!("oracle_m{m}_n{n}_k{k}_max{n_max}");
    let scan_path = write_file(&out.join(format!("{name}.json")), &(serde_json::to_string_pretty(&summary).expect("json") + "\n"))?;
    let manifest_path = out.join(format!("{name}.manifest.json"));
    RunManifest::new("oracle", json!({"m": m, "n": n, "k": k, "max": n_max}), seed, started, vec![scan_path])
        .write(&manifest_path)
        .map_err(|e| Failure::Io(format!("{}: {e}", manifest_path.display())))?;
    emit(&(json!({"result": result}).to_string() + "\n"));
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("CYCLEBOOK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let started = Instant::now();
    let result = match &cli.command {
        Command::Predict { t, k, n, m, strict } => predict(*t, *k, *n, *m, *strict),
        Command::Construct { t, k, n, m, out, format } => construct((*t, *k, *n, *m), out, *format, cli.seed, started),
        Command::Verify { graph, m, n, k, t, spec, mode } => verify(graph, (*m, *n, *k), *t, spec.as_deref(), mode),
        Command::Table { k, m, t, format } => table(*k, *m, t, *format),
        Command::Oracle { m, n, k, n_max, out } => oracle_scan((*m, *n, *k), *n_max, out, cli.seed, started),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if let Error::InfeasibleAssembly { attempts, .. } = &e {
                for a in attempts {
                    eprintln!("  tried {a}");
                }
            }
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Strict(codes)) => {
            eprintln!("error: hypothesis flags raised under --strict: {codes}");
            ExitCode::from(3)
        }
        Err(Failure::Check) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
    }
}
