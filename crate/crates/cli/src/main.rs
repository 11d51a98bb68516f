use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use latcov_core::exact::rational::{format_rational, parse_rational, Rational};
use latcov_core::graph::build_graph;
use latcov_core::io::{matrix_from_json, parse_body_spec, parse_lattice_spec};
use latcov_core::lab::explore::explore_conjecture;
use latcov_core::lab::linforms::linear_forms_minimum;
use latcov_core::lab::verify::{verify_paper, Status, SUITES};
use latcov_core::minima::minima_report;
use latcov_core::minima::planes::DEFAULT_SEARCH_BOUND;
use latcov_core::Error;

#[derive(Parser)]
#[command(name = "latcov", version, about = "Exact covering minima, successive minima and lattice widths of rational polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Successive minima, width, covering minima and covering product as JSON.
    Minima(MinimaArgs),
    /// The quotient graph of an integral lattice with weighted unit steps.
    Graph(GraphArgs),
    /// Recompute the exact claims; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Random search for small covering products.
    Explore(ExploreArgs),
    /// Minimum of |l_1| + ... + |l_n| + |l_1 + ... + l_n| over nonzero integer points.
    Linforms(LinformsArgs),
}

#[derive(Args)]
struct MinimaArgs {
    /// Body name (cube:3, cross:3, pni:4,2, T3, S1:3, Sv:1,2, Z3, Z3-polar, q:1/2,1),
    /// inline JSON, or @file.json.
    #[arg(long)]
    body: String,
    /// Lattice name (Z3, checkerboard:3, makai:3), inline JSON, or @file.json.
    #[arg(long)]
    lattice: String,
    /// Width allowed for covering minima that are only bracketed.
    #[arg(long, default_value = "1/64")]
    tol: String,
    /// Largest coordinate of the lattice vectors spanning searched planes.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
    bound: usize,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    lattice: String,
    /// Comma-separated positive weights, one per unit vector (default all 1).
    #[arg(long)]
    weights: Option<String>,
    /// Report the weighted diameter.
    #[arg(long)]
    diameter: bool,
    /// Print the graph in DOT format instead of JSON (small graphs only).
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Restrict dimension-indexed suites to this dimension.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "1/16")]
    tol: String,
}

#[derive(Args)]
struct LinformsArgs {
    /// Row-major JSON matrix of the forms, inline or @file.json.
    #[arg(long)]
    matrix: String,
    #[arg(long, default_value_t = 10)]
    radius: i64,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::Dimension(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

/// Reads `@path` arguments from disk.
fn text_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn rational_arg(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn minima(a: &MinimaArgs) -> Outcome {
    let k = parse_body_spec(&text_arg(&a.body)?)?;
    let l = parse_lattice_spec(&text_arg(&a.lattice)?)?;
    let rep = minima_report(&k, &l, &rational_arg(&a.tol)?, a.bound)?;
    println!("{}", serde_json::to_string_pretty(&rep).expect("serializable"));
    Ok(true)
}

fn graph(a: &GraphArgs) -> Outcome {
    let l = parse_lattice_spec(&text_arg(&a.lattice)?)?;
    let weights: Vec<Rational> = match &a.weights {
        Some(w) => w.split(',').map(rational_arg).collect::<Result<_, _>>()?,
        None => vec![Rational::from_integer(1.into()); l.dim()],
    };
    let g = build_graph(&l, &weights)?;
    if a.dot {
        print!("{}", g.to_dot()?);
        return Ok(true);
    }
    let mut out = json!({"vertices": g.vertex_count(), "edges": g.edge_count()});
    if a.diameter {
        let (d, at) = g.diameter_with_witness();
        let s: Rational = weights.iter().sum();
        out["diameter"] = json!(format_rational(&d));
        out["farthest"] = json!(g.representative(at).iter().map(|x| x.to_string()).collect::<Vec<_>>());
        out["simplex_covering_radius"] = json!(format_rational(&(d + s)));
    }
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(true)
}

fn verify(a: &VerifyArgs) -> Outcome {
    let Some(records) = verify_paper(&a.suite, a.n) else {
        return Err(Failure::Usage(format!("unknown suite {:?}; choose all or one of {}", a.suite, SUITES.join(", "))));
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&records).expect("serializable"));
    } else if a.csv {
        println!("claim_id,expected,computed,status");
        for r in &records {
            println!("{}", r.csv_row());
        }
    } else {
        for r in &records {
            let status = match &r.status {
                Status::Pass => "pass".to_string(),
                Status::Fail => "FAIL".to_string(),
                Status::Skipped(why) => format!("skipped ({why})"),
            };
            println!("{status:<8} {}  expected {}", r.claim_id, r.expected);
        }
        let failed = records.iter().filter(|r| r.failed()).count();
        let passed = records.iter().filter(|r| r.passed()).count();
        println!("{passed} passed, {failed} failed, {} skipped", records.len() - passed - failed);
    }
    Ok(records.iter().all(|r| !r.failed()))
}

fn explore(a: &ExploreArgs) -> Outcome {
    let log = explore_conjecture(a.n, a.samples, a.seed, &rational_arg(&a.tol)?)?;
    println!("{}", serde_json::to_string_pretty(&log).expect("serializable"));
    Ok(log.floor_violations == 0)
}

fn linforms(a: &LinformsArgs) -> Outcome {
    let m = matrix_from_json(&text_arg(&a.matrix)?)?;
    let r = linear_forms_minimum(&m, a.radius)?;
    let out = json!({
        "min_value": format_rational(&r.value),
        "argmin": r.argmin,
        "certified": r.certified,
        "det": format_rational(&m.determinant()?),
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Minima(a) => minima(a),
        Command::Graph(a) => graph(a),
        Command::Verify(a) => verify(a),
        Command::Explore(a) => explore(a),
        Command::Linforms(a) => linforms(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
