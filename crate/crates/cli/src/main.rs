use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use matpoly_core::algebra::{parse_rational, BiPoly, IntPoly};
use matpoly_core::graphs::{complete_graph, MultiGraph};
use matpoly_core::identities::{verify_identity, IdentityKind};
use matpoly_core::invariants::{chi_delcon, chi_from_tutte, chi_subset, flow_poly, tutte};
use matpoly_core::kn_flow::{flow_kn_egf, flow_kn_partitions};
use matpoly_core::oracles::{chi_via_broken_circuits, count_colorings, count_nz_flows};
use matpoly_core::projective::{chi_pg_dual, tutte_pg};
use matpoly_core::targets::Target;
use matpoly_core::{Error, Result};

/// Exact characteristic, flow and Tutte polynomials of matroids and graphs.
#[derive(Parser)]
#[command(name = "matpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Flow polynomial of the complete graph K_n.
    FlowKn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FlowMethod::Partitions)]
        method: FlowMethod,
    },
    /// Characteristic polynomial of a matroid.
    Chi {
        #[arg(long)]
        matroid: String,
        #[arg(long, value_enum, default_value_t = ChiMethod::Subset)]
        method: ChiMethod,
    },
    /// Characteristic polynomial of the dual of PG(n-1, q), closed form.
    ChiPgDual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Tutte polynomial of PG(n-1, q), closed form.
    TuttePg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Check an identity on a matroid; exits with 3 when it fails.
    Verify {
        #[arg(long)]
        identity: String,
        #[arg(long)]
        matroid: String,
        /// Comma-separated rationals such as `2,3,1/2`.
        #[arg(long)]
        samples: Option<String>,
    },
    /// Brute-force counts.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Time every flow method on K_1..K_n-max and compare checksums.
    Bench {
        #[command(subcommand)]
        which: BenchCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Proper colourings with q colours.
    Colorings {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        q: u64,
    },
    /// Nowhere-zero Z_q flows.
    Flows {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        q: u64,
    },
    /// Characteristic polynomial from broken circuits.
    ChiBc {
        #[arg(long)]
        matroid: String,
    },
}

#[derive(Subcommand)]
enum BenchCommand {
    FlowKn {
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlowMethod {
    Partitions,
    Egf,
    Tutte,
}

impl FlowMethod {
    fn name(self) -> &'static str {
        match self {
            FlowMethod::Partitions => "partitions",
            FlowMethod::Egf => "egf",
            FlowMethod::Tutte => "tutte",
        }
    }

    fn run(self, n: usize) -> Result<IntPoly> {
        match self {
            FlowMethod::Partitions => flow_kn_partitions(n),
            FlowMethod::Egf => flow_kn_egf(n),
            FlowMethod::Tutte => flow_poly(&complete_graph(n)),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChiMethod {
    Subset,
    Delcon,
    Bc,
    Tutte,
}

impl ChiMethod {
    fn name(self) -> &'static str {
        match self {
            ChiMethod::Subset => "subset",
            ChiMethod::Delcon => "delcon",
            ChiMethod::Bc => "bc",
            ChiMethod::Tutte => "tutte",
        }
    }
}

#[derive(Serialize)]
struct PolyJson {
    var: &'static str,
    coeffs: Vec<String>,
}

impl PolyJson {
    fn new(p: &IntPoly) -> Self {
        PolyJson {
            var: "x",
            coeffs: p.coeffs().iter().map(BigInt::to_string).collect(),
        }
    }
}

#[derive(Serialize)]
struct Term {
    dx: u32,
    dy: u32,
    c: String,
}

#[derive(Serialize)]
struct BiPolyJson {
    vars: [&'static str; 2],
    coeffs: Vec<Term>,
}

impl BiPolyJson {
    fn new(p: &BiPoly, vars: [&'static str; 2]) -> Self {
        let mut coeffs: Vec<Term> = p
            .terms()
            .map(|(dx, dy, c)| Term { dx, dy, c: c.to_string() })
            .collect();
        coeffs.sort_by_key(|t| (t.dx, t.dy));
        BiPolyJson { vars, coeffs }
    }
}

#[derive(Serialize)]
struct FlowKnOut {
    #[serde(serialize_with = "decimal")]
    n: usize,
    method: &'static str,
    #[serde(flatten)]
    poly: PolyJson,
}

#[derive(Serialize)]
struct ChiOut {
    matroid: String,
    method: &'static str,
    #[serde(flatten)]
    poly: PolyJson,
}

#[derive(Serialize)]
struct PgOut<P> {
    #[serde(serialize_with = "decimal")]
    n: usize,
    #[serde(serialize_with = "decimal")]
    q: u64,
    #[serde(flatten)]
    poly: P,
}

#[derive(Serialize)]
struct CountOut {
    oracle: &'static str,
    graph: String,
    #[serde(serialize_with = "decimal")]
    q: u64,
    count: String,
}

#[derive(Serialize)]
struct BenchRow {
    method: &'static str,
    #[serde(serialize_with = "decimal")]
    n: usize,
    #[serde(serialize_with = "decimal")]
    wall_ms: u128,
    checksum: String,
}

#[derive(Serialize)]
struct ErrorOut {
    error: &'static str,
    detail: String,
}

/// Numbers go out as decimal strings, like the coefficients.
fn decimal<T: ToString, S: serde::Serializer>(value: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

/// Sum of absolute coefficients modulo 2^64, in hex.
fn checksum(p: &IntPoly) -> String {
    let low = p.abs_sum().iter_u64_digits().next().unwrap_or(0);
    format!("{low:016x}")
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("output types serialize"));
}

fn read_graph(path: &str) -> Result<MultiGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    MultiGraph::from_json(&text)
}

fn parse_samples(text: &str) -> Result<Vec<BigRational>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_rational(s.trim())).collect()
}

fn chi_for(target: &Target, method: ChiMethod) -> Result<IntPoly> {
    let m = target.as_matroid();
    match method {
        ChiMethod::Subset => chi_subset(&*m),
        ChiMethod::Delcon => Ok(chi_delcon(&*m)),
        ChiMethod::Bc => chi_via_broken_circuits(&*m),
        ChiMethod::Tutte => Ok(chi_from_tutte(&tutte(&*m)?, m.full_rank())),
    }
}

/// Flow methods that can reach `K_n`: the subset route stops at the subset
/// enumeration limit.
fn bench_methods(n: usize) -> Vec<FlowMethod> {
    let mut out = vec![FlowMethod::Partitions, FlowMethod::Egf];
    if n * n.saturating_sub(1) / 2 <= matpoly_core::invariants::SUBSET_SUM_LIMIT {
        out.push(FlowMethod::Tutte);
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::FlowKn { n, method } => {
            let p = method.run(n)?;
            print_json(&FlowKnOut { n, method: method.name(), poly: PolyJson::new(&p) });
        }
        Command::Chi { matroid, method } => {
            let target = Target::parse(&matroid)?;
            let p = chi_for(&target, method)?;
            print_json(&ChiOut { matroid, method: method.name(), poly: PolyJson::new(&p) });
        }
        Command::ChiPgDual { n, q } => {
            let p = chi_pg_dual(n, q)?;
            print_json(&PgOut { n, q, poly: PolyJson::new(&p) });
        }
        Command::TuttePg { n, q } => {
            let t = tutte_pg(n, q)?;
            print_json(&PgOut { n, q, poly: BiPolyJson::new(&t, ["u", "v"]) });
        }
        Command::Verify { identity, matroid, samples } => {
            let kind: IdentityKind = identity.parse()?;
            let target = Target::parse(&matroid)?;
            let samples = match samples {
                Some(s) => parse_samples(&s)?,
                None => Vec::new(),
            };
            let report = verify_identity(kind, &target, &samples)?;
            print_json(&report);
            if !report.pass {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Oracle { which } => match which {
            OracleCommand::Colorings { graph, q } => {
                let count = count_colorings(&read_graph(&graph)?, q)?;
                print_json(&CountOut { oracle: "colorings", graph, q, count: count.to_string() });
            }
            OracleCommand::Flows { graph, q } => {
                let count = count_nz_flows(&read_graph(&graph)?, q)?;
                print_json(&CountOut { oracle: "flows", graph, q, count: count.to_string() });
            }
            OracleCommand::ChiBc { matroid } => {
                let target = Target::parse(&matroid)?;
                let p = chi_for(&target, ChiMethod::Bc)?;
                print_json(&ChiOut { matroid, method: "bc", poly: PolyJson::new(&p) });
            }
        },
        Command::Bench { which: BenchCommand::FlowKn { n_max } } => {
            let mut rows = Vec::new();
            let mut agree = true;
            for n in 1..=n_max {
                let mut first: Option<String> = None;
                for method in bench_methods(n) {
                    let start = Instant::now();
                    let p = method.run(n)?;
                    let wall_ms = start.elapsed().as_millis();
                    let sum = checksum(&p);
                    match &first {
                        Some(f) => agree &= *f == sum,
                        None => first = Some(sum.clone()),
                    }
                    rows.push(BenchRow { method: method.name(), n, wall_ms, checksum: sum });
                }
            }
            print_json(&rows);
            if !agree {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("MATPOLY_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::BadParams(format!("MATPOLY_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::BadParams(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            print_json(&ErrorOut { error: e.kind(), detail: e.to_string() });
            ExitCode::from(2)
        }
    }
}
