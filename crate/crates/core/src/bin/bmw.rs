use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use bmw_core::bmw::{BmwAlgebra, CacheError};
use bmw_core::cellmod::{gram, gram_det, gram_rank, GramBackend};
use bmw_core::classify::{classify_bmw, classify_brauer, BrauerDelta};
use bmw_core::coeff::{ParamSpec, RForm};
use bmw_core::combin::{cells, CellIndex, Partition};
use bmw_core::linalg;
use bmw_core::oracle::{singular_oracle, sweep, sweep_specs, DEFAULT_PRIMES};
use bmw_core::verify::{self, Report};

#[derive(Parser)]
#[command(
    name = "bmw",
    version,
    about = "Singular parameters and cell modules of BMW algebras"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory of structure-constant caches.
    #[arg(long, global = true, env = "BMW_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
    Csv,
}

/// Parameters, either as one spec string or as separate keys.
#[derive(Args, Clone, Default)]
struct SpecArgs {
    /// Whole spec, e.g. "r=-q e=7 p=0" or "p=5 q0=2 r0=3".
    #[arg(long)]
    spec: Option<String>,
    /// r as generic, ±1 or ±q^a.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Order of q^2, or inf.
    #[arg(long)]
    e: Option<String>,
    /// Characteristic (0 for zero).
    #[arg(long)]
    p: Option<u64>,
    /// Sign of q^e (+1 or -1).
    #[arg(long, allow_hyphen_values = true)]
    qe: Option<String>,
    /// Concrete q in GF(p).
    #[arg(long, allow_hyphen_values = true)]
    q0: Option<i64>,
    /// Concrete r in GF(p).
    #[arg(long, allow_hyphen_values = true)]
    r0: Option<i64>,
}

impl SpecArgs {
    fn given(&self) -> bool {
        self.spec.is_some()
            || self.r.is_some()
            || self.e.is_some()
            || self.p.is_some()
            || self.qe.is_some()
            || self.q0.is_some()
            || self.r0.is_some()
    }

    fn parse(&self) -> Result<ParamSpec, Failure> {
        let mut toks: Vec<String> = self.spec.iter().cloned().collect();
        let keys = [
            ("r", self.r.clone()),
            ("e", self.e.clone()),
            ("p", self.p.map(|p| p.to_string())),
            ("qe", self.qe.clone()),
            ("q0", self.q0.map(|x| x.to_string())),
            ("r0", self.r0.map(|x| x.to_string())),
        ];
        for (k, v) in keys {
            if let Some(v) = v {
                toks.push(format!("{k}={v}"));
            }
        }
        toks.join(" ")
            .parse()
            .map_err(|e| Failure::Usage(format!("--spec: {e}")))
    }
}

#[derive(Args, Clone)]
struct CellArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    f: u32,
    /// Partition of n - 2f, e.g. "(2,1)" or "()".
    #[arg(long)]
    lambda: String,
}

impl CellArgs {
    fn cell(&self) -> Result<CellIndex, Failure> {
        let lambda: Partition = self
            .lambda
            .parse()
            .map_err(|e| Failure::Usage(format!("--lambda: {e}")))?;
        CellIndex::new(self.n, self.f, lambda)
            .map_err(|e| Failure::Usage(format!("--f/--lambda: {e}")))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Direct,
    Inflation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    B1Formulas,
    Relations,
    Dims,
    OracleAgreement,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether (r, q) is singular for B_n.
    Classify {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Decide whether the Brauer algebra B_n(δ) is semisimple-singular.
    ClassifyBrauer {
        #[arg(long)]
        n: u32,
        /// An integer, or "non-integer".
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Characteristic (0 for zero).
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Gram matrix of a cell module, its determinant or its rank.
    Gram {
        #[command(flatten)]
        cell: CellArgs,
        /// Substitute r, e.g. r=q^-1 or r=-q.
        #[arg(long, allow_hyphen_values = true)]
        subst: Option<String>,
        /// Print the determinant as unit * core.
        #[arg(long)]
        det: bool,
        /// Print the rank over GF(p); needs a concrete spec.
        #[arg(long)]
        rank: bool,
        #[arg(long, value_enum, default_value = "inflation")]
        backend: Backend,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Cell dimensions of B_n.
    Dims {
        #[arg(long)]
        n: u32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest n (relations: exactly n).
        #[arg(long)]
        n: Option<u32>,
        /// Primes for oracle-agreement.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Brute-force singularity over GF(p).
    Oracle {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Oracle against theorem over many concrete specs.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Keep one spec per regime.
        #[arg(long)]
        dedup: bool,
    },
    /// Manage the structure-constant cache.
    Cache {
        /// Precompute and store the tables for B_n.
        #[arg(long)]
        warm: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn print_csv<T: Serialize>(rows: &[T]) -> Res<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn fmt_opt(b: Option<bool>) -> String {
    b.map_or("undecided".into(), |b| b.to_string())
}

/// Load a cached table file for `B_n`; stale or foreign files are skipped.
fn load_cache(dir: Option<&Path>, n: u32) {
    let Some(dir) = dir else { return };
    let alg = BmwAlgebra::get(n as usize);
    let path = alg.cache_path(dir);
    if !path.exists() {
        return;
    }
    match alg.load_tables(&path) {
        Ok(_) => {}
        Err(CacheError::Mismatch(m)) => eprintln!("ignoring cache {}: {m}", path.display()),
        Err(e) => eprintln!("ignoring cache {}: {e}", path.display()),
    }
}

fn run(cli: &Cli) -> Res<bool> {
    let cache = cli.cache_dir.as_deref();
    match &cli.command {
        Command::Classify { n, spec } => {
            let spec = spec.parse()?;
            let v = classify_bmw(*n, &spec)?;
            match cli.output.unwrap_or(Output::Json) {
                Output::Json => {
                    let mut j = serde_json::to_value(&v).unwrap();
                    j["n"] = json!(n);
                    j["spec"] = json!(spec.to_string());
                    print_json(&j);
                }
                Output::Text => {
                    println!("singular: {}\nclause: {}", fmt_opt(v.singular), v.clause);
                    if !v.notes.is_empty() {
                        println!("notes: {}", v.notes);
                    }
                }
                Output::Csv => print_csv(&[(n, spec.to_string(), fmt_opt(v.singular), &v.clause)])?,
            }
            Ok(true)
        }
        Command::ClassifyBrauer { n, delta, p } => {
            let d = match delta.as_str() {
                "non-integer" | "noninteger" => BrauerDelta::NonInteger,
                s => BrauerDelta::Integer(s.parse().map_err(|_| {
                    Failure::Usage(format!(
                        "--delta: expected an integer or non-integer, got {s:?}"
                    ))
                })?),
            };
            let p = if *p == 0 { None } else { Some(*p) };
            let v = classify_brauer(*n, d, p)?;
            match cli.output.unwrap_or(Output::Json) {
                Output::Text => println!("singular: {}\nclause: {}", fmt_opt(v.singular), v.clause),
                Output::Csv => {
                    print_csv(&[(n, delta, p.unwrap_or(0), fmt_opt(v.singular), &v.clause)])?
                }
                Output::Json => print_json(&v),
            }
            Ok(true)
        }
        Command::Gram {
            cell,
            subst,
            det,
            rank,
            backend,
            spec,
        } => {
            let cell = cell.cell()?;
            load_cache(cache, cell.n);
            let backend = match backend {
                Backend::Direct => GramBackend::Direct,
                Backend::Inflation => GramBackend::Inflation,
            };
            let mut g = (*gram(&cell, backend)?).clone();
            if let Some(s) = subst {
                let rhs = s
                    .strip_prefix("r=")
                    .ok_or_else(|| Failure::Usage(format!("--subst: expected r=..., got {s:?}")))?;
                match rhs.parse::<RForm>() {
                    Ok(RForm::Power { sign, exp }) => g = g.substitute_r(sign as i32, exp),
                    _ => {
                        return Err(Failure::Usage(format!(
                            "--subst: expected r=±q^a, got {s:?}"
                        )))
                    }
                }
            }
            let out = cli.output.unwrap_or(if *det || *rank {
                Output::Text
            } else {
                Output::Json
            });
            if *rank {
                let spec = spec.parse()?;
                let c = spec.as_concrete().ok_or_else(|| {
                    Failure::Usage("--rank needs a concrete spec (p, q0, r0)".into())
                })?;
                let r = if subst.is_some() {
                    linalg::rank_fp(&linalg::specialize(&g.entries, c)?)
                } else {
                    gram_rank(&cell, c)?
                };
                match out {
                    Output::Json => {
                        print_json(&json!({"cell": cell.to_string(), "dim": g.dim(), "rank": r}))
                    }
                    Output::Csv => print_csv(&[(cell.to_string(), g.dim(), r)])?,
                    Output::Text => println!("rank {r} of {}", g.dim()),
                }
            } else if *det {
                if spec.given() {
                    return Err(Failure::Usage(
                        "--det is symbolic; use --rank with a spec".into(),
                    ));
                }
                if g.dim() > 64 {
                    return Err(Failure::Domain(format!(
                        "symbolic determinants stop at dimension 64 (cell has {}); use --rank",
                        g.dim()
                    )));
                }
                let d = gram_det(&g);
                let text = match d.normalize_unit() {
                    Ok((_, core)) => format!("unit * ({core})"),
                    Err(_) => "0".into(),
                };
                match out {
                    Output::Json => {
                        let unit = d.normalize_unit().ok().map(|(u, _)| u.to_string());
                        print_json(
                            &json!({"cell": cell.to_string(), "det": d.to_string(), "unit": unit, "normalized": text}),
                        )
                    }
                    Output::Csv => print_csv(&[(cell.to_string(), text)])?,
                    Output::Text => println!("{text}"),
                }
            } else {
                match out {
                    Output::Json => print_json(&g.to_json()),
                    Output::Csv => {
                        let rows: Vec<Vec<String>> = g
                            .entries
                            .iter()
                            .map(|r| r.iter().map(|x| x.to_string()).collect())
                            .collect();
                        print_csv(&rows)?
                    }
                    Output::Text => {
                        println!("Gram matrix of {} (dim {})", cell, g.dim());
                        for (i, row) in g.entries.iter().enumerate() {
                            for (j, x) in row.iter().enumerate().skip(i) {
                                if !x.is_zero() {
                                    println!("[{i},{j}] {x}");
                                }
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Dims { n } => {
            #[derive(Serialize)]
            struct Row {
                f: u32,
                lambda: String,
                dim: u128,
            }
            let rows: Vec<Row> = cells(*n)
                .into_iter()
                .map(|c| Row {
                    f: c.f,
                    dim: c.dim(),
                    lambda: c.lambda.to_string(),
                })
                .collect();
            let total: u128 = rows.iter().map(|r| r.dim * r.dim).sum();
            match cli.output.unwrap_or(Output::Text) {
                Output::Json => {
                    print_json(&json!({"n": n, "cells": rows, "sum_of_squares": total}))
                }
                Output::Csv => print_csv(&rows)?,
                Output::Text => {
                    println!("{:>3}  {:<16} {:>10}", "f", "lambda", "dim");
                    for r in &rows {
                        println!("{:>3}  {:<16} {:>10}", r.f, r.lambda, r.dim);
                    }
                    println!("sum of dim^2 = {total}");
                }
            }
            Ok(true)
        }
        Command::Verify { suite, n, primes } => {
            let reports: Vec<Report> = match suite {
                Suite::B1Formulas => {
                    for k in [2, 3, 4, 5] {
                        load_cache(cache, k);
                    }
                    vec![verify::b1_formulas()?]
                }
                Suite::Relations => {
                    let n = n.unwrap_or(4);
                    if !(2..=6).contains(&n) {
                        return Err(Failure::Usage("--n: relations run for 2 <= n <= 6".into()));
                    }
                    load_cache(cache, n);
                    vec![verify::relations(n as usize)]
                }
                Suite::Dims => (1..=n.unwrap_or(6)).map(verify::dims).collect(),
                Suite::OracleAgreement => {
                    let top = n.unwrap_or(4);
                    let ns: Vec<u32> = (2..=top).collect();
                    for &k in &ns {
                        load_cache(cache, k);
                    }
                    let primes = primes.clone().unwrap_or(DEFAULT_PRIMES.to_vec());
                    vec![verify::oracle_agreement(&ns, &primes)?]
                }
            };
            let ok = reports.iter().all(|r| r.all_pass());
            match cli.output.unwrap_or(Output::Text) {
                Output::Json => print_json(&reports),
                Output::Csv => {
                    let rows: Vec<_> = reports
                        .iter()
                        .flat_map(|r| {
                            r.checks
                                .iter()
                                .map(move |c| (&r.suite, &c.name, c.pass, &c.computed, &c.expected))
                        })
                        .collect();
                    print_csv(&rows)?
                }
                Output::Text => {
                    for r in &reports {
                        for c in &r.checks {
                            if c.pass {
                                println!("PASS {}", c.name);
                            } else {
                                println!(
                                    "FAIL {}\n  computed {}\n  expected {}",
                                    c.name, c.computed, c.expected
                                );
                            }
                        }
                        println!("{}: {}/{} passed", r.suite, r.passed(), r.checks.len());
                    }
                }
            }
            Ok(ok)
        }
        Command::Oracle { n, spec } => {
            let spec = spec.parse()?;
            let c = spec
                .as_concrete()
                .ok_or_else(|| Failure::Usage("oracle needs a concrete spec (p, q0, r0)".into()))?;
            load_cache(cache, *n);
            let rep = singular_oracle(*n, c)?;
            match cli.output.unwrap_or(Output::Json) {
                Output::Json => print_json(&rep),
                Output::Csv => {
                    let rows: Vec<_> = rep
                        .table
                        .iter()
                        .map(|r| (r.cell.f, r.cell.lambda.to_string(), r.dim_p, r.dim_simple))
                        .collect();
                    print_csv(&rows)?
                }
                Output::Text => {
                    println!("singular: {}", rep.singular);
                    if let Some(w) = &rep.first_witness {
                        println!("witness: {w}");
                    }
                    for r in &rep.table {
                        println!(
                            "{:<16} dim P = {:>5}  dim D = {:>5}",
                            r.cell.to_string(),
                            r.dim_p,
                            r.dim_simple
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Sweep { n, primes, dedup } => {
            for &k in n {
                if !(1..=6).contains(&k) {
                    return Err(Failure::Usage(format!("--n: {k} is outside 1..=6")));
                }
                load_cache(cache, k);
            }
            let primes = primes.clone().unwrap_or(DEFAULT_PRIMES.to_vec());
            let rows = sweep(n, &sweep_specs(&primes, *dedup))?;
            let agree = rows.iter().filter(|r| r.agrees()).count();
            match cli.output.unwrap_or(Output::Csv) {
                Output::Csv => print_csv(&rows)?,
                Output::Json => print_json(&rows),
                Output::Text => {
                    for r in rows.iter().filter(|r| !r.agrees()) {
                        println!(
                            "disagree n={} p={} q0={} r0={} oracle={} theorem={} ({})",
                            r.n,
                            r.p,
                            r.q0,
                            r.r0,
                            r.oracle,
                            fmt_opt(r.theorem),
                            r.clause
                        );
                    }
                    println!("{agree}/{} agree", rows.len());
                }
            }
            Ok(agree == rows.len())
        }
        Command::Cache { warm } => {
            let Some(dir) = cache else {
                return Err(Failure::Usage(
                    "cache needs --cache-dir or BMW_CACHE_DIR".into(),
                ));
            };
            let Some(n) = warm else {
                for entry in std::fs::read_dir(dir)? {
                    println!("{}", entry?.path().display());
                }
                return Ok(true);
            };
            if !(1..=6).contains(n) {
                return Err(Failure::Usage(format!("--warm: {n} is outside 1..=6")));
            }
            let alg = BmwAlgebra::get(*n as usize);
            let path = alg.cache_path(dir);
            load_cache(cache, *n);
            alg.warm_up();
            let k = alg.save_tables(&path)?;
            match cli.output.unwrap_or(Output::Text) {
                Output::Json => print_json(&json!({"n": n, "path": path, "entries": k})),
                Output::Csv => print_csv(&[(n, path.display().to_string(), k)])?,
                Output::Text => println!("wrote {k} table entries to {}", path.display()),
            }
            Ok(true)
        }
    }
}
