//! Command-line front end for the `bgslab` library.
//!
//! Exit status: 0 on success, 1 when a verification comes back false, 2 on
//! usage or input errors.

pub mod cache;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use bgslab::bgs::{counterexample, BgsPair};
use bgslab::codec::{
    decode_cnf, encode_cnf, pair, parse_dimacs, to_dyadic, triple_decode, triple_encode, unpair,
    DecodedCnf, InvalidCnf,
};
use bgslab::quasitrivial::{build_qt, embed, restriction_table, verify_lemma};
use bgslab::sat::{decide, decide_formula, verify_pair};
use bgslab::tm::{decode_machine, run_traced, Move, Next, TraceStep};
use bgslab::{
    ClockSpec, CnfFormula, CounterexampleResult, FuelExhausted, Natural, QtError, QtLimits,
    RunResult, TransitionTable,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::config::Config;
use crate::report::{nat, status, Format, Report, Row};

/// Environment variable that overrides the configured cache path.
pub const CACHE_ENV: &str = "BGSLAB_CACHE";

#[derive(Parser, Debug)]
#[command(
    name = "bgslab",
    version,
    about = "Clocked Turing machines, SAT counterexamples, quasi-trivial embeddings"
)]
struct Cli {
    /// Flat key = value configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cantor pairing ⟨x, y⟩.
    Pair {
        #[arg(value_parser = parse_nat)]
        x: Natural,
        #[arg(value_parser = parse_nat)]
        y: Natural,
    },
    /// Inverse of `pair`.
    Unpair {
        #[arg(value_parser = parse_nat)]
        z: Natural,
    },
    /// ⟨m, ⟨a, b⟩⟩, or its inverse with --decode.
    Triple {
        #[arg(long, value_parser = parse_nat, value_name = "N", conflicts_with_all = ["m", "a", "b"])]
        decode: Option<Natural>,
        #[arg(value_parser = parse_nat, required_unless_present = "decode")]
        m: Option<Natural>,
        #[arg(value_parser = parse_nat, required_unless_present = "decode")]
        a: Option<Natural>,
        #[arg(value_parser = parse_nat, required_unless_present = "decode")]
        b: Option<Natural>,
    },
    /// Formula code of a DIMACS file or of clauses given as signed literals ("1 -2" "2").
    #[command(name = "cnf-encode")]
    CnfEncode {
        #[arg(long, value_name = "FILE", conflicts_with = "clauses")]
        dimacs: Option<PathBuf>,
        #[arg(allow_hyphen_values = true, value_name = "CLAUSE")]
        clauses: Vec<String>,
    },
    /// Decodes a formula code to DIMACS.
    #[command(name = "cnf-decode")]
    CnfDecode {
        #[arg(value_parser = parse_nat)]
        x: Natural,
    },
    /// Runs a machine, optionally under a clock.
    Run(RunArgs),
    /// The verifier V and the decider T.
    #[command(subcommand)]
    Sat(SatCommand),
    /// BGS pairs and the counterexample function.
    #[command(subcommand)]
    Bgs(BgsCommand),
    /// Quasi-trivial machines T^k and their embedding.
    #[command(subcommand)]
    Qt(QtCommand),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Machine file.
    #[arg(
        long,
        value_name = "FILE",
        required_unless_present = "godel",
        conflicts_with = "godel"
    )]
    machine: Option<PathBuf>,
    /// Gödel number of the machine instead of a file.
    #[arg(long, value_parser = parse_nat, value_name = "M")]
    godel: Option<Natural>,
    #[arg(long, value_parser = parse_nat, value_name = "N")]
    input: Natural,
    /// Clock `A,B`, giving |x|^A + B steps.
    #[arg(long, value_parser = parse_clock, value_name = "A,B")]
    clock: Option<ClockSpec>,
    /// Step limit for unclocked runs.
    #[arg(long, default_value_t = 1_000_000)]
    fuel: u64,
    #[arg(long)]
    trace: bool,
}

#[derive(Subcommand, Debug)]
enum SatCommand {
    /// V(⟨x, y⟩).
    Verify {
        #[arg(long, value_parser = parse_nat, conflicts_with_all = ["x", "y"], required_unless_present_all = ["x", "y"])]
        z: Option<Natural>,
        #[arg(long, value_parser = parse_nat, requires = "y")]
        x: Option<Natural>,
        #[arg(long, value_parser = parse_nat, requires = "x")]
        y: Option<Natural>,
    },
    /// T(x): satisfiability and least witness.
    Decide {
        #[arg(long, value_parser = parse_nat, required_unless_present = "dimacs", conflicts_with = "dimacs")]
        x: Option<Natural>,
        #[arg(long, value_name = "FILE")]
        dimacs: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum BgsCommand {
    /// Runs the clocked pair named by an index.
    Run {
        #[arg(long, value_parser = parse_nat, value_name = "N")]
        index: Natural,
        #[arg(long, value_parser = parse_nat, value_name = "X")]
        input: Natural,
    },
    /// Budgeted f_¬G(n).
    Counterexample {
        #[arg(long, value_parser = parse_nat, value_name = "N")]
        index: Natural,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
    },
    /// f_¬G over the indices FROM..=TO.
    Scan {
        #[arg(long, value_parser = parse_nat, value_name = "N0")]
        from: Natural,
        #[arg(long, value_parser = parse_nat, value_name = "N1")]
        to: Natural,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
        /// Adds wall-clock milliseconds to each row.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand, Debug)]
enum QtCommand {
    /// Compiles T^k; prints the machine file unless --out is given.
    Build {
        #[arg(long, value_name = "K")]
        cutoff: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// N(m) = ⟨m, 2, b_m⟩ for T^k.
    Embed {
        #[arg(long, value_name = "K")]
        cutoff: u64,
    },
    /// Build, measure, embed, and check each cutoff in A..B.
    Verify {
        #[arg(long, value_parser = parse_range, value_name = "A..B")]
        cutoffs: (u64, u64),
        /// Defaults to zPred(k) + 1 per cutoff.
        #[arg(long)]
        budget: Option<u64>,
        /// Clock check covers x ≤ k + W.
        #[arg(long, default_value_t = 200, value_name = "W")]
        window: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// f* on the unclocked T^k next to f_¬G(N(m)), for each cutoff in A..B.
    Restrict {
        #[arg(long, value_parser = parse_range, value_name = "A..B")]
        cutoffs: (u64, u64),
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn parse_nat(s: &str) -> Result<Natural, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a natural number"));
    }
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_clock(s: &str) -> Result<ClockSpec, String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let num = |v: &str| v.trim().parse::<u64>().map_err(|e| format!("{v:?}: {e}"));
    ClockSpec::new(num(a)?, num(b)?).map_err(|e| e.to_string())
}

/// `A..B` inclusive, or a single `K`.
fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let num = |v: &str| v.trim().parse::<u64>().map_err(|e| format!("{v:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b)?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// Result of a command that did not hit an input error.
enum Outcome {
    Done(Report),
    /// A verification returned false; the report is still printed.
    Failed(Report, Vec<String>),
}

struct Ctx {
    config: Config,
    format: Format,
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit status.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, err) {
        Ok((outcome, format)) => {
            let (report, failures) = match outcome {
                Outcome::Done(r) => (r, Vec::new()),
                Outcome::Failed(r, f) => (r, f),
            };
            let _ = out.write_all(report.render(format).as_bytes());
            for f in &failures {
                let _ = writeln!(err, "verification failed: {f}");
            }
            if failures.is_empty() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn execute(cli: Cli, err: &mut dyn Write) -> Result<(Outcome, Format)> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let ctx = Ctx {
        format: cli.format.unwrap_or(config.output_format),
        config,
    };
    let outcome = match cli.command {
        Command::Pair { x, y } => {
            let z = pair(&x, &y);
            let text = format!("{z}\n");
            Outcome::Done(
                Report::one(
                    "pair",
                    row([("x", nat(&x)), ("y", nat(&y)), ("z", nat(&z))]),
                )
                .with_text(text),
            )
        }
        Command::Unpair { z } => {
            let (x, y) = unpair(&z);
            let text = format!("{x} {y}\n");
            Outcome::Done(
                Report::one(
                    "unpair",
                    row([("z", nat(&z)), ("x", nat(&x)), ("y", nat(&y))]),
                )
                .with_text(text),
            )
        }
        Command::Triple { decode, m, a, b } => {
            let decoding = decode.is_some();
            let (m, a, b, n) = match (decode, m, a, b) {
                (Some(n), ..) => {
                    let (m, a, b) = triple_decode(&n);
                    (m, a, b, n)
                }
                (None, Some(m), Some(a), Some(b)) => {
                    let n = triple_encode(&m, &a, &b);
                    (m, a, b, n)
                }
                _ => bail!("triple needs M A B or --decode N"),
            };
            let text = if decoding {
                format!("{m} {a} {b}\n")
            } else {
                format!("{n}\n")
            };
            let r = row([
                ("m", nat(&m)),
                ("a", nat(&a)),
                ("b", nat(&b)),
                ("n", nat(&n)),
            ]);
            Outcome::Done(Report::one("triple", r).with_text(text))
        }
        Command::CnfEncode { dimacs, clauses } => {
            let formula = match dimacs {
                Some(path) => parse_dimacs(&read(&path)?)?,
                None => parse_clauses(&clauses)?,
            };
            let x = encode_cnf(&formula)?;
            let r = row([
                ("x", nat(&x)),
                ("var_count", json!(formula.var_count())),
                ("clauses", json!(formula.clauses.len())),
            ]);
            Outcome::Done(Report::one("cnf-encode", r).with_text(format!("{x}\n")))
        }
        Command::CnfDecode { x } => {
            let report = match decode_cnf(&x) {
                DecodedCnf::Valid(f) => {
                    let r = row([
                        ("x", nat(&x)),
                        ("valid", json!(true)),
                        ("var_count", json!(f.var_count())),
                        ("clauses", json!(f.clauses.len())),
                        ("signed", clauses_json(&f)),
                        ("reason", Value::Null),
                    ]);
                    Report::one("cnf-decode", r).with_text(f.to_string())
                }
                DecodedCnf::Invalid(why) => {
                    let reason = match why {
                        InvalidCnf::LiteralBelowTwo => "literal code below 2",
                        InvalidCnf::VariableOutOfRange => "variable out of range",
                    };
                    let r = row([
                        ("x", nat(&x)),
                        ("valid", json!(false)),
                        ("var_count", Value::Null),
                        ("clauses", Value::Null),
                        ("signed", Value::Null),
                        ("reason", json!(reason)),
                    ]);
                    Report::one("cnf-decode", r).with_text(format!("invalid: {reason}\n"))
                }
            };
            Outcome::Done(report)
        }
        Command::Run(args) => run_machine(args)?,
        Command::Sat(cmd) => sat(cmd, &ctx)?,
        Command::Bgs(cmd) => bgs(cmd, &ctx, err)?,
        Command::Qt(cmd) => qt(cmd, &ctx)?,
    };
    Ok((outcome, ctx.format))
}

fn row<const N: usize>(pairs: [(&str, Value); N]) -> Row {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_clauses(clauses: &[String]) -> Result<CnfFormula> {
    let signed: Vec<Vec<i64>> = clauses
        .iter()
        .map(|c| {
            c.split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|e| anyhow!("literal {t:?}: {e}")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&[i64]> = signed.iter().map(Vec::as_slice).collect();
    Ok(CnfFormula::from_signed(&refs)?)
}

fn clauses_json(f: &CnfFormula) -> Value {
    Value::Array(
        f.clauses
            .iter()
            .map(|c| Value::Array(c.iter().map(|l| json!(l.signed())).collect()))
            .collect(),
    )
}

fn dyadic_json(v: &Natural) -> Value {
    json!(to_dyadic(v))
}

fn trace_line(s: &TraceStep) -> String {
    let next = match s.transition.next {
        Next::State(q) => q.to_string(),
        Next::Halt => "HALT".into(),
    };
    let mv = match s.transition.mv {
        Move::L => 'L',
        Move::R => 'R',
    };
    format!(
        "{:>6}  q{} @{} {} -> {} {} {}",
        s.step,
        s.state,
        s.head,
        s.read.as_char(),
        next,
        s.transition.write.as_char(),
        mv
    )
}

fn trace_json(s: &TraceStep) -> Value {
    let next = match s.transition.next {
        Next::State(q) => json!(q),
        Next::Halt => json!("HALT"),
    };
    json!({
        "step": s.step,
        "state": s.state,
        "head": s.head,
        "read": s.read.as_char().to_string(),
        "next": next,
        "write": s.transition.write.as_char().to_string(),
        "move": if s.transition.mv == Move::L { "L" } else { "R" },
    })
}

fn run_machine(args: RunArgs) -> Result<Outcome> {
    let table = match (&args.machine, &args.godel) {
        (Some(path), _) => read(path)?
            .parse::<TransitionTable>()
            .with_context(|| format!("parsing {}", path.display()))?,
        (None, Some(m)) => decode_machine(m),
        (None, None) => bail!("run needs --machine FILE or --godel M"),
    };
    let limit = match args.clock {
        Some(c) => c.bound_for(&args.input),
        None => args.fuel,
    };
    let mut steps = Vec::new();
    let traced = run_traced(&table, &args.input, limit, &mut |s| {
        if args.trace {
            steps.push(*s)
        }
    });
    let (result, failure) = match (traced, args.clock) {
        (Ok(r), _) => (r, None),
        (Err(FuelExhausted { steps }), Some(_)) => (
            RunResult {
                output: Natural::default(),
                steps,
                interrupted: true,
            },
            None,
        ),
        (Err(FuelExhausted { steps }), None) => (
            RunResult {
                output: Natural::default(),
                steps,
                interrupted: true,
            },
            Some(format!("machine still running after {steps} steps")),
        ),
    };
    let base = row([
        ("input", nat(&args.input)),
        ("output", nat(&result.output)),
        ("output_bits", dyadic_json(&result.output)),
        ("steps", json!(result.steps)),
        ("interrupted", json!(result.interrupted)),
        ("limit", json!(limit)),
        ("clocked", json!(args.clock.is_some())),
    ]);
    let mut report = Report::one("run", base.clone());
    if args.trace {
        let mut text: String = steps.iter().map(|s| trace_line(s) + "\n").collect();
        text.push_str(&report.table());
        let mut full = base;
        full.insert(
            "trace".into(),
            Value::Array(steps.iter().map(trace_json).collect()),
        );
        report = Report::one("run", full).with_text(text);
    }
    Ok(match failure {
        Some(f) => Outcome::Failed(report, vec![f]),
        None => Outcome::Done(report),
    })
}

fn sat(cmd: SatCommand, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        SatCommand::Verify { z, x, y } => {
            let (x, y) = match (z, x, y) {
                (Some(z), ..) => unpair(&z),
                (None, Some(x), Some(y)) => (x, y),
                _ => bail!("sat verify needs --z N or --x N --y N"),
            };
            let z = pair(&x, &y);
            let ok = verify_pair(&x, &y);
            let report = Report::one(
                "sat-verify",
                row([
                    ("x", nat(&x)),
                    ("y", nat(&y)),
                    ("z", nat(&z)),
                    ("valid", json!(ok)),
                ]),
            );
            Ok(if ok {
                Outcome::Done(report)
            } else {
                Outcome::Failed(report, vec![format!("V({z}) = 0 for x = {x}, y = {y}")])
            })
        }
        SatCommand::Decide { x, dimacs } => {
            let limit = ctx.config.var_count_max;
            let (x, width, result) = match (x, dimacs) {
                (_, Some(path)) => {
                    let f = parse_dimacs(&read(&path)?)?;
                    let x = encode_cnf(&f)?;
                    (x, Some(f.var_count()), decide_formula(&f, limit)?)
                }
                (Some(x), None) => {
                    let width = decode_cnf(&x).valid().map(CnfFormula::var_count);
                    let d = decide(&x, limit)?;
                    (x, width, d)
                }
                (None, None) => bail!("sat decide needs --x N or --dimacs FILE"),
            };
            let r = row([
                ("x", nat(&x)),
                ("var_count", json!(width)),
                ("satisfiable", json!(result.satisfiable)),
                ("witness", nat(&result.witness)),
                ("witness_bits", dyadic_json(&result.witness)),
            ]);
            Ok(Outcome::Done(Report::one("sat-decide", r)))
        }
    }
}

fn cache_for(flag: Option<PathBuf>, ctx: &Ctx) -> Option<PathBuf> {
    flag.or_else(|| {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
    .or_else(|| ctx.config.cache_path.clone())
}

fn open_cache(path: Option<PathBuf>, err: &mut dyn Write) -> Option<Cache> {
    let cache = Cache::open(&path?);
    for w in &cache.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Some(cache)
}

fn close_cache(cache: Option<Cache>, err: &mut dyn Write) {
    if let Some(mut c) = cache {
        if let Err(e) = c.save() {
            let _ = writeln!(err, "warning: could not write cache: {e}");
        }
    }
}

fn index_fields(pair: &BgsPair) -> Row {
    row([
        ("n", nat(&pair.index.n)),
        ("m", nat(&pair.index.m)),
        ("a", nat(&pair.index.a)),
        ("b", nat(&pair.index.b)),
    ])
}

fn search_fields(row: &mut Row, r: &CounterexampleResult) {
    row.insert("status".into(), json!(status(r)));
    row.insert("z".into(), json!(r.z));
    row.insert("x".into(), json!(r.x()));
}

fn bgs(cmd: BgsCommand, ctx: &Ctx, err: &mut dyn Write) -> Result<Outcome> {
    let budget_or = |b: Option<u64>| -> Result<u64> {
        match b.unwrap_or(ctx.config.budget_default) {
            0 => bail!("budget must be at least 1"),
            b => Ok(b),
        }
    };
    match cmd {
        BgsCommand::Run { index, input } => {
            let p = BgsPair::decode(&index);
            let r = p.run(&input);
            let mut fields = index_fields(&p);
            fields.insert("input".into(), nat(&input));
            fields.insert("output".into(), nat(&r.output));
            fields.insert("steps".into(), json!(r.steps));
            fields.insert("interrupted".into(), json!(r.interrupted));
            fields.insert("bound".into(), json!(p.clock.bound_for(&input)));
            Ok(Outcome::Done(Report::one("bgs-run", fields)))
        }
        BgsCommand::Counterexample {
            index,
            budget,
            cache,
        } => {
            let budget = budget_or(budget)?;
            let p = BgsPair::decode(&index);
            let mut cache = open_cache(cache_for(cache, ctx), err);
            let r = match cache.as_mut() {
                Some(c) => c.counterexample(&p, budget),
                None => counterexample(&p, budget),
            };
            close_cache(cache, err);
            let mut fields = index_fields(&p);
            search_fields(&mut fields, &r);
            fields.insert("y".into(), json!(r.y()));
            fields.insert("scanned".into(), json!(r.scanned));
            fields.insert("budget".into(), json!(r.budget));
            Ok(Outcome::Done(Report::one("bgs-counterexample", fields)))
        }
        BgsCommand::Scan {
            from,
            to,
            budget,
            out,
            cache,
            timing,
        } => {
            let budget = budget_or(budget)?;
            if from > to {
                bail!("empty index range {from}..{to}");
            }
            let mut cache = open_cache(cache_for(cache, ctx), err);
            let mut rows = Vec::new();
            let (mut found, mut exhausted) = (0u64, 0u64);
            let mut n = from.clone();
            while n <= to {
                let p = BgsPair::decode(&n);
                let start = Instant::now();
                let r = match cache.as_mut() {
                    Some(c) => c.counterexample(&p, budget),
                    None => counterexample(&p, budget),
                };
                let millis = start.elapsed().as_millis() as u64;
                if r.is_found() {
                    found += 1;
                } else {
                    exhausted += 1;
                }
                let mut fields = index_fields(&p);
                search_fields(&mut fields, &r);
                fields.insert("scanned".into(), json!(r.scanned));
                if timing {
                    fields.insert("millis".into(), json!(millis));
                }
                rows.push(fields);
                n += 1u32;
            }
            close_cache(cache, err);
            let summary = row([
                ("from", nat(&from)),
                ("to", nat(&to)),
                ("budget", json!(budget)),
                ("found", json!(found)),
                ("exhausted", json!(exhausted)),
            ]);
            let report = Report::many("bgs-scan", rows, summary);
            if let Some(path) = out {
                write_file(&path, &report.json())?;
            }
            Ok(Outcome::Done(report))
        }
    }
}

fn limits(ctx: &Ctx) -> QtLimits {
    QtLimits {
        k_max: ctx.config.k_max,
        width_limit: ctx.config.var_count_max,
    }
}

fn cutoff_list((a, b): (u64, u64)) -> Vec<u64> {
    (a..=b).collect()
}

fn budget_error(e: QtError) -> anyhow::Error {
    match e {
        QtError::BudgetTooSmall { budget, needed } => anyhow!(
            "budget {budget} stops before the predicted counterexample; use --budget {needed} or more, or omit it"
        ),
        other => other.into(),
    }
}

fn qt(cmd: QtCommand, ctx: &Ctx) -> Result<Outcome> {
    let limits = limits(ctx);
    match cmd {
        QtCommand::Build { cutoff, out } => {
            let q = build_qt(cutoff, &limits)?;
            let r = embed(&q);
            let text = q.table.to_string();
            let fields = row([
                ("k", json!(q.k)),
                ("states", json!(q.table.state_count())),
                ("transitions", json!(q.table.transition_count())),
                ("b_m", json!(r.b_m)),
                ("m_bits", json!(q.m.bits())),
                ("m", nat(&q.m)),
            ]);
            let report = match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    Report::one("qt-build", fields)
                }
                None => Report::one("qt-build", fields).with_text(text),
            };
            Ok(Outcome::Done(report))
        }
        QtCommand::Embed { cutoff } => {
            let q = build_qt(cutoff, &limits)?;
            let r = embed(&q);
            let fields = row([
                ("k", json!(r.k)),
                ("m", nat(&r.m)),
                ("a", json!(r.clock().a())),
                ("b_m", json!(r.b_m)),
                ("N", nat(&r.index.n)),
            ]);
            Ok(Outcome::Done(Report::one("qt-embed", fields)))
        }
        QtCommand::Verify {
            cutoffs,
            budget,
            window,
            out,
        } => {
            if budget == Some(0) {
                bail!("budget must be at least 1");
            }
            let rows = verify_lemma(&cutoff_list(cutoffs), budget, window, &limits)
                .map_err(budget_error)?;
            let mut failures = Vec::new();
            let mut out_rows = Vec::new();
            for r in &rows {
                let c = &r.crucial;
                let mut fields = row([
                    ("k", json!(r.record.k)),
                    ("m", nat(&r.record.m)),
                    ("b_m", json!(r.record.b_m)),
                    ("N", nat(&r.record.index.n)),
                ]);
                search_fields(&mut fields, &c.result);
                fields.insert("zPred".into(), json!(c.predicted.z));
                fields.insert("budget".into(), json!(c.result.budget));
                fields.insert("no_interrupt".into(), json!(r.no_interrupt.ok));
                fields.insert("checked".into(), json!(r.no_interrupt.checked));
                fields.insert("pass".into(), json!(r.pass));
                out_rows.push(fields);
                if !r.no_interrupt.ok {
                    failures.push(format!(
                        "k = {}: clock C_(2,{}) interrupts or changes the run on x = {}",
                        r.record.k,
                        r.record.b_m,
                        r.no_interrupt
                            .offending
                            .map_or("?".into(), |x| x.to_string())
                    ));
                }
                if !c.pass {
                    failures.push(format!(
                        "k = {}: f(N(m)) = {} but zPred = {}",
                        r.record.k,
                        c.result.z.map_or("none".into(), |z| z.to_string()),
                        c.predicted.z
                    ));
                }
            }
            let summary = row([
                ("cutoffs", json!(format!("{}..{}", cutoffs.0, cutoffs.1))),
                ("budget", budget.map_or(json!("auto"), |b| json!(b))),
                ("window", json!(window)),
                ("pass", json!(failures.is_empty())),
            ]);
            let report = Report::many("qt-verify", out_rows, summary);
            if let Some(path) = out {
                write_file(&path, &report.json())?;
            }
            Ok(if failures.is_empty() {
                Outcome::Done(report)
            } else {
                Outcome::Failed(report, failures)
            })
        }
        QtCommand::Restrict {
            cutoffs,
            budget,
            out,
        } => {
            if budget == Some(0) {
                bail!("budget must be at least 1");
            }
            let rows =
                restriction_table(&cutoff_list(cutoffs), budget, &limits).map_err(budget_error)?;
            let mut failures = Vec::new();
            let out_rows: Vec<Row> = rows
                .iter()
                .map(|r| {
                    if !r.identity {
                        failures.push(format!(
                            "k = {}: f* = {:?} but f(N(m)) = {:?}",
                            r.k, r.f_star.z, r.f_bgs.z
                        ));
                    }
                    row([
                        ("k", json!(r.k)),
                        ("m", nat(&r.m)),
                        ("b_m", json!(r.b_m)),
                        ("N", nat(&r.n)),
                        ("f_star", json!(r.f_star.z)),
                        ("f_bgs", json!(r.f_bgs.z)),
                        ("identity", json!(r.identity)),
                    ])
                })
                .collect();
            let summary = row([
                ("cutoffs", json!(format!("{}..{}", cutoffs.0, cutoffs.1))),
                ("budget", budget.map_or(json!("auto"), |b| json!(b))),
                ("pass", json!(failures.is_empty())),
            ]);
            let report = Report::many("qt-restrict", out_rows, summary);
            if let Some(path) = out {
                write_file(&path, &report.json())?;
            }
            Ok(if failures.is_empty() {
                Outcome::Done(report)
            } else {
                Outcome::Failed(report, failures)
            })
        }
    }
}
