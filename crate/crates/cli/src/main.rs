//! Command-line front end: load a knowledge-base file, answer one query.
//!
//! Exit codes: 0 for an answer, 1 when the base is contradictory, 2 for any
//! input problem (unreadable file, parse errors, unknown variable, bad
//! order).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use idemval::engine::Heuristic;
use idemval::kb::{parse_kb, run_query, serialize_result, EmitMode, QueryOptions, Status};
use idemval::RepKind;

#[derive(Parser)]
#[command(name = "idemval", version, about = "Inference over idempotent valuation knowledge bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the marginal of the whole base on one variable.
    Query(QueryArgs),
}

#[derive(Args)]
struct QueryArgs {
    /// Knowledge-base file.
    #[arg(long)]
    kb: PathBuf,
    /// Query variable.
    #[arg(long)]
    target: String,
    /// Representation of the answer (defaults to the base's own kind).
    #[arg(long, value_enum)]
    rep: Option<RepArg>,
    /// Elimination order: `mindegree`, `minfill` or `given:v1,v2,...`.
    #[arg(long)]
    order: Option<String>,
    /// Print one line per deletion step to standard error.
    #[arg(long)]
    trace: bool,
    /// What to print on standard output.
    #[arg(long, value_enum, default_value_t = EmitArg::Basic)]
    emit: EmitArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepArg {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    /// Basic valuations of the answer, one statement per line.
    Basic,
    /// The materialized answer (frame values / interval endpoints).
    Explicit,
}

fn parse_order(vars: &idemval::VarTable, text: &str) -> anyhow::Result<Heuristic> {
    match text {
        "mindegree" => Ok(Heuristic::MinDegree),
        "minfill" => Ok(Heuristic::MinFill),
        other => {
            let Some(list) = other.strip_prefix("given:") else {
                anyhow::bail!("unknown order heuristic `{other}`");
            };
            let mut ids = Vec::new();
            for name in list.split(',') {
                let name = name.trim();
                let id = vars
                    .lookup(name)
                    .with_context(|| format!("unknown variable `{name}` in --order"))?;
                ids.push(id);
            }
            Ok(Heuristic::Given(ids))
        }
    }
}

fn run(args: QueryArgs) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(&args.kb)
        .with_context(|| format!("cannot read {}", args.kb.display()))?;
    let kb = match parse_kb(&text) {
        Ok(kb) => kb,
        Err(errors) => {
            for e in &errors {
                eprintln!("{}: {e}", args.kb.display());
            }
            anyhow::bail!("{} error(s) in {}", errors.len(), args.kb.display());
        }
    };
    let order = args
        .order
        .as_deref()
        .map(|text| parse_order(&kb.vars, text))
        .transpose()?;
    let opts = QueryOptions {
        rep: args.rep.map(|r| match r {
            RepArg::Lower => RepKind::Lower,
            RepArg::Upper => RepKind::Upper,
        }),
        order,
        explicit_cap: None,
    };
    let result = run_query(&kb, &args.target, &opts)?;
    if args.trace {
        for line in &result.trace {
            eprintln!("{line}");
        }
    }
    let mode = match args.emit {
        EmitArg::Basic => EmitMode::Basic,
        EmitArg::Explicit => EmitMode::Explicit,
    };
    print!("{}", serialize_result(&kb.vars, &result, mode));
    Ok(match result.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Contradiction => ExitCode::from(1),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Query(args) = cli.command;
    match run(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
