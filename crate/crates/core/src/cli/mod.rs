//! Command-line surface of `wixpose`.
//!
//! Exit codes: 0 success, 1 mathematical negative (infeasible, no witness,
//! record not found), 2 usage, parse or I/O error, 3 search budget exceeded.

pub mod exit;
pub mod index;

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::SearchError;
use crate::lang::{enumerate_terms, Term};
use crate::poset::{count_nonstrict_maps, count_strict_maps};
use crate::represent::{invariants_from_series, represent, SearchConfig};
use crate::series::ChainSeries;
use crate::zeta::{zeta_number_from_series, DEFAULT_TOLERANCE};

pub const BUDGET_ENV: &str = "WIXPOSE_BUDGET";
const DEFAULT_INDEX: &str = "wixpose-index.jsonl";

#[derive(Debug, Parser)]
#[command(name = "wixpose", version, about = "Order series of Wixarika posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate expressions to chain-basis series (reads stdin when none are given).
    Eval {
        expressions: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Also print the strict order polynomial at M.
        #[arg(long, value_name = "M")]
        poly: Option<usize>,
    },
    /// Find every Wixarika poset with the given order series.
    Represent {
        /// Series as text (`z3 + 2*z4`) or JSON.
        series: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Scan every ordered term instead of pruned multisets.
        #[arg(long)]
        no_prune: bool,
    },
    /// List normal-form terms with the given leaf and handle counts.
    Enum {
        units: usize,
        d_count: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Build or query the series-to-terms index.
    Index {
        #[command(subcommand)]
        action: IndexAction,
    },
    /// Zeta number of an expression or series.
    Zeta {
        input: String,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write the Hasse diagram of an expression as Graphviz DOT.
    ExportDot {
        expression: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force strict and non-strict order polynomial values.
    Count {
        expression: String,
        m: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum IndexAction {
    Build {
        #[arg(long)]
        units: usize,
        #[arg(long = "d")]
        d_count: usize,
        #[arg(long, default_value = DEFAULT_INDEX)]
        path: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Query {
        series: String,
        #[arg(long, default_value = DEFAULT_INDEX)]
        path: PathBuf,
    },
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Search budget as `UNITS,D`; overrides WIXPOSE_BUDGET.
    #[arg(long, value_name = "UNITS,D")]
    budget: Option<String>,
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: exit::USAGE,
            message: message.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::usage(format!("I/O error: {err}"))
    }
}

type CmdResult = Result<i32, Failure>;

fn parse_budget(text: &str) -> Result<(usize, usize), Failure> {
    let parsed = text
        .split_once(',')
        .and_then(|(u, d)| Some((u.trim().parse().ok()?, d.trim().parse().ok()?)));
    parsed.ok_or_else(|| Failure::usage(format!("budget must look like UNITS,D, got {text:?}")))
}

fn search_config(args: &BudgetArgs) -> Result<SearchConfig, Failure> {
    let mut config = SearchConfig::default();
    let text = match &args.budget {
        Some(flag) => Some(flag.clone()),
        None => std::env::var(BUDGET_ENV).ok(),
    };
    if let Some(text) = text {
        (config.max_units, config.max_d) = parse_budget(&text)?;
    }
    Ok(config)
}

fn parse_term(text: &str) -> Result<Term, Failure> {
    text.parse::<Term>()
        .map_err(|e| Failure::usage(format!("{text:?}: {e}")))
}

fn parse_series(text: &str) -> Result<ChainSeries, Failure> {
    text.parse::<ChainSeries>()
        .map_err(|e| Failure::usage(format!("{text:?}: {e}")))
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval {
            expressions,
            json,
            poly,
        } => cmd_eval(expressions, json, poly, input, out),
        Command::Represent {
            series,
            budget,
            no_prune,
        } => cmd_represent(&series, &budget, no_prune, out, err),
        Command::Enum {
            units,
            d_count,
            json,
            budget,
        } => cmd_enum(units, d_count, json, &budget, out, err),
        Command::Index { action } => match action {
            IndexAction::Build {
                units,
                d_count,
                path,
                budget,
            } => cmd_index_build(units, d_count, &path, &budget, out, err),
            IndexAction::Query { series, path } => cmd_index_query(&series, &path, out),
        },
        Command::Zeta {
            input,
            digits,
            json,
        } => cmd_zeta(&input, digits, json, out),
        Command::ExportDot { expression, output } => cmd_export_dot(&expression, output, out),
        Command::Count {
            expression,
            m,
            json,
        } => cmd_count(&expression, m, json, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn cmd_eval(
    expressions: Vec<String>,
    json: bool,
    poly: Option<usize>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CmdResult {
    let expressions = if expressions.is_empty() {
        let mut lines = Vec::new();
        for line in input.lines() {
            let line = line?;
            if !line.trim().is_empty() {
                lines.push(line);
            }
        }
        lines
    } else {
        expressions
    };
    if expressions.is_empty() {
        return Err(Failure::usage("no expression given"));
    }
    let terms = expressions
        .iter()
        .map(|text| parse_term(text))
        .collect::<Result<Vec<_>, _>>()?;
    for term in &terms {
        let series = term.eval_series();
        let value = poly.map(|m| (m, series.order_polynomial_value(m)));
        if json {
            let mut record = json!({
                "term": term.print(),
                "series": series,
                "text": series.to_text(),
            });
            if let Some((m, v)) = &value {
                record["poly"] = json!({ "m": m, "value": v.to_string() });
            }
            writeln!(out, "{record}")?;
        } else {
            writeln!(out, "{series}")?;
            if let Some((m, v)) = value {
                writeln!(out, "poly({m}) = {v}")?;
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn cmd_represent(
    text: &str,
    budget: &BudgetArgs,
    no_prune: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let series = parse_series(text)?;
    let mut config = search_config(budget)?;
    config.prune = !no_prune;
    match represent(&series, &config) {
        Ok(report) => {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&report).expect("serializable")
            )?;
            Ok(if report.feasible && report.has_witness() {
                exit::SUCCESS
            } else {
                exit::NEGATIVE
            })
        }
        Err(e @ SearchError::BudgetExceeded { .. }) => {
            writeln!(err, "error: {e}")?;
            Ok(exit::BUDGET)
        }
        Err(e) => Err(Failure::usage(e)),
    }
}

fn check_budget(units: usize, d_count: usize, config: &SearchConfig) -> Option<String> {
    (units > config.max_units || d_count > config.max_d).then(|| {
        SearchError::BudgetExceeded {
            units,
            d_count,
            max_units: config.max_units,
            max_d: config.max_d,
        }
        .to_string()
    })
}

fn cmd_enum(
    units: usize,
    d_count: usize,
    json: bool,
    budget: &BudgetArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let config = search_config(budget)?;
    if let Some(message) = check_budget(units, d_count, &config) {
        writeln!(err, "error: {message}")?;
        return Ok(exit::BUDGET);
    }
    for term in enumerate_terms(units, d_count) {
        let series = term.eval_series();
        let inv = invariants_from_series(&series).expect("term series are nonzero and nonnegative");
        if json {
            let record = json!({
                "term": term.print(),
                "series": series,
                "text": series.to_text(),
                "invariants": inv,
            });
            writeln!(out, "{record}")?;
        } else {
            writeln!(
                out,
                "{term}\t{series}\ti={} k={} d={} m={}",
                inv.i, inv.k, inv.d, inv.m
            )?;
        }
    }
    Ok(exit::SUCCESS)
}

fn cmd_index_build(
    units: usize,
    d_count: usize,
    path: &Path,
    budget: &BudgetArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let config = search_config(budget)?;
    if let Some(message) = check_budget(units, d_count, &config) {
        writeln!(err, "error: {message}")?;
        return Ok(exit::BUDGET);
    }
    let records = index::build(units, d_count);
    index::write(path, &records)?;
    writeln!(out, "wrote {} records to {}", records.len(), path.display())?;
    Ok(exit::SUCCESS)
}

fn cmd_index_query(text: &str, path: &Path, out: &mut dyn Write) -> CmdResult {
    let series = parse_series(text)?;
    let records = index::read(path).map_err(Failure::usage)?;
    match index::query(&records, &series) {
        Some(record) => {
            writeln!(
                out,
                "{}",
                serde_json::to_string(record).expect("serializable")
            )?;
            Ok(exit::SUCCESS)
        }
        None => Ok(exit::NEGATIVE),
    }
}

fn cmd_zeta(text: &str, digits: usize, json: bool, out: &mut dyn Write) -> CmdResult {
    let series = if text.contains('z') || text.trim_start().starts_with('{') {
        parse_series(text)?
    } else {
        parse_term(text)?.eval_series()
    };
    let tol = DEFAULT_TOLERANCE.min(0.5 * 10f64.powi(-(digits as i32)));
    let number = zeta_number_from_series(&series, tol).map_err(Failure::usage)?;
    let value = number.value.to_decimal(digits);
    let bound = format!("{:.3e}", number.error_bound.to_f64());
    if json {
        let record = json!({
            "value": value,
            "error_bound": bound,
            "dvector": series,
            "text": series.to_text(),
        });
        writeln!(out, "{record}")?;
    } else {
        writeln!(out, "value: {value}")?;
        writeln!(out, "error_bound: {bound}")?;
        writeln!(out, "dvector: {series}")?;
    }
    Ok(exit::SUCCESS)
}

fn cmd_export_dot(text: &str, output: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    let dot = parse_term(text)?.eval_poset().to_dot();
    match output {
        Some(path) => std::fs::write(&path, dot)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(dot.as_bytes())?,
    }
    Ok(exit::SUCCESS)
}

fn cmd_count(text: &str, m: usize, json: bool, out: &mut dyn Write) -> CmdResult {
    let poset = parse_term(text)?.eval_poset();
    let strict = count_strict_maps(&poset, m);
    let nonstrict = count_nonstrict_maps(&poset, m);
    if json {
        let record = json!({
            "m": m,
            "strict": strict.to_string(),
            "nonstrict": nonstrict.to_string(),
        });
        writeln!(out, "{record}")?;
    } else {
        writeln!(out, "strict({m}) = {strict}")?;
        writeln!(out, "nonstrict({m}) = {nonstrict}")?;
    }
    Ok(exit::SUCCESS)
}
