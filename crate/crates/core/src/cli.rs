//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exactnum::render_decimal;
use crate::formulas::{self, CountReport, ExactValue, Quantity};
use crate::lyndon_enum::{containment_count, lyndon_words};
use crate::oracle::{self, Budget, Cell, CensusKind, Oracle};
use crate::words::{self, Word};
use crate::Execution;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

const ROUNDING: &str = "half-away-from-zero";

#[derive(Debug, Parser)]
#[command(
    name = "lyndon-count",
    version,
    about = "Exact Lyndon factor and subsequence counts"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one closed form.
    Formula(FormulaArgs),
    /// Render a grid of closed-form values.
    Table(TableArgs),
    /// Count Lyndon factors or subsequences of one word.
    Count(CountArgs),
    /// List the Lyndon words of one length.
    Enum(EnumArgs),
    /// Print the canonical MTS maximizer, or all maximizers with --all.
    Witness(WitnessArgs),
    /// Check closed forms against exhaustive enumeration.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    Factors,
    Subsequences,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Total,
    Distinct,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    SubsequenceTotal,
    FactorTotal,
    FactorDistinct,
}

impl From<Kind> for CensusKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::SubsequenceTotal => CensusKind::SubsequenceTotal,
            Kind::FactorTotal => CensusKind::FactorTotal,
            Kind::FactorDistinct => CensusKind::FactorDistinct,
        }
    }
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Cap on the number of enumerated words (sigma^n).
    #[arg(long, default_value_t = Budget::default().max_enumerated_words)]
    budget_words: u64,
    /// Cap on position sets enumerated per word (2^n).
    #[arg(long, default_value_t = Budget::default().max_subsets_per_word)]
    budget_subsets: u64,
    /// Disable parallel enumeration.
    #[arg(long)]
    sequential: bool,
}

impl BudgetArgs {
    fn oracle(&self) -> Result<Oracle, Error> {
        let budget = Budget::new(self.budget_words, self.budget_subsets)?;
        let exec = if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        };
        Ok(Oracle::new(budget, exec))
    }
}

#[derive(Debug, Args)]
struct FormulaArgs {
    quantity: String,
    #[arg(long)]
    sigma: u32,
    #[arg(long)]
    n: u64,
    /// Pattern length, for `contain` only.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 2)]
    decimals: usize,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    format: TextOrJson,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Quantity name; omit with --paper-tables.
    quantity: Option<String>,
    /// Comma-separated alphabet sizes.
    #[arg(long)]
    sigma: Option<String>,
    /// Lengths as ranges and lists, e.g. `1..10,15,20`.
    #[arg(long)]
    n: Option<String>,
    #[arg(long, default_value_t = 2)]
    decimals: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Md)]
    format: TableFormat,
    /// Emit one of the reference tables 3, 4 or 5.
    #[arg(long)]
    paper_tables: Option<u8>,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    word: String,
    /// Alphabet size; inferred from the word when omitted.
    #[arg(long)]
    sigma: Option<u32>,
    #[arg(long, value_enum)]
    what: What,
    #[arg(long, value_enum, default_value_t = Mode::Total)]
    mode: Mode,
    #[arg(long, default_value_t = words::DEFAULT_MAX_SUBSETS)]
    budget_subsets: u64,
}

#[derive(Debug, Args)]
struct EnumArgs {
    #[arg(long)]
    sigma: u32,
    #[arg(long)]
    len: usize,
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[arg(long)]
    sigma: u32,
    #[arg(long)]
    n: u64,
    /// List every maximizer found by exhaustive search.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Kind::SubsequenceTotal)]
    kind: Kind,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// A quantity name or `all`.
    quantity: String,
    #[arg(long)]
    sigma: Option<u32>,
    #[arg(long)]
    n_max: Option<u64>,
    #[command(flatten)]
    budget: BudgetArgs,
}

/// Failure of a subcommand, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("write failed: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Normal output goes to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    eprint!("{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Formula(a) => cmd_formula(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Count(a) => cmd_count(&a, out),
        Command::Enum(a) => cmd_enum(&a, out),
        Command::Witness(a) => cmd_witness(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn render_value(value: &ExactValue, decimals: usize) -> Result<String, Error> {
    match value {
        ExactValue::Integer(v) => Ok(v.to_string()),
        ExactValue::Fraction(q) => render_decimal(q, decimals),
    }
}

fn json_value(value: &ExactValue, decimals: usize) -> Result<Value, Error> {
    Ok(match value {
        ExactValue::Integer(v) => Value::String(v.to_string()),
        ExactValue::Fraction(q) => json!({
            "num": q.numer().to_string(),
            "den": q.denom().to_string(),
            "decimal": render_decimal(q, decimals)?,
        }),
    })
}

fn cmd_formula(a: &FormulaArgs, out: &mut dyn Write) -> CmdResult {
    let quantity: Quantity = a.quantity.parse()?;
    if a.m.is_some() && quantity != Quantity::Contain {
        return Err(usage("--m only applies to contain"));
    }
    let report = match (quantity, a.m) {
        (Quantity::Contain, Some(m)) => CountReport {
            quantity,
            sigma: a.sigma,
            n: a.n,
            value: ExactValue::Integer(containment_count(a.n, a.sigma, m)?),
            provenance: formulas::Provenance::Formula,
        },
        _ => formulas::evaluate(quantity, a.sigma, a.n)?,
    };
    // Validate decimals even for integer results.
    render_decimal(&report.value.as_rational(), a.decimals)?;
    match a.format {
        TextOrJson::Text => match &report.value {
            ExactValue::Integer(v) => writeln!(out, "{v}")?,
            ExactValue::Fraction(q) => writeln!(
                out,
                "{} ({}/{})",
                render_decimal(q, a.decimals)?,
                q.numer(),
                q.denom()
            )?,
        },
        TextOrJson::Json => {
            let mut obj = json!({
                "quantity": quantity.name(),
                "sigma": report.sigma,
                "n": report.n,
                "value": json_value(&report.value, a.decimals)?,
                "provenance": report.provenance.to_string(),
                "stated_regime": quantity.in_stated_regime(report.sigma, report.n),
                "rounding": ROUNDING,
            });
            if let Some(m) = a.m {
                obj["m"] = json!(m);
            }
            writeln!(out, "{obj}")?;
        }
    }
    if quantity == Quantity::Mtf {
        let corollary = formulas::mtf_corollary_statement(a.sigma, a.n)?;
        eprintln!(
            "note: MTF uses the C(n+1,2) leading term, confirmed by exhaustive search; \
             the C(n,2) variant would give {corollary}"
        );
    }
    Ok(EXIT_OK)
}

/// Parses `1..10,15,20` into an ascending list without duplicates.
pub fn parse_n_list(spec: &str) -> Result<Vec<u64>, Error> {
    let bad = |why: String| Error::InvalidArgument(format!("bad n list {spec:?}: {why}"));
    let mut ns = Vec::new();
    for item in spec.split(',').map(str::trim) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let hi: u64 = hi.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if lo > hi {
                return Err(bad(format!("empty range {item}")));
            }
            ns.extend(lo..=hi);
        } else {
            ns.push(item.parse().map_err(|e| bad(format!("{e}")))?);
        }
    }
    if ns.contains(&0) {
        return Err(bad("n must be >= 1".into()));
    }
    ns.sort_unstable();
    ns.dedup();
    Ok(ns)
}

fn parse_sigma_list(spec: &str) -> Result<Vec<u32>, Error> {
    let sigmas: Vec<u32> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|e| Error::InvalidArgument(format!("bad sigma {s:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if sigmas.is_empty() || sigmas.contains(&0) {
        return Err(Error::InvalidArgument("sigma values must be >= 1".into()));
    }
    Ok(sigmas)
}

/// A table to render: one column per `(quantity, sigma)`, one row per n.
struct TableSpec {
    columns: Vec<(Quantity, u32)>,
    ns: Vec<u64>,
}

fn reference_table(number: u8) -> Result<TableSpec, Error> {
    use Quantity::*;
    Ok(match number {
        3 => TableSpec {
            columns: vec![(Mts, 2), (Mts, 5), (Mts, 10)],
            ns: (1..=15).collect(),
        },
        4 => TableSpec {
            columns: vec![(Ts, 2), (Ets, 2), (Ts, 5), (Ets, 5)],
            ns: (1..=10).collect(),
        },
        5 => TableSpec {
            columns: vec![(Eds, 2), (Eds, 5)],
            ns: (1..=10).chain([15, 20]).collect(),
        },
        other => {
            return Err(Error::InvalidArgument(format!(
                "published tables are 3, 4 and 5, not {other}"
            )))
        }
    })
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> CmdResult {
    let spec = match a.paper_tables {
        Some(number) => {
            if a.quantity.is_some() || a.sigma.is_some() || a.n.is_some() {
                return Err(usage("--paper-tables fixes the quantity, sigma and n"));
            }
            reference_table(number)?
        }
        None => {
            let quantity: Quantity = a
                .quantity
                .as_deref()
                .ok_or_else(|| usage("table needs a quantity or --paper-tables"))?
                .parse()?;
            let sigmas = parse_sigma_list(
                a.sigma
                    .as_deref()
                    .ok_or_else(|| usage("--sigma is required"))?,
            )?;
            let ns = parse_n_list(a.n.as_deref().ok_or_else(|| usage("--n is required"))?)?;
            TableSpec {
                columns: sigmas.into_iter().map(|s| (quantity, s)).collect(),
                ns,
            }
        }
    };
    render_table(&spec, a.decimals, a.format, out)?;
    Ok(EXIT_OK)
}

fn compute_grid(spec: &TableSpec) -> Result<Vec<Vec<ExactValue>>, Error> {
    #[cfg(feature = "parallel")]
    use rayon::prelude::*;

    let cell = |&n: &u64| -> Result<Vec<ExactValue>, Error> {
        spec.columns
            .iter()
            .map(|&(q, s)| formulas::evaluate(q, s, n).map(|r| r.value))
            .collect()
    };
    #[cfg(feature = "parallel")]
    let rows = spec.ns.par_iter().map(cell).collect();
    #[cfg(not(feature = "parallel"))]
    let rows = spec.ns.iter().map(cell).collect();
    rows
}

fn render_table(
    spec: &TableSpec,
    decimals: usize,
    format: TableFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if decimals > crate::exactnum::MAX_PLACES {
        return Err(usage(format!(
            "at most {} decimals",
            crate::exactnum::MAX_PLACES
        )));
    }
    let rows = compute_grid(spec)?;
    let headers: Vec<String> = spec
        .columns
        .iter()
        .map(|(q, s)| format!("{}({},n)", q.name(), s))
        .collect();
    match format {
        TableFormat::Md => {
            write!(out, "| n |")?;
            for h in &headers {
                write!(out, " {h} |")?;
            }
            writeln!(out)?;
            write!(out, "|---:|")?;
            for _ in &headers {
                write!(out, "---:|")?;
            }
            writeln!(out)?;
            for (n, row) in spec.ns.iter().zip(&rows) {
                write!(out, "| {n} |")?;
                for v in row {
                    write!(out, " {} |", render_value(v, decimals)?)?;
                }
                writeln!(out)?;
            }
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["n".to_string()];
            header.extend(headers.iter().cloned());
            let csv_err = |e: csv::Error| usage(format!("csv: {e}"));
            w.write_record(&header).map_err(csv_err)?;
            for (n, row) in spec.ns.iter().zip(&rows) {
                let mut record = vec![n.to_string()];
                for v in row {
                    record.push(render_value(v, decimals)?);
                }
                w.write_record(&record).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
            out.write_all(&bytes)?;
        }
        TableFormat::Json => {
            let mut quantities: Vec<&str> = Vec::new();
            for (q, _) in &spec.columns {
                if !quantities.contains(&q.name()) {
                    quantities.push(q.name());
                }
            }
            let mut sigmas: Vec<u32> = Vec::new();
            for (_, s) in &spec.columns {
                if !sigmas.contains(s) {
                    sigmas.push(*s);
                }
            }
            let json_rows = spec
                .ns
                .iter()
                .zip(&rows)
                .map(|(n, row)| {
                    let values = row
                        .iter()
                        .map(|v| json_value(v, decimals))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(json!({ "n": n, "values": values }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let doc = json!({
                "quantity": quantities.join(","),
                "sigma": sigmas,
                "n": spec.ns,
                "columns": spec.columns.iter().map(|(q, s)| json!({
                    "quantity": q.name(),
                    "sigma": s,
                    "stated_regime_n": spec.ns.iter().filter(|&&n| q.in_stated_regime(*s, n)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "decimals": decimals,
                "rounding": ROUNDING,
                "provenance": "formula",
                "rows": json_rows,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("json serializes")
            )?;
        }
    }
    Ok(())
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> CmdResult {
    let word = Word::parse(&a.word, a.sigma)?;
    if word.is_empty() {
        return Err(Error::EmptyWord.into());
    }
    let value = match (a.what, a.mode) {
        (What::Factors, Mode::Total) => words::count_lyndon_factor_occurrences(&word),
        (What::Factors, Mode::Distinct) => words::count_distinct_lyndon_factors(&word),
        (What::Subsequences, Mode::Total) => {
            words::count_lyndon_subsequence_occurrences(&word, a.budget_subsets)?
        }
        (What::Subsequences, Mode::Distinct) => {
            words::count_distinct_lyndon_subsequences(&word, a.budget_subsets)?
        }
    };
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

fn cmd_enum(a: &EnumArgs, out: &mut dyn Write) -> CmdResult {
    let stream = lyndon_words(a.sigma, a.len)?;
    for w in stream.take(a.limit.unwrap_or(usize::MAX)) {
        writeln!(out, "{w}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_witness(a: &WitnessArgs, out: &mut dyn Write) -> CmdResult {
    let kind = CensusKind::from(a.kind);
    if !a.all {
        if kind != CensusKind::SubsequenceTotal {
            return Err(usage("--kind other than subsequence-total needs --all"));
        }
        writeln!(out, "{}", formulas::mts_witness(a.sigma, a.n)?)?;
        return Ok(EXIT_OK);
    }
    let oracle = a.budget.oracle()?;
    let census = oracle.max_census(kind, a.sigma, a.n)?;
    for w in &census.attaining_words {
        writeln!(out, "{w}")?;
    }
    let predicted = formulas::mts_maximizer_count(a.sigma, a.n)?;
    let shown = census.attaining_words.len();
    let mut summary = format!(
        "max {}, predicted {}, found {}",
        census.max_value, predicted, census.total_count
    );
    if census.total_count > shown.into() {
        summary.push_str(&format!(" (first {shown} listed)"));
    }
    writeln!(out, "{summary}")?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let oracle = a.budget.oracle()?;
    let quantities: Vec<Quantity> = if a.quantity.eq_ignore_ascii_case("all") {
        Quantity::ALL.to_vec()
    } else {
        vec![a.quantity.parse()?]
    };
    let sigmas: Vec<u32> = match a.sigma {
        Some(s) => vec![s],
        None => oracle::DEFAULT_SIGMAS.to_vec(),
    };
    if let Some(0) = a.n_max {
        return Err(usage("--n-max must be >= 1"));
    }
    let cells: Vec<Cell> = quantities
        .iter()
        .flat_map(|&q| {
            sigmas.iter().flat_map(move |&s| {
                oracle::grid(q, s, a.n_max.unwrap_or_else(|| oracle::default_n_max(q, s)))
            })
        })
        .collect();
    let report = oracle.run(&cells)?;
    for r in &report.results {
        writeln!(out, "{r}")?;
    }
    for c in &report.census {
        writeln!(out, "{c}")?;
    }
    if let Some(note) = &report.mtf_note {
        writeln!(out, "{note}")?;
    }
    writeln!(out, "{}/{} match", report.matched(), report.total())?;
    Ok(if report.all_match() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_n_list("1..10,15,20").unwrap().len(), 12);
        assert_eq!(parse_n_list("5,2,2").unwrap(), vec![2, 5]);
        assert!(parse_n_list("3..1").is_err());
        assert!(parse_n_list("0..2").is_err());
        assert!(parse_n_list("x").is_err());
    }

    #[test]
    fn sigma_lists() {
        assert_eq!(parse_sigma_list("2,5,10").unwrap(), vec![2, 5, 10]);
        assert!(parse_sigma_list("2,0").is_err());
    }
}
