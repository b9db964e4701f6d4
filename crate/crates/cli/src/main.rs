use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use mzv_core::closedform::{zeta_ems_closed, zeta_ems_recursive, zeta_fkmt, zeta_fkmt_recursive};
use mzv_core::exact_arith::approx_f64;
use mzv_core::renorm::{CharacterState, Composition, DEFAULT_MARGIN};
use mzv_core::verify::{self, Report};
use mzv_core::{Error, Rational};

const DEFAULT_WEIGHT_CAP: usize = 14;

#[derive(Parser)]
#[command(
    name = "mzv",
    version,
    about = "Exact values of multiple zeta functions at non-positive integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one value through one or more pipelines.
    Value {
        kind: Kind,
        /// Comma-separated arguments, e.g. `1,2,0` for (-1,-2,0).
        ks: String,
        #[arg(long, value_enum, default_value_t = Pipeline::Closed)]
        pipeline: Pipeline,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Tabulate closed-form values.
    Table {
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        /// Bound on k_1 + ... + k_n.
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Bound on k_1 + ... + k_n; for the word-level suites (shuffle,
        /// lminus) the bound on word weight. Defaults to 4 for shuffle, 3 for
        /// lminus and 6 otherwise.
        #[arg(long)]
        weight: Option<u32>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(clap::Args, Clone)]
struct CommonOpts {
    /// Extra orders of z kept in the Laurent expansions.
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    precision_margin: i64,
    /// Largest word weight (k_1 + ... + k_n + n) for the series pipelines.
    #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP)]
    weight_cap: usize,
    /// Spread work over threads; output order is unchanged.
    #[arg(long)]
    parallel: bool,
    /// Add an approximate decimal column.
    #[arg(long)]
    decimal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ems,
    Fkmt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    Birkhoff,
    Lemma,
    Closed,
    Recurrence,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Coproduct,
    Shuffle,
    BirkhoffVsClosed,
    Thm321,
    Recurrence,
    FrakH,
    Conversions,
    Lminus,
    KnownValues,
    All,
}

#[derive(Serialize)]
struct OutputRecord {
    ks: Vec<u32>,
    value_ems: String,
    value_fkmt: String,
    pipelines_agreed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<f64>,
}

enum Failure {
    Disagreement,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Value {
            kind,
            ks,
            pipeline,
            format,
            opts,
        } => cmd_value(kind, &ks, pipeline, format, &opts),
        Command::Table {
            kind,
            max_depth,
            max_weight,
            format,
            opts,
        } => cmd_table(kind, max_depth, max_weight, format, &opts),
        Command::Verify {
            suite,
            depth,
            weight,
            opts,
        } => cmd_verify(suite, depth, weight, &opts),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn warn_on_raised_cap(opts: &CommonOpts) {
    if opts.weight_cap > DEFAULT_WEIGHT_CAP {
        eprintln!(
            "warning: weight cap raised to {} (default {DEFAULT_WEIGHT_CAP}); this may take a long time",
            opts.weight_cap
        );
    }
}

fn check_cap(word_weight: usize, opts: &CommonOpts) -> CmdResult {
    if word_weight > opts.weight_cap {
        return Err(Failure::Usage(format!(
            "word weight {word_weight} exceeds the cap {}; pass --weight-cap to raise it",
            opts.weight_cap
        )));
    }
    Ok(())
}

fn state_for(word_weight: usize, opts: &CommonOpts) -> CharacterState {
    CharacterState::new(word_weight as i64 + opts.precision_margin)
        .with_margin(opts.precision_margin)
}

fn pipelines_for(kind: Kind, pipeline: Pipeline) -> Result<Vec<Pipeline>, Failure> {
    use Pipeline::*;
    match (kind, pipeline) {
        (Kind::Ems, All) => Ok(vec![Birkhoff, Lemma, Closed, Recurrence]),
        (Kind::Fkmt, All) => Ok(vec![Closed, Recurrence]),
        (Kind::Fkmt, Birkhoff | Lemma) => Err(Failure::Usage(
            "the birkhoff and lemma pipelines compute renormalized (ems) values only".into(),
        )),
        (_, p) => Ok(vec![p]),
    }
}

fn pipeline_name(p: Pipeline) -> &'static str {
    match p {
        Pipeline::Birkhoff => "birkhoff",
        Pipeline::Lemma => "lemma",
        Pipeline::Closed => "closed",
        Pipeline::Recurrence => "recurrence",
        Pipeline::All => "all",
    }
}

fn evaluate(
    kind: Kind,
    p: Pipeline,
    ks: &Composition,
    st: &mut CharacterState,
) -> Result<Rational, Failure> {
    let v = match (kind, p) {
        (Kind::Ems, Pipeline::Birkhoff) => st.zeta_ems_birkhoff(ks)?,
        (Kind::Ems, Pipeline::Lemma) => st.zeta_ems_lemma311(ks)?,
        (Kind::Ems, Pipeline::Closed) => zeta_ems_closed(ks),
        (Kind::Ems, Pipeline::Recurrence) => zeta_ems_recursive(ks),
        (Kind::Fkmt, Pipeline::Closed) => zeta_fkmt(ks),
        (Kind::Fkmt, Pipeline::Recurrence) => zeta_fkmt_recursive(ks),
        _ => unreachable!("pipelines are expanded before evaluation"),
    };
    Ok(v)
}

fn cmd_value(
    kind: Kind,
    ks: &str,
    pipeline: Pipeline,
    format: Format,
    opts: &CommonOpts,
) -> CmdResult {
    let ks: Composition = ks.parse()?;
    let pipelines = pipelines_for(kind, pipeline)?;
    if pipelines
        .iter()
        .any(|p| matches!(p, Pipeline::Birkhoff | Pipeline::Lemma))
    {
        warn_on_raised_cap(opts);
        check_cap(ks.word_weight(), opts)?;
    }
    let mut st = state_for(ks.word_weight(), opts);
    let mut values = Vec::new();
    for &p in &pipelines {
        values.push((p, evaluate(kind, p, &ks, &mut st)?));
    }
    let agreed = values.windows(2).all(|w| w[0].1 == w[1].1);
    let value = values[0].1.clone();
    let (ems, fkmt) = match kind {
        Kind::Ems => (value.clone(), zeta_fkmt(&ks)),
        Kind::Fkmt => (zeta_ems_closed(&ks), value.clone()),
    };
    let record = OutputRecord {
        ks: ks.parts().to_vec(),
        value_ems: ems.to_string(),
        value_fkmt: fkmt.to_string(),
        pipelines_agreed: agreed,
        approx: opts.decimal.then(|| approx_f64(&value)),
    };
    let mut out = String::new();
    match format {
        Format::Json => out = to_json(&[record]),
        Format::Csv => {
            out.push_str(&csv_header(opts.decimal));
            out.push_str(&csv_row(&ks, &value, opts.decimal));
        }
        Format::Plain => {
            out.push_str(&format!("{}({ks}) = {value}\n", kind_label(kind)));
            if opts.decimal {
                out.push_str(&format!("  approx {}\n", approx_f64(&value)));
            }
            if values.len() > 1 {
                for (p, v) in &values {
                    out.push_str(&format!("  {:<11}{v}\n", pipeline_name(*p)));
                }
                out.push_str(&format!("agreed: {agreed}\n"));
            }
        }
    }
    emit(&out)?;
    if agreed {
        Ok(())
    } else {
        eprintln!("error: pipelines disagree for ({ks})");
        Err(Failure::Disagreement)
    }
}

fn kind_label(kind: Kind) -> &'static str {
    match kind {
        Kind::Ems => "ems",
        Kind::Fkmt => "fkmt",
    }
}

fn csv_header(decimal: bool) -> String {
    if decimal {
        "k;value;approx\n".into()
    } else {
        "k;value\n".into()
    }
}

fn csv_row(ks: &Composition, v: &Rational, decimal: bool) -> String {
    if decimal {
        format!("{ks};{v};{}\n", approx_f64(v))
    } else {
        format!("{ks};{v}\n")
    }
}

fn to_json<T: Serialize>(records: &T) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

fn emit(s: &str) -> CmdResult {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(s.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Failure::Usage(format!("writing output: {e}")))
}

fn cmd_table(
    kind: Kind,
    max_depth: usize,
    max_weight: u32,
    format: Format,
    opts: &CommonOpts,
) -> CmdResult {
    if max_depth == 0 {
        return Err(Failure::Usage("--max-depth must be at least 1".into()));
    }
    let mut comps = Composition::enumerate(max_depth, max_weight);
    comps.sort();
    let row = |ks: &Composition| {
        let ems = zeta_ems_closed(ks);
        let fkmt = zeta_fkmt(ks);
        let value = match kind {
            Kind::Ems => ems.clone(),
            Kind::Fkmt => fkmt.clone(),
        };
        (ks.clone(), value, ems, fkmt)
    };
    let rows: Vec<_> = if opts.parallel {
        comps.par_iter().map(row).collect()
    } else {
        comps.iter().map(row).collect()
    };
    let out = match format {
        Format::Json => {
            let records: Vec<OutputRecord> = rows
                .iter()
                .map(|(ks, v, ems, fkmt)| OutputRecord {
                    ks: ks.parts().to_vec(),
                    value_ems: ems.to_string(),
                    value_fkmt: fkmt.to_string(),
                    pipelines_agreed: true,
                    approx: opts.decimal.then(|| approx_f64(v)),
                })
                .collect();
            to_json(&records)
        }
        Format::Csv => {
            let mut s = csv_header(opts.decimal);
            for (ks, v, _, _) in &rows {
                s.push_str(&csv_row(ks, v, opts.decimal));
            }
            s
        }
        Format::Plain => {
            let width = rows
                .iter()
                .map(|r| r.0.to_string().len())
                .max()
                .unwrap_or(0)
                + 2;
            let mut s = String::new();
            for (ks, v, _, _) in &rows {
                let label = format!("({ks})");
                if opts.decimal {
                    s.push_str(&format!(
                        "{label:<width$}  {v}  ~{}\n",
                        approx_f64(v),
                        width = width
                    ));
                } else {
                    s.push_str(&format!("{label:<width$}  {v}\n", width = width));
                }
            }
            s
        }
    };
    emit(&out)
}

fn pipelines_parallel(
    max_depth: usize,
    max_total: u32,
    opts: &CommonOpts,
) -> mzv_core::Result<Report> {
    let comps = Composition::enumerate(max_depth, max_total);
    let margin = opts.precision_margin;
    let weight = max_depth + max_total as usize;
    let outcomes: Vec<mzv_core::Result<Option<String>>> = comps
        .par_iter()
        .map_init(
            || CharacterState::new(weight as i64 + margin).with_margin(margin),
            |st, ks| verify::pipelines_disagree(ks, st),
        )
        .collect();
    let mut r = Report::default();
    for o in outcomes {
        r.checked += 1;
        if let Some(msg) = o? {
            r.failures.push(msg);
        }
    }
    Ok(r)
}

fn default_weight(suite: Suite) -> u32 {
    match suite {
        Suite::Shuffle => 4,
        Suite::Lminus => 3,
        _ => 6,
    }
}

fn run_suite(
    suite: Suite,
    depth: usize,
    weight: u32,
    opts: &CommonOpts,
) -> Result<Report, Failure> {
    let w = weight as usize;
    let report = match suite {
        Suite::Coproduct => verify::coproduct(depth.max(2), weight.min(2), weight)?,
        Suite::Shuffle => {
            check_cap(2 * w + 2, opts)?;
            let mut r = verify::shuffle(w)?;
            let ab = weight.saturating_sub(1).max(1);
            r.merge(verify::depth_two_shuffle(ab, ab)?);
            r
        }
        Suite::BirkhoffVsClosed => {
            check_cap(depth + w, opts)?;
            if opts.parallel {
                pipelines_parallel(depth, weight, opts)?
            } else {
                verify::birkhoff_vs_closed(depth, weight)?
            }
        }
        Suite::Thm321 => verify::thm321(depth, weight)?,
        Suite::Recurrence => verify::recurrence(depth, weight)?,
        Suite::FrakH => verify::frak_h(depth.saturating_sub(1).max(1), 2, weight.max(3))?,
        Suite::Conversions => {
            if depth > 3 {
                return Err(Failure::Usage(
                    "conversion formulas are available up to depth 3".into(),
                ));
            }
            verify::conversions(depth, weight)?
        }
        Suite::Lminus => {
            check_cap(2 * w + 1, opts)?;
            verify::lminus(w)?
        }
        Suite::KnownValues => {
            check_cap(w + 1, opts)?;
            verify::known_values(depth, weight, weight / 2)?
        }
        Suite::All => unreachable!("expanded by the caller"),
    };
    Ok(report)
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Coproduct => "coproduct",
        Suite::Shuffle => "shuffle",
        Suite::BirkhoffVsClosed => "birkhoff-vs-closed",
        Suite::Thm321 => "thm321",
        Suite::Recurrence => "recurrence",
        Suite::FrakH => "frak-h",
        Suite::Conversions => "conversions",
        Suite::Lminus => "lminus",
        Suite::KnownValues => "known-values",
        Suite::All => "all",
    }
}

fn cmd_verify(suite: Suite, depth: usize, weight: Option<u32>, opts: &CommonOpts) -> CmdResult {
    if depth == 0 {
        return Err(Failure::Usage("--depth must be at least 1".into()));
    }
    warn_on_raised_cap(opts);
    let suites = match suite {
        Suite::All => vec![
            Suite::Coproduct,
            Suite::Shuffle,
            Suite::BirkhoffVsClosed,
            Suite::Thm321,
            Suite::Recurrence,
            Suite::FrakH,
            Suite::Conversions,
            Suite::Lminus,
            Suite::KnownValues,
        ],
        s => vec![s],
    };
    let mut failed = false;
    let expanded = suite == Suite::All;
    for s in suites {
        let d = if expanded && s == Suite::Conversions {
            depth.min(3)
        } else {
            depth
        };
        let r = run_suite(s, d, weight.unwrap_or_else(|| default_weight(s)), opts)?;
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let mut out = format!("{status}  {:<20}{r}\n", suite_name(s));
        for f in &r.failures {
            out.push_str(&format!("  {f}\n"));
        }
        emit(&out)?;
        failed |= !r.passed();
    }
    if failed {
        Err(Failure::Disagreement)
    } else {
        Ok(())
    }
}
