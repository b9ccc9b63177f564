mod cache;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperoct::group::{DEFAULT_MAX_ENUMERATION, MAX_RANK};
use hyperoct::subgroups::{is_type_sn, length_in_by_roots};
use hyperoct::verify::{run_suite, Suite};
use hyperoct::{Error, Hyperoctahedral, ReflectionSubgroup, SignedComposition, SignedPermutation};
use serde_json::{json, Value};

use cache::Cache;
use render::Kind;

/// Rank bound for the full Mantaci-Reutenauer closure.
const DEFAULT_MAX_MR: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("rank {rank} exceeds the bound {max} for this command (raise it with --max-n)")]
    Bound { rank: usize, max: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0} properties failed")]
    Failed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Bound { .. } => 2,
            CliError::Core(e) => match e {
                Error::Invariant(_) | Error::Singular => 1,
                _ => 2,
            },
            CliError::Invariant(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Failed(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "hyperoct", version, about = "Tables of marks, idempotents and descent-type algebras of hyperoctahedral groups")]
struct Cli {
    /// Rank of the hyperoctahedral group.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Overrides the per-command rank bound.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed-point matrix phi, marks and the inverse u.
    Marks {
        /// Matrix written by --format csv.
        #[arg(long, default_value = "marks", value_parser = ["phi", "marks", "u"])]
        table: String,
    },
    /// Coordinates of the primitive idempotents in the coset-space basis.
    Idempotents,
    /// Conjugacy class sizes by signed cycle type.
    Classes,
    /// Number of elements with trivial fixed space, by class.
    Typesn,
    /// Invariants of one element, given as a word or a window.
    Element {
        /// Whitespace separated labels from t, s1.., t1..
        #[arg(long, conflicts_with = "window", required_unless_present = "window")]
        word: Option<String>,
        /// Images of 1..n, comma separated, e.g. "-2,1,3".
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Signed composition A; reports l_A(w) when given.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: Option<String>,
    },
    /// Runs invariant suites and prints one line per property.
    Verify {
        #[arg(long)]
        suite: Option<String>,
    },
    /// Structure constants of the Mantaci-Reutenauer algebra.
    ExportMr,
}

fn require_n(cli: &Cli) -> Result<usize, CliError> {
    match cli.n {
        Some(0) => Err(CliError::Usage("--n must be at least 1".into())),
        Some(n) => Ok(n),
        None => Err(CliError::Usage("--n is required".into())),
    }
}

fn bounded(cli: &Cli, default: usize) -> Result<usize, CliError> {
    let n = require_n(cli)?;
    let max = cli.max_n.unwrap_or(default);
    if n > max {
        return Err(CliError::Bound { rank: n, max });
    }
    Ok(n)
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cache(cli: &Cli) -> Option<Cache> {
    if cli.no_cache {
        return None;
    }
    cache::resolve_dir(cli.cache_dir.as_deref()).map(Cache::new)
}

/// Loads the document from the cache or computes and stores it.
fn document(cli: &Cli, kind: Kind, n: usize) -> Result<Value, CliError> {
    let cache = cache(cli);
    if let Some(doc) = cache.as_ref().and_then(|c| c.load(kind.name(), n)) {
        return Ok(doc);
    }
    let h = Hyperoctahedral::with_max(n, n.max(DEFAULT_MAX_ENUMERATION))?;
    let doc = render::compute(kind, &h)?;
    if let Some(c) = cache {
        // A cache that cannot be written is not an error for the command.
        if let Err(e) = c.store(kind.name(), n, &doc) {
            eprintln!("warning: could not write cache: {e}");
        }
    }
    Ok(doc)
}

fn table_command(cli: &Cli, kind: Kind, default_bound: usize, csv_table: &str) -> Result<(), CliError> {
    let n = bounded(cli, default_bound)?;
    let doc = document(cli, kind, n)?;
    let text = match cli.format {
        Format::Json => render::to_json(&doc),
        Format::Csv => render::to_csv(kind, &doc, csv_table)?,
    };
    emit(cli, &text)
}

fn parse_window(s: &str) -> Result<SignedPermutation, CliError> {
    let entries = s
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("invalid window {s:?}")))?;
    Ok(SignedPermutation::from_window(&entries)?)
}

/// `l_A(w)` by breadth-first search in `W_A`, cross-checked against the root
/// count. Falls back to the root count alone when `W_A` is too large to list.
fn subgroup_length(a: &SignedComposition, w: &SignedPermutation) -> Result<(usize, &'static str), CliError> {
    if a.size() != w.rank() {
        return Err(CliError::Usage(format!("{a} is not a composition of {}", w.rank())));
    }
    match ReflectionSubgroup::build(a, w.rank()) {
        Ok(wa) => {
            if !wa.contains(w) {
                return Err(CliError::Usage(format!("{w} is not in W_{a}")));
            }
            let by_search = wa.length_in(w)?;
            let by_roots = length_in_by_roots(a, w)?;
            if by_search != by_roots {
                return Err(CliError::Invariant(format!(
                    "l_A({w}) is {by_search} by search and {by_roots} by roots"
                )));
            }
            Ok((by_search, "search"))
        }
        Err(Error::SubgroupTooLarge(_)) => match length_in_by_roots(a, w) {
            Ok(l) => Ok((l, "roots")),
            Err(Error::NotAMember(_)) => Err(CliError::Usage(format!("{w} is not in W_{a}"))),
            Err(e) => Err(e.into()),
        },
        Err(e) => Err(e.into()),
    }
}

fn element_command(cli: &Cli, word: Option<&str>, window: Option<&str>, subgroup: Option<&str>) -> Result<(), CliError> {
    let w = match (word, window) {
        (Some(word), _) => {
            let n = require_n(cli)?;
            SignedPermutation::from_word(n, word)?
        }
        (None, Some(window)) => {
            let w = parse_window(window)?;
            if cli.n.is_some_and(|n| n != w.rank()) {
                return Err(CliError::Usage(format!("window has {} entries but --n is {}", w.rank(), require_n(cli)?)));
            }
            w
        }
        (None, None) => return Err(CliError::Usage("give --word or --window".into())),
    };
    if w.rank() > MAX_RANK {
        return Err(CliError::Bound { rank: w.rank(), max: MAX_RANK });
    }
    let cycle_type = w.signed_cycle_type();
    let fix_dim = w.fixed_space().len();
    let mut doc = json!({
        "schema_version": cache::SCHEMA_VERSION,
        "n": w.rank(),
        "window": w.window_vec(),
        "length": w.length(),
        "sign": w.sign(),
        "signed_cycle_type": { "plus": cycle_type.plus, "minus": cycle_type.minus },
        "fix_dimension": fix_dim,
        "type_sn": is_type_sn(&w),
    });
    if let Some(a) = subgroup {
        let a: SignedComposition = a.parse()?;
        let (l, method) = subgroup_length(&a, &w)?;
        doc["subgroup"] = json!(a.to_string());
        doc["subgroup_length"] = json!(l);
        doc["subgroup_length_method"] = json!(method);
    }
    let text = match cli.format {
        Format::Json => render::to_json(&doc),
        Format::Csv => {
            let mut out = csv::Writer::from_writer(Vec::new());
            out.write_record(["field", "value"])?;
            for (k, v) in doc.as_object().expect("element document is an object") {
                let value = v.as_str().map_or_else(|| v.to_string(), str::to_string);
                out.write_record([k.as_str(), value.as_str()])?;
            }
            String::from_utf8(out.into_inner().map_err(|e| CliError::Io(e.into_error()))?).expect("utf-8")
        }
    };
    emit(cli, &text)
}

fn verify_command(cli: &Cli, suite: Option<&str>) -> Result<(), CliError> {
    let n = require_n(cli)?;
    let suites: Vec<Suite> = match suite {
        Some(s) => vec![s.parse()?],
        None => Suite::ALL.to_vec(),
    };
    let bound_of = |s: Suite| cli.max_n.unwrap_or(s.max_rank());
    // Without --suite, suites whose bound is below n are skipped; if none remain it is an error.
    let runnable: Vec<Suite> = suites.iter().copied().filter(|&s| n <= bound_of(s)).collect();
    if runnable.is_empty() || (suite.is_some() && runnable.len() != suites.len()) {
        let max = suites.iter().map(|&s| bound_of(s)).max().unwrap_or(0);
        return Err(CliError::Bound { rank: n, max });
    }
    let h = Hyperoctahedral::with_max(n, n.max(DEFAULT_MAX_ENUMERATION))?;
    let mut lines = String::new();
    let mut results = Vec::new();
    let mut failed = 0;
    for &s in &suites {
        if !runnable.contains(&s) {
            lines.push_str(&format!("SKIP {s}: n = {n} exceeds bound {}\n", bound_of(s)));
            continue;
        }
        for r in run_suite(&h, s, Some(bound_of(s)))? {
            let status = if r.passed { "PASS" } else { "FAIL" };
            failed += usize::from(!r.passed);
            lines.push_str(&format!("{status} {}: {}", r.suite, r.property));
            if !r.detail.is_empty() {
                lines.push_str(&format!(" ({})", r.detail));
            }
            lines.push('\n');
            results.push(json!({
                "suite": r.suite.name(),
                "property": r.property,
                "passed": r.passed,
                "detail": r.detail,
            }));
        }
    }
    let text = match cli.format {
        Format::Json => render::to_json(&json!({
            "schema_version": cache::SCHEMA_VERSION,
            "n": n,
            "failed": failed,
            "results": results,
        })),
        Format::Csv => lines,
    };
    emit(cli, &text)?;
    if failed > 0 {
        return Err(CliError::Failed(failed));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Marks { table } => table_command(cli, Kind::Marks, DEFAULT_MAX_ENUMERATION, table),
        Command::Idempotents => table_command(cli, Kind::Idempotents, DEFAULT_MAX_ENUMERATION, ""),
        Command::Classes => table_command(cli, Kind::Classes, DEFAULT_MAX_ENUMERATION, ""),
        Command::Typesn => table_command(cli, Kind::TypeSn, DEFAULT_MAX_ENUMERATION, ""),
        Command::ExportMr => table_command(cli, Kind::Mr, DEFAULT_MAX_MR, ""),
        Command::Element { word, window, subgroup } => {
            element_command(cli, word.as_deref(), window.as_deref(), subgroup.as_deref())
        }
        Command::Verify { suite } => verify_command(cli, suite.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
