mod sbox;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use boomtab::closed_form::Predictor;
use boomtab::reference::{find_representation, ReferenceTable};
use boomtab::tables::{self, export, full, DomainFilter, Sweep};
use boomtab::verify::{self, Budget, Suite, VerifyConfig};
use boomtab::{Elem, Error, TableKind, VecFun};

use sbox::{FieldChoice, SboxSpec};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONFIG: u8 = 3;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  verification mismatch (entry --method both, verify, spectrum row sums)
  2  usage error: bad flag, unknown kind or table, wrong index arity, malformed input
  3  hypothesis or configuration error: closed form not applicable, budget refused,
     invalid modulus, I/O failure

Environment:
  BOOMTAB_THREADS  worker threads for parallel sweeps; never changes results";

#[derive(Parser)]
#[command(name = "boomtab", version, about = "Boomerang connectivity tables over GF(2^n)", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field degree.
    #[arg(long)]
    n: Option<u32>,
    /// Irreducible modulus in hex (default: a fixed primitive polynomial per n).
    #[arg(long, value_parser = parse_hex)]
    modulus: Option<u64>,
}

impl FieldArgs {
    fn choice(&self) -> FieldChoice {
        FieldChoice {
            n: self.n,
            modulus: self.modulus,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one table entry by brute force, closed form, or both.
    Entry {
        #[command(flatten)]
        field: FieldArgs,
        /// power:<d> | gold:<s> | kasami:<s> | bracken:<s> | inverse | poly:<c0,c1,..> | lut:@<path> | gold-ccz5
        #[arg(long)]
        sbox: SboxSpec,
        /// ddt | bct | fbct | dd | ubct | lbct | ebct | dbct
        #[arg(long)]
        kind: TableKind,
        /// Comma-separated coordinates, each hex or g^k.
        #[arg(long)]
        indices: String,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Histogram of table values over the full or a sampled index space.
    Spectrum {
        #[command(flatten)]
        field: FieldArgs,
        /// Function, in the same syntax as for `entry`.
        #[arg(long)]
        sbox: SboxSpec,
        /// ddt | bct | fbct | dd | ubct | lbct | ebct | dbct
        #[arg(long)]
        kind: TableKind,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Sweep every tuple (the default unless --sample is given).
        #[arg(long, conflicts_with = "sample")]
        full: bool,
        /// Number of seeded random tuples.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the histogram to a .csv or .json file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export every entry of a table to CSV or JSON.
    Table {
        #[command(flatten)]
        field: FieldArgs,
        /// Function, in the same syntax as for `entry`.
        #[arg(long)]
        sbox: SboxSpec,
        /// ddt | bct | fbct | dd | ubct | lbct | ebct | dbct
        #[arg(long)]
        kind: TableKind,
        /// Output file; the format follows the .csv or .json extension.
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check closed forms and identities against brute force.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// gold | kasami | bracken | inverse | delta | apn | relations | equiv | all
        #[arg(long)]
        suite: Suite,
        /// Suite parameters, e.g. s=2.
        #[arg(long)]
        params: Option<String>,
        /// Function under test for the delta, apn, equiv and relations suites.
        #[arg(long)]
        sbox: Option<SboxSpec>,
        /// `full`, or a number of seeded tuples per check.
        #[arg(long, default_value = "full")]
        budget: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Search field representations for one reproducing a published reference table.
    FindRepresentation {
        #[arg(long)]
        n: u32,
        /// paper2 | paper3 | paper4 | paper5 | x11
        #[arg(long)]
        table: ReferenceTable,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Nonzero,
}

impl From<Filter> for DomainFilter {
    fn from(f: Filter) -> Self {
        match f {
            Filter::All => DomainFilter::All,
            Filter::Nonzero => DomainFilter::NonZero,
        }
    }
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let t = s.strip_prefix("0x").unwrap_or(s);
    u64::from_str_radix(t, 16).map_err(|_| format!("expected a hex integer, got {s:?}"))
}

/// Failure of a subcommand, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::Arity { .. }
            | Error::ElementOutOfRange(_)
            | Error::LutLength { .. }
            | Error::LutValue { .. }
            | Error::Json(_) => EXIT_USAGE,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn parse_indices(f: &VecFun, kind: TableKind, text: &str) -> Result<Vec<Elem>, Error> {
    let idx = text
        .split(',')
        .map(|t| f.field().parse_elem(t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    kind.check_arity(&idx)?;
    Ok(idx)
}

fn cmd_entry(field: &FieldArgs, sbox: &SboxSpec, kind: TableKind, indices: &str, method: Method) -> CmdResult {
    let f = sbox.resolve(&field.choice())?;
    let idx = parse_indices(&f, kind, indices)?;
    let brute = || tables::entry(&f, kind, &idx);
    let closed = || -> Result<(u64, &'static str), Error> {
        let p = Predictor::new(&f)?;
        Ok((p.entry(kind, &idx)?, p.method()))
    };
    match method {
        Method::Brute => println!("{}", brute()?),
        Method::Closed => println!("{}", closed()?.0),
        Method::Both => {
            let (c, how) = closed()?;
            let b = brute()?;
            let verdict = if b == c { "MATCH" } else { "MISMATCH" };
            println!("brute {b} / closed {c} ({how}) {verdict}");
            if b != c {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(0)
}

/// Row sums of the DDT are 2^n for every function; column sums are 2^n exactly
/// for permutations. Returns false if an expected sum fails.
fn ddt_sums(f: &VecFun) -> bool {
    let t = full::ddt_table(f);
    let size = f.size() as u64;
    let rows_ok = (0..size as Elem).all(|a| (0..size as Elem).map(|b| t.get(a, b)).sum::<u64>() == size);
    println!(
        "row sums: {}",
        if rows_ok {
            format!("all {size}")
        } else {
            "NOT constant".into()
        }
    );
    if !f.is_permutation() {
        return rows_ok;
    }
    let cols_ok = (0..size as Elem).all(|b| (0..size as Elem).map(|a| t.get(a, b)).sum::<u64>() == size);
    println!(
        "column sums: {}",
        if cols_ok {
            format!("all {size}")
        } else {
            "NOT constant".into()
        }
    );
    rows_ok && cols_ok
}

fn extension(path: &Path) -> Result<&str, Error> {
    match path.extension().and_then(|e| e.to_str()) {
        Some(e @ ("csv" | "json")) => Ok(e),
        _ => Err(Error::Parse(format!(
            "{}: output must end in .csv or .json",
            path.display()
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    field: &FieldArgs,
    sbox: &SboxSpec,
    kind: TableKind,
    filter: Filter,
    sample: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> CmdResult {
    let fmt = out.map(extension).transpose()?;
    let f = sbox.resolve(&field.choice())?;
    let sweep = match sample {
        Some(samples) => Sweep::Sampled { samples, seed },
        None => Sweep::Full,
    };
    let s = tables::spectrum(&f, kind, filter.into(), sweep)?;
    let domain = match sweep {
        Sweep::Full => "full".to_string(),
        Sweep::Sampled { samples, seed } => format!("{samples} samples, seed {seed}"),
    };
    println!(
        "{kind} spectrum, n={}, modulus {:#x}, filter {}, {domain}",
        f.n(),
        f.field().modulus(),
        filter_name(filter)
    );
    for (v, c) in &s.histogram {
        println!("{v:>8} {c}");
    }
    println!("total {}", s.total());
    if let Some(m) = s.max_nontrivial {
        println!("max nontrivial {m}");
    }
    let mut code = 0;
    if kind == TableKind::Ddt && !ddt_sums(&f) {
        code = EXIT_MISMATCH;
    }
    if let (Some(path), Some(fmt)) = (out, fmt) {
        let text = match fmt {
            "csv" => export::spectrum_csv(&s),
            _ => pretty(&export::spectrum_json(&s, f.field().modulus()))?,
        };
        std::fs::write(path, text).map_err(Error::from)?;
    }
    Ok(code)
}

fn filter_name(f: Filter) -> &'static str {
    match f {
        Filter::All => "all",
        Filter::Nonzero => "nonzero",
    }
}

fn pretty(v: &serde_json::Value) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn cmd_table(field: &FieldArgs, sbox: &SboxSpec, kind: TableKind, out: &Path) -> CmdResult {
    let fmt = extension(out)?;
    let f = sbox.resolve(&field.choice())?;
    let n = f.n();
    if n > kind.full_sweep_max_n() {
        return Err(Error::BudgetExceeded {
            kind,
            n,
            max_n: kind.full_sweep_max_n(),
            estimated_ops: kind.full_sweep_cost(n),
        }
        .into());
    }
    let size = f.size() as u64;
    let arity = kind.arity();
    let total = size.pow(arity as u32);
    let tuples: Vec<Vec<Elem>> = (0..total)
        .map(|mut k| {
            let mut t = vec![0; arity];
            for slot in t.iter_mut().rev() {
                *slot = (k % size) as Elem;
                k /= size;
            }
            t
        })
        .collect();
    let values = tuples
        .par_iter()
        .map(|t| tables::entry(&f, kind, t))
        .collect::<Result<Vec<u64>, Error>>()?;
    let rows = tuples.iter().map(Vec::as_slice).zip(values);
    let text = match fmt {
        "csv" => export::entries_csv(kind, rows),
        _ => pretty(&export::entries_json(kind, n, f.field().modulus(), rows))?,
    };
    std::fs::write(out, text).map_err(Error::from)?;
    println!("wrote {total} {kind} entries to {}", out.display());
    Ok(0)
}

fn parse_params(text: Option<&str>) -> Result<Option<u32>, Error> {
    let mut s = None;
    for kv in text.into_iter().flat_map(|t| t.split(',')).filter(|kv| !kv.is_empty()) {
        match kv.split_once('=') {
            Some(("s", v)) => {
                s = Some(
                    v.parse()
                        .map_err(|_| Error::Parse(format!("bad value in parameter {kv:?}")))?,
                );
            }
            _ => return Err(Error::Parse(format!("unknown parameter {kv:?}; expected s=<int>"))),
        }
    }
    Ok(s)
}

fn parse_budget(text: &str, seed: u64) -> Result<Budget, Error> {
    if text.eq_ignore_ascii_case("full") {
        return Ok(Budget::Full);
    }
    match text.parse() {
        Ok(samples) if samples > 0 => Ok(Budget::Sampled { samples, seed }),
        _ => Err(Error::Parse(format!(
            "budget must be `full` or a positive count, got {text:?}"
        ))),
    }
}

struct VerifyArgs<'a> {
    field: &'a FieldArgs,
    suite: Suite,
    params: Option<&'a str>,
    sbox: Option<&'a SboxSpec>,
    budget: &'a str,
    seed: u64,
    json: bool,
}

fn cmd_verify(a: VerifyArgs<'_>) -> CmdResult {
    let s = parse_params(a.params)?;
    let budget = parse_budget(a.budget, a.seed)?;
    let function = a.sbox.map(|sb| sb.resolve(&a.field.choice())).transpose()?;
    let field = match &function {
        Some(f) => f.field().clone(),
        None => a.field.choice().field()?,
    };
    let cfg = VerifyConfig {
        s,
        function,
        ..VerifyConfig::new(field, budget)
    };
    let report = verify::run(a.suite, &cfg)?;
    if a.json {
        print!("{}", pretty(&serde_json::to_value(&report).map_err(Error::from)?)?);
    } else {
        println!("{report}");
    }
    Ok(if report.passed() { 0 } else { EXIT_MISMATCH })
}

fn cmd_find_representation(n: u32, table: ReferenceTable) -> CmdResult {
    let report = find_representation(table, n)?;
    print!("{report}");
    Ok(0)
}

fn init_threads() {
    if let Some(k) = std::env::var("BOOMTAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // The global pool can only be built once; a failure leaves the default pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    init_threads();
    let result = match &cli.command {
        Command::Entry {
            field,
            sbox,
            kind,
            indices,
            method,
        } => cmd_entry(field, sbox, *kind, indices, *method),
        Command::Spectrum {
            field,
            sbox,
            kind,
            filter,
            full: _,
            sample,
            seed,
            out,
        } => cmd_spectrum(field, sbox, *kind, *filter, *sample, *seed, out.as_deref()),
        Command::Table { field, sbox, kind, out } => cmd_table(field, sbox, *kind, out),
        Command::Verify {
            field,
            suite,
            params,
            sbox,
            budget,
            seed,
            json,
        } => cmd_verify(VerifyArgs {
            field,
            suite: *suite,
            params: params.as_deref(),
            sbox: sbox.as_ref(),
            budget,
            seed: *seed,
            json: *json,
        }),
        Command::FindRepresentation { n, table } => cmd_find_representation(*n, *table),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
