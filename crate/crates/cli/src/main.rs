use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use quiddity_cli::verify::{run_suite, small_count, Suite};
use quiddity_cli::{report::CheckStatus, tables};
use quiddity_core::counting::{
    crt_count, dp_count_all, naive_count, recurrence_u, u_formula, w4_formula, z4_recurrence,
};
use quiddity_core::irreducible::enumerate_irreducible;
use quiddity_core::{Error, Quiddity, Result, Ring, RingSpec, Sign};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "quiddity",
    version,
    about = "Exact counting and enumeration of λ-quiddities over Z/NZ and finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the size-n solutions of the matrix equation over a ring.
    Count {
        /// Ring specification: zmod:N or gf:p^k[:poly=c0,c1,...,ck]
        #[arg(long)]
        ring: String,
        /// Tuple size n >= 1
        #[arg(long)]
        n: u32,
        /// Scalar target: the +Id solutions, the -Id solutions, or their union
        #[arg(long, value_enum, default_value_t = TargetArg::All)]
        target: TargetArg,
        /// How to compute the count
        #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
        method: MethodArg,
    },
    /// Regenerate the reference tables as CSV or JSON files.
    Tables {
        #[arg(long, value_enum, default_value_t = WhichArg::All)]
        which: WhichArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Output directory
        #[arg(long, default_value = "tables")]
        out: PathBuf,
        /// Largest modulus for the irreducible census table
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Length budget for the census's adaptive cap
        #[arg(long, default_value_t = 24)]
        budget: u32,
        /// Worker threads (0 = default); the QUIDDITY_JOBS env var overrides
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Enumerate irreducible solution classes over Z/NZ.
    Irreducible {
        /// Ring specification (must be zmod:N)
        #[arg(long)]
        ring: String,
        /// Length cap for the search (>= 4)
        #[arg(long)]
        max_len: u32,
        /// Worker threads (0 = default); the QUIDDITY_JOBS env var overrides
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write one canonical class representative per line to this file
        #[arg(long)]
        emit_classes: Option<PathBuf>,
    },
    /// Run a verification suite against the shipped reference tables.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Worker threads (0 = default); the QUIDDITY_JOBS env var overrides
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Plus,
    Minus,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Dp,
    Naive,
    Recurrence,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Formula => "formula",
            MethodArg::Dp => "dp",
            MethodArg::Naive => "naive",
            MethodArg::Recurrence => "recurrence",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    WMinus,
    WPlus,
    St,
    VEll,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Tables,
    Formulas,
    Recurrence,
    Irreducible,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Formulas => Suite::Formulas,
            SuiteArg::Recurrence => Suite::Recurrence,
            SuiteArg::Irreducible => Suite::Irreducible,
            SuiteArg::All => Suite::All,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(match e {
                Error::Resource(_) => 3,
                _ => 2,
            });
        }
    }
}

fn resolve_jobs(flag: usize) -> usize {
    std::env::var("QUIDDITY_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(flag)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Count {
            ring,
            n,
            target,
            method,
        } => cmd_count(&ring, n, target, method),
        Command::Tables {
            which,
            format,
            out,
            n_max,
            budget,
            jobs,
        } => cmd_tables(which, format, &out, n_max, budget, resolve_jobs(jobs)),
        Command::Irreducible {
            ring,
            max_len,
            jobs,
            emit_classes,
        } => cmd_irreducible(&ring, max_len, resolve_jobs(jobs), emit_classes.as_deref()),
        Command::Verify { suite, jobs } => cmd_verify(suite.into(), resolve_jobs(jobs)),
    }
}

/// One count for one scalar target. In characteristic 2 the two targets are
/// the same matrix, so formulas are consulted through the -Id branch there.
fn count_one(ring: &Ring, n: u32, sign: Sign, method: MethodArg) -> Result<BigUint> {
    let effective = if ring.one_equals_minus_one() {
        Sign::Minus
    } else {
        sign
    };
    match method {
        MethodArg::Dp => Ok(dp_count_all(ring, n)?.sign_count(sign).clone()),
        MethodArg::Naive => naive_count(ring, n, &sign.target(ring)),
        MethodArg::Recurrence => match ring.spec() {
            RingSpec::Zmod { modulus: 4 } if n >= 2 => z4_recurrence(&sign.target(ring), n),
            RingSpec::Zmod { modulus: 4 } => naive_count(ring, n, &sign.target(ring)),
            _ => recurrence_u(ring, n, effective),
        },
        MethodArg::Formula => {
            if n <= 4 {
                return small_count(ring, n, sign);
            }
            match ring.spec() {
                RingSpec::Zmod { modulus: 4 } => w4_formula(n, sign),
                RingSpec::Zmod { modulus } => crt_count(n, *modulus, sign),
                RingSpec::FiniteField { .. } => u_formula(n, ring.size() as u64, effective),
            }
        }
    }
}

fn cmd_count(ring_spec: &str, n: u32, target: TargetArg, method: MethodArg) -> Result<i32> {
    let ring = Ring::parse(ring_spec)?;
    let value = match target {
        TargetArg::Plus => count_one(&ring, n, Sign::Plus, method)?,
        TargetArg::Minus => count_one(&ring, n, Sign::Minus, method)?,
        TargetArg::All => {
            // Union of the two targets; a single target in characteristic 2.
            if ring.one_equals_minus_one() {
                count_one(&ring, n, Sign::Minus, method)?
            } else {
                count_one(&ring, n, Sign::Plus, method)?
                    + count_one(&ring, n, Sign::Minus, method)?
            }
        }
    };
    let out = serde_json::json!({
        "ring": ring.spec().to_string(),
        "n": n,
        "target": match target {
            TargetArg::Plus => "plus",
            TargetArg::Minus => "minus",
            TargetArg::All => "all",
        },
        "method": method.name(),
        "value": value.to_string(),
    });
    println!("{out}");
    Ok(0)
}

fn cmd_tables(
    which: WhichArg,
    format: FormatArg,
    out: &PathBuf,
    n_max: u32,
    budget: u32,
    jobs: usize,
) -> Result<i32> {
    let io_err = |e: std::io::Error| Error::InvalidArgument(format!("writing tables: {e}"));
    std::fs::create_dir_all(out).map_err(io_err)?;
    let mut selected = Vec::new();
    if matches!(which, WhichArg::WMinus | WhichArg::All) {
        selected.push(tables::w_table(Sign::Minus)?);
    }
    if matches!(which, WhichArg::WPlus | WhichArg::All) {
        selected.push(tables::w_table(Sign::Plus)?);
    }
    if matches!(which, WhichArg::St | WhichArg::All) {
        selected.push(tables::st_table()?);
    }
    if matches!(which, WhichArg::VEll | WhichArg::All) {
        selected.push(tables::v_ell_table(2, n_max, budget, jobs)?);
    }
    let mut written = Vec::new();
    for table in selected {
        let (path, bytes) = match format {
            FormatArg::Csv => (out.join(format!("{}.csv", table.name)), table.to_csv()),
            FormatArg::Json => (
                out.join(format!("{}.json", table.name)),
                format!("{}\n", serde_json::to_string_pretty(&table.to_json()).unwrap()),
            ),
        };
        std::fs::write(&path, bytes).map_err(io_err)?;
        written.push(path.to_string_lossy().into_owned());
    }
    println!("{}", serde_json::json!({ "written": written }));
    Ok(0)
}

fn cmd_irreducible(
    ring_spec: &str,
    max_len: u32,
    jobs: usize,
    emit: Option<&std::path::Path>,
) -> Result<i32> {
    let ring = Ring::parse(ring_spec)?;
    let set = enumerate_irreducible(&ring, max_len, jobs)?;
    if let Some(path) = emit {
        let mut file = std::fs::File::create(path)
            .map_err(|e| Error::InvalidArgument(format!("creating {}: {e}", path.display())))?;
        for class in set.classes() {
            let q = Quiddity::new(ring.clone(), class.to_vec())?;
            writeln!(file, "{q}")
                .map_err(|e| Error::InvalidArgument(format!("writing classes: {e}")))?;
        }
    }
    println!(
        "{}",
        serde_json::json!({
            "N": ring.size(),
            "v": set.v(),
            "ell": set.ell(),
            "complete": set.is_complete(),
            "truncated_branches": set.truncated_branches(),
        })
    );
    Ok(0)
}

fn cmd_verify(suite: Suite, jobs: usize) -> Result<i32> {
    let report = run_suite(suite, jobs)?;
    for check in &report.checks {
        match check.status {
            CheckStatus::Match => {}
            _ => eprintln!(
                "[{:?}] {}: expected {}, computed {}",
                check.status, check.anchor, check.expected, check.computed
            ),
        }
    }
    eprintln!(
        "suite {}: {} match, {} mismatch, {} flagged-typo, {} skipped",
        report.suite, report.matches, report.mismatches, report.flagged_typos, report.skipped
    );
    println!("{}", serde_json::to_string(&report).unwrap());
    Ok(if report.ok { 0 } else { 1 })
}
