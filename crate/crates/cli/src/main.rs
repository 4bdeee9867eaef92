//! Command line for exact torus-link homology dimensions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input (including
//! cache fingerprint mismatches), 3 internal contradiction (cycle, failed
//! exact division, non-polynomial closure, depth bound).

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};

use torushom_cli::cache::{resolve_path, Cache, CacheError};
use torushom_cli::formats;
use torushom_core::invariants::{
    compute_report, homfly_compare, hrw_ratio_check, invariance_verify, mirror_verify,
    TorusLinkSpec, UnitReport,
};
use torushom_core::recursion::{convention_fingerprint, evaluate, explain, MemoTable};
use torushom_core::symmetric::{Permutation, State, Theory, Word};
use torushom_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "torushom",
    version,
    about = "Exact graded dimensions of y-ified colored torus link homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Memo cache file (overrides the TORUSHOM_CACHE environment variable)
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Worker threads for verify/table fan-out
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Column,
    Row,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::Column => Theory::Column,
            TheoryArg::Row => Theory::Row,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariant of a positive torus link
    Compute {
        /// Torus parameters m n
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        torus: Vec<u32>,
        /// Color of the distinguished component
        #[arg(long, default_value_t = 1)]
        color: u32,
        #[arg(long, value_enum, default_value = "column")]
        theory: TheoryArg,
        /// Also compute the reduced invariant
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a single recursion state p(v, w; sigma)
    State {
        /// First word as a bit-string, e.g. 110
        #[arg(long)]
        v: String,
        /// Second word as a bit-string
        #[arg(long)]
        w: String,
        /// Twist in one-line notation, e.g. 2,3,1 (default: identity)
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, value_enum, default_value = "column")]
        theory: TheoryArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the full expansion tree instead of just the value
        #[arg(long)]
        explain: bool,
    },
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Stream one invariant report per (m, n, k)
    Table {
        /// Upper bound for both m and n
        #[arg(long, default_value_t = 3)]
        max: u32,
        /// Upper bound for the color k
        #[arg(long, default_value_t = 1)]
        color_max: u32,
        #[arg(long, value_enum, default_value = "column")]
        theory: TheoryArg,
        /// Include reduced invariants
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Show statistics of the configured memo cache
    CacheInfo,
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Mirror symmetry: swap_QT(row) == column up to a positive unit
    Mirror {
        #[arg(long, default_value_t = 3)]
        max: u32,
        #[arg(long, default_value_t = 2)]
        color_max: u32,
    },
    /// Reduced column invariant at T = Q^-1 against the Hecke oracle
    Homfly {
        #[arg(long, default_value_t = 5)]
        max: u32,
    },
    /// Column unknot against the HRW unknot times the Gaussian factorial
    Hrw {
        #[arg(long, default_value_t = 4)]
        color_max: u32,
    },
    /// Topological invariance T(m, n) == T(n, m)
    Invariance {
        #[arg(long, default_value_t = 4)]
        max: u32,
        #[arg(long, default_value_t = 2)]
        color_max: u32,
    },
}

enum AppError {
    Core(CoreError),
    Cache(CacheError),
    VerificationFailed(usize),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::VerificationFailed(_) => 1,
            AppError::Cache(_) => 2,
            AppError::Core(e) => match e {
                CoreError::Parse(_)
                | CoreError::InvalidState(_)
                | CoreError::SizeMismatch { .. }
                | CoreError::IndexOutOfRange { .. } => 2,
                CoreError::CycleDetected(_)
                | CoreError::DepthExceeded { .. }
                | CoreError::NotDivisible
                | CoreError::ZeroDenominator
                | CoreError::NonPolynomialResult => 3,
            },
        }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Cache(e) => write!(f, "{e}"),
            AppError::VerificationFailed(n) => write!(f, "{n} case(s) failed verification"),
        }
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        AppError::Core(e)
    }
}

impl From<CacheError> for AppError {
    fn from(e: CacheError) -> Self {
        AppError::Cache(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // recursion depth scales with word length; give the engine a roomy stack
    let worker = std::thread::Builder::new()
        .name("torushom".into())
        .stack_size(256 * 1024 * 1024)
        .spawn(move || run(cli))
        .expect("failed to spawn worker thread");
    match worker.join() {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    let cache_path = resolve_path(cli.cache.clone());
    let mut memo = MemoTable::new();
    let cache = match &cache_path {
        Some(path) => Some(Cache::load(path, &mut memo)?),
        None => None,
    };

    let jobs = cli.jobs.max(1);
    let result = match cli.command {
        Command::Compute {
            torus,
            color,
            theory,
            reduced,
            format,
        } => cmd_compute(&torus, color, theory.into(), reduced, format, &mut memo),
        Command::State {
            v,
            w,
            sigma,
            theory,
            format,
            explain: explain_flag,
        } => cmd_state(&v, &w, sigma.as_deref(), theory.into(), format, explain_flag, &mut memo),
        Command::Verify { suite } => cmd_verify(suite, jobs, &mut memo),
        Command::Table {
            max,
            color_max,
            theory,
            reduced,
            format,
        } => cmd_table(max, color_max, theory.into(), reduced, format, jobs, &mut memo),
        Command::CacheInfo => cmd_cache_info(cache.as_ref(), &memo),
    };

    // persist even when verification failed; values computed so far are valid
    if let Some(cache) = &cache {
        match result {
            Err(AppError::Core(_)) => {}
            _ => {
                cache.save(&memo)?;
            }
        }
    }
    result
}

fn render_value(value: &torushom_core::RatFunc, format: Format) -> String {
    match format {
        Format::Text => formats::render_text(value),
        Format::Json => formats::render_json(value),
        Format::Latex => formats::render_latex(value),
    }
}

fn cmd_compute(
    torus: &[u32],
    color: u32,
    theory: Theory,
    reduced: bool,
    format: Format,
    memo: &mut MemoTable,
) -> Result<(), AppError> {
    let spec = TorusLinkSpec::new(torus[0], torus[1], color, theory)?;
    let report = compute_report(&spec, reduced, memo)?;
    match format {
        Format::Json => {
            let dto = formats::ReportJson::from(&report);
            println!("{}", serde_json::to_string(&dto).expect("serializable"));
        }
        Format::Text => {
            println!("{}", formats::render_text(&report.value));
            if let Some(red) = &report.reduced {
                println!("reduced: {}", formats::render_text(red));
            }
        }
        Format::Latex => {
            println!("{}", formats::render_latex(&report.value));
            if let Some(red) = &report.reduced {
                println!("{}", formats::render_latex(red));
            }
        }
    }
    Ok(())
}

fn cmd_state(
    v: &str,
    w: &str,
    sigma: Option<&str>,
    theory: Theory,
    format: Format,
    explain_flag: bool,
    memo: &mut MemoTable,
) -> Result<(), AppError> {
    let v: Word = v.parse().map_err(AppError::Core)?;
    let w: Word = w.parse().map_err(AppError::Core)?;
    let sigma = match sigma {
        Some(text) => text.parse::<Permutation>().map_err(AppError::Core)?,
        None => Permutation::identity(v.ones()),
    };
    let state = State::new(theory, v, w, sigma)?;
    if explain_flag {
        let tree = explain(&state)?;
        print!("{}", tree.render());
        return Ok(());
    }
    let value = evaluate(&state, memo)?;
    println!("{}", render_value(&value, format));
    Ok(())
}

struct VerifyCase {
    label: String,
    report: Result<UnitReport, CoreError>,
}

fn run_cases<F>(items: Vec<(u32, u32, u32)>, jobs: usize, memo: &mut MemoTable, f: F) -> Vec<VerifyCase>
where
    F: Fn(u32, u32, u32, &mut MemoTable) -> Result<UnitReport, CoreError> + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items
            .into_iter()
            .map(|(m, n, k)| VerifyCase {
                label: format!("T({m},{n}) k={k}"),
                report: f(m, n, k, memo),
            })
            .collect();
    }
    // shared-nothing fan-out: workers own private memo tables (duplicate
    // computation of a key is benign), results keep input order
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<VerifyCase>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    let tables: Mutex<Vec<MemoTable>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(items.len()) {
            let builder = std::thread::Builder::new().stack_size(256 * 1024 * 1024);
            let (next, slots, tables, items, f) = (&next, &slots, &tables, &items, &f);
            builder
                .spawn_scoped(scope, move || {
                    let mut local = MemoTable::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= items.len() {
                            break;
                        }
                        let (m, n, k) = items[i];
                        let case = VerifyCase {
                            label: format!("T({m},{n}) k={k}"),
                            report: f(m, n, k, &mut local),
                        };
                        slots.lock().unwrap()[i] = Some(case);
                    }
                    tables.lock().unwrap().push(local);
                })
                .expect("failed to spawn verify worker");
        }
    });
    for table in tables.into_inner().unwrap() {
        for (state, value) in table.iter() {
            memo.insert(state.clone(), value.clone());
        }
    }
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|slot| slot.expect("all case slots filled"))
        .collect()
}

fn print_verify_outcome(name: &str, cases: Vec<VerifyCase>) -> Result<(), AppError> {
    let mut failures = Vec::new();
    for case in &cases {
        match &case.report {
            Ok(report) => {
                let unit = report
                    .unit
                    .as_ref()
                    .map(|u| u.to_string())
                    .unwrap_or_else(|| "none".to_string());
                let status = if report.pass { "pass" } else { "FAIL" };
                println!("{:<16} unit={:<16} {}", case.label, unit, status);
                if !report.pass {
                    failures.push(case.label.clone());
                }
            }
            Err(e) => return Err(AppError::Core(e.clone())),
        }
    }
    if failures.is_empty() {
        println!("{name}: {}/{} passed", cases.len(), cases.len());
        Ok(())
    } else {
        println!(
            "{name}: {}/{} passed; failing: {}",
            cases.len() - failures.len(),
            cases.len(),
            failures.join(", ")
        );
        Err(AppError::VerificationFailed(failures.len()))
    }
}

fn cmd_verify(suite: VerifySuite, jobs: usize, memo: &mut MemoTable) -> Result<(), AppError> {
    match suite {
        VerifySuite::Mirror { max, color_max } => {
            let mut items = Vec::new();
            for m in 1..=max {
                for n in 1..=max {
                    for k in 1..=color_max {
                        items.push((m, n, k));
                    }
                }
            }
            let cases = run_cases(items, jobs, memo, |m, n, k, memo| mirror_verify(m, n, k, memo));
            print_verify_outcome("mirror", cases)
        }
        VerifySuite::Invariance { max, color_max } => {
            let mut items = Vec::new();
            for m in 1..=max {
                for n in m..=max {
                    for k in 1..=color_max {
                        items.push((m, n, k));
                    }
                }
            }
            let cases =
                run_cases(items, jobs, memo, |m, n, k, memo| invariance_verify(m, n, k, memo));
            print_verify_outcome("invariance", cases)
        }
        VerifySuite::Homfly { max } => {
            let mut items = vec![(1, 1, 1)];
            for m in 2..=max {
                for n in (m + 1)..=max {
                    if gcd(m, n) == 1 {
                        items.push((m, n, 1));
                    }
                }
            }
            let cases = run_cases(items, jobs, memo, |m, n, _, memo| homfly_compare(m, n, memo));
            print_verify_outcome("homfly", cases)
        }
        VerifySuite::Hrw { color_max } => {
            let items: Vec<_> = (1..=color_max).map(|k| (1, 1, k)).collect();
            let cases = run_cases(items, jobs, memo, |_, _, k, memo| hrw_ratio_check(k, memo));
            print_verify_outcome("hrw", cases)
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cmd_table(
    max: u32,
    color_max: u32,
    theory: Theory,
    reduced: bool,
    format: Format,
    jobs: usize,
    memo: &mut MemoTable,
) -> Result<(), AppError> {
    let mut items = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            for k in 1..=color_max {
                items.push((m, n, k));
            }
        }
    }
    // reuse the fan-out machinery by computing reports per item
    let reports: Mutex<Vec<Option<Result<torushom_core::invariants::InvariantReport, CoreError>>>> =
        Mutex::new((0..items.len()).map(|_| None).collect());
    let compute_one = |m: u32, n: u32, k: u32, memo: &mut MemoTable| {
        TorusLinkSpec::new(m, n, k, theory).and_then(|spec| compute_report(&spec, reduced, memo))
    };
    if jobs <= 1 {
        for (i, &(m, n, k)) in items.iter().enumerate() {
            let r = compute_one(m, n, k, memo);
            reports.lock().unwrap()[i] = Some(r);
        }
    } else {
        let next = AtomicUsize::new(0);
        let tables: Mutex<Vec<MemoTable>> = Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(items.len()) {
                let builder = std::thread::Builder::new().stack_size(256 * 1024 * 1024);
                let (next, reports, tables, items, compute_one) =
                    (&next, &reports, &tables, &items, &compute_one);
                builder
                    .spawn_scoped(scope, move || {
                        let mut local = MemoTable::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= items.len() {
                                break;
                            }
                            let (m, n, k) = items[i];
                            let r = compute_one(m, n, k, &mut local);
                            reports.lock().unwrap()[i] = Some(r);
                        }
                        tables.lock().unwrap().push(local);
                    })
                    .expect("failed to spawn table worker");
            }
        });
        for table in tables.into_inner().unwrap() {
            for (state, value) in table.iter() {
                memo.insert(state.clone(), value.clone());
            }
        }
    }
    for slot in reports.into_inner().unwrap() {
        let report = slot.expect("all slots filled")?;
        match format {
            Format::Json => {
                let dto = formats::ReportJson::from(&report);
                println!("{}", serde_json::to_string(&dto).expect("serializable"));
            }
            Format::Text => {
                println!(
                    "T({},{}) k={} [{}]: {}",
                    report.spec.m,
                    report.spec.n,
                    report.spec.k,
                    report.spec.theory.name(),
                    formats::render_text(&report.value)
                );
                if let Some(red) = &report.reduced {
                    println!("  reduced: {}", formats::render_text(red));
                }
            }
            Format::Latex => {
                println!(
                    "% T({},{}) k={} [{}]",
                    report.spec.m,
                    report.spec.n,
                    report.spec.k,
                    report.spec.theory.name()
                );
                println!("{}", formats::render_latex(&report.value));
            }
        }
    }
    Ok(())
}

fn cmd_cache_info(cache: Option<&Cache>, memo: &MemoTable) -> Result<(), AppError> {
    println!("engine fingerprint: {}", convention_fingerprint());
    match cache {
        None => println!("no cache configured (set TORUSHOM_CACHE or pass --cache)"),
        Some(cache) => {
            println!("cache file: {}", cache.path.display());
            println!("entries: {}", memo.len());
            if cache.skipped_lines > 0 {
                println!("corrupt lines skipped: {}", cache.skipped_lines);
            }
            let column = memo
                .iter()
                .filter(|(s, _)| s.theory() == Theory::Column)
                .count();
            println!("column entries: {column}");
            println!("row entries: {}", memo.len() - column);
        }
    }
    Ok(())
}
