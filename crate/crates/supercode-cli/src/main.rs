use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use supercode::bounds::bounds_table;
use supercode::enumcode::sample_uniform_wd_vector;
use supercode::error::Error;
use supercode::types::CodeParameters;
use supercode::verify::{
    check_lambda_matrix, check_superimposed_bruteforce, SuperimposedVerdict,
    DEFAULT_BRUTEFORCE_BUDGET,
};

use supercode_cli::format;
use supercode_cli::report::{BoundsJson, ReportJson};

// Exit codes, stable across releases:
//   0 success / verification passed
//   1 verification failed (witness printed)
//   2 invalid parameters or malformed input
//   3 resampling round limit exceeded
//   4 verification budget exceeded (cannot verify, not a failure)
const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_ROUND_LIMIT: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "supercode",
    version,
    about = "Construct, verify and size runlength-constrained superimposed codes",
    long_about = "Construct, verify and size (k,n,d)-superimposed codes: t x n binary test \
matrices for non-adaptive group testing in which any two 1's in a column are separated by a \
run of at least d zeros, and any column of any k-tuple keeps a row of its own. Construction \
is a seeded Las Vegas resampling procedure; its output is always a valid code. Since k = 1 \
is solved by a single all-ones row, k starts at 2."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code and write it in the SUPERCODE v1 text format.
    Construct {
        /// Number of columns (population size).
        #[arg(long)]
        n: usize,
        /// Separability order, 2 <= k <= n.
        #[arg(long)]
        k: usize,
        /// Minimum run of zeros between consecutive 1's in a column.
        #[arg(long)]
        d: usize,
        /// Column weight; defaults to ceil(1 + (k-1) ln(2en)).
        #[arg(long)]
        w: Option<usize>,
        /// Code length; defaults to the pairwise-overlap bound.
        #[arg(long)]
        t: Option<usize>,
        /// RNG seed; identical seeds give byte-identical output.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Safety cap on resampling steps; defaults to 100 * n.
        #[arg(long)]
        max_rounds: Option<u64>,
        /// Output path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON run report (statistics plus the bounds table).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Verify a matrix file.
    Verify {
        /// Matrix file in SUPERCODE v1 format.
        path: PathBuf,
        /// pairwise: weight/runlength/overlap against the file's w, d, lambda.
        /// full: exhaustive k-separability (exponential in k; budgeted).
        #[arg(long, value_enum)]
        mode: VerifyMode,
        /// Override k for full mode (default: the file's k).
        #[arg(long)]
        k: Option<usize>,
        /// Budget in elementary tuple-column checks for full mode.
        #[arg(long, default_value_t = DEFAULT_BRUTEFORCE_BUDGET)]
        budget: u64,
    },
    /// Print every length bound for an instance.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Column weight; defaults to ceil(1 + (k-1) ln(2en)).
        #[arg(long)]
        w: Option<usize>,
        /// Emit JSON instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// Sample uniform runlength-constrained columns as 0/1 strings.
    SampleColumn {
        /// Column length.
        #[arg(long)]
        t: usize,
        /// Column weight.
        #[arg(long)]
        w: usize,
        /// Minimum run of zeros between consecutive 1's.
        #[arg(long)]
        d: usize,
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        /// Number of independent draws.
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Pairwise,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Construct {
            n,
            k,
            d,
            w,
            t,
            seed,
            max_rounds,
            out,
            report,
        } => cmd_construct(n, k, d, w, t, seed, max_rounds, out, report),
        Command::Verify {
            path,
            mode,
            k,
            budget,
        } => cmd_verify(&path, mode, k, budget),
        Command::Bounds { n, k, d, w, json } => cmd_bounds(n, k, d, w, json),
        Command::SampleColumn {
            t,
            w,
            d,
            seed,
            count,
        } => cmd_sample_column(t, w, d, seed, count),
    };
    ExitCode::from(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    n: usize,
    k: usize,
    d: usize,
    w: Option<usize>,
    t: Option<usize>,
    seed: u64,
    max_rounds: Option<u64>,
    out: Option<PathBuf>,
    report_path: Option<PathBuf>,
) -> u8 {
    let mut params = CodeParameters::new(n, k, d).with_seed(seed);
    params.w = w;
    params.t = t;
    if let Some(cap) = max_rounds {
        params.max_rounds = cap;
    }
    let (matrix, report) = match supercode::construct_superimposed(&params) {
        Ok(result) => result,
        Err(err @ Error::RoundLimitExceeded { .. }) => {
            eprintln!("error: {err}");
            return EXIT_ROUND_LIMIT;
        }
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_INVALID;
        }
    };

    let text = format::write_matrix(&matrix);
    if let Some(path) = out {
        if let Err(err) = std::fs::write(&path, &text) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return EXIT_INVALID;
        }
    } else if let Err(err) = std::io::stdout().write_all(text.as_bytes()) {
        eprintln!("error: cannot write to stdout: {err}");
        return EXIT_INVALID;
    }
    eprintln!(
        "constructed t={} n={} k={} d={} w={} lambda={} seed={} resamples={} fallback={} in {:.1?}",
        report.t,
        report.n,
        report.k,
        report.d,
        report.w,
        report.lambda,
        report.seed,
        report.resample_count,
        report.fallback_used,
        report.elapsed
    );

    if let Some(path) = report_path {
        // The table describes the requested instance; under a fallback it can
        // differ from the emitted matrix and for n < 5 it is not defined.
        let bounds = bounds_table(n, k, d, w).ok();
        let json = ReportJson::new(&report, bounds.as_ref());
        let body = serde_json::to_string_pretty(&json).expect("report serializes");
        if let Err(err) = std::fs::write(&path, body) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return EXIT_INVALID;
        }
    }
    0
}

fn cmd_verify(path: &Path, mode: VerifyMode, k: Option<usize>, budget: u64) -> u8 {
    let matrix = match format::read_matrix_file(path) {
        Ok(matrix) => matrix,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_INVALID;
        }
    };
    let meta = *matrix.meta();
    match mode {
        VerifyMode::Pairwise => {
            let report = check_lambda_matrix(&matrix, meta.w, meta.d, meta.lambda);
            if report.passed() {
                println!(
                    "PASS pairwise: {} columns of weight {} with d={} gaps, overlaps <= {}",
                    meta.n, meta.w, meta.d, meta.lambda
                );
                return 0;
            }
            for c in &report.wrong_weight {
                println!(
                    "FAIL column {}: weight {} (expected {})",
                    c,
                    matrix.column(*c).weight(),
                    meta.w
                );
            }
            for c in &report.runlength_violations {
                println!("FAIL column {}: 1's closer than d={} apart", c, meta.d);
            }
            for pair in &report.overlap_violations {
                println!(
                    "FAIL columns {} and {}: overlap exceeds lambda={}",
                    pair.i, pair.j, meta.lambda
                );
            }
            EXIT_FAIL
        }
        VerifyMode::Full => {
            let k = k.unwrap_or(meta.k);
            match check_superimposed_bruteforce(&matrix, k, meta.d, budget) {
                Ok(SuperimposedVerdict::Pass) => {
                    println!("PASS full: matrix is a ({k},{},{})-superimposed code", meta.n, meta.d);
                    0
                }
                Ok(SuperimposedVerdict::RunlengthViolation { column }) => {
                    println!("FAIL column {column}: 1's closer than d={} apart", meta.d);
                    EXIT_FAIL
                }
                Ok(SuperimposedVerdict::MissingSeparator { column, others }) => {
                    println!(
                        "FAIL column {column}: no row separates it from columns {others:?}"
                    );
                    EXIT_FAIL
                }
                Err(err @ Error::BudgetExceeded { .. }) => {
                    eprintln!("cannot verify: {err}");
                    EXIT_BUDGET
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    EXIT_INVALID
                }
            }
        }
    }
}

fn cmd_bounds(n: usize, k: usize, d: usize, w: Option<usize>, json: bool) -> u8 {
    let table = match bounds_table(n, k, d, w) {
        Ok(table) => table,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_INVALID;
        }
    };
    if json {
        let body = serde_json::to_string_pretty(&BoundsJson::from(&table)).expect("serializes");
        println!("{body}");
        return 0;
    }
    println!("lambda                {}", table.lambda);
    println!("t_pairwise            {}", table.t_pairwise);
    println!("t_fixed_weight        {}", table.t_fixed_weight);
    println!("t_closed_form         ~{:.3}", table.t_closed_form);
    println!("t_union_bound         {}", table.t_union_bound);
    println!("t_union_bound_closed  ~{:.3}", table.t_union_bound_closed);
    println!("t_lower_trivial       {}", table.t_lower_trivial);
    println!("identity_optimal      {}", table.identity_optimal);
    0
}

fn cmd_sample_column(t: usize, w: usize, d: usize, seed: u64, count: u64) -> u8 {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for _ in 0..count {
        match sample_uniform_wd_vector(t, w, d, &mut rng) {
            Ok(column) => {
                if writeln!(lock, "{}", column.to_bit_string()).is_err() {
                    return EXIT_INVALID;
                }
            }
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_INVALID;
            }
        }
    }
    0
}
