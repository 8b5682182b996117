//! Experiment front door: every table the library can produce, emitted as
//! CSV or newline-delimited JSON with deterministic bytes, plus the
//! deterministic self-check suites behind `verify`.

mod emit;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use emit::{exact_columns, Field, Format, Sink, Table};
use walshkit::dyadic::{DyadicRational, Grid1D, Grid2D};
use walshkit::hardy::{h1_norm_1d, h1_norm_2d};
use walshkit::kernels::{dirichlet_recursive, lebesgue_sweep, minimal_resolution};
use walshkit::strong::{
    counterexample, difference_kernel, divergence_sweep, fine_ratios, FineVariant, LogBase,
    NormPath, WeightFunction,
};
use walshkit::verify::Suite;
use walshkit::walsh::{analyze, analyze2d, walsh_function, Spectrum2D};

#[derive(Parser)]
#[command(
    name = "walshkit",
    version,
    about = "Exact Walsh-Fourier experiments on the dyadic group"
)]
struct Cli {
    /// Table format (hardy always reports JSON)
    #[arg(long, global = true, value_enum, default_value_t = Out::Csv)]
    out: Out,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads; overrides the WALSHKIT_THREADS environment variable
    /// (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Variation,
    Lebesgue,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiArg {
    One,
    Log,
    Loglog,
    Power,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogBaseArg {
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    /// One verification record (coefficient pattern and exact norms)
    Record,
    /// The full 2D grid, row-major by first coordinate
    Grid,
    /// The full 2D coefficient table, row-major by first frequency
    Spectrum,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// The product counterexample at block index n (2D)
    Counterexample,
    /// w_n tensored with itself (2D)
    WalshPair,
    /// D_{2^(n+1)} - D_{2^n} at resolution n+1 (1D)
    DirichletDiff,
    /// The Dirichlet kernel D_n (1D)
    Dirichlet,
    /// The constant function 1 (1D)
    Constant,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Bitops,
    Dyadic,
    Walsh,
    Kernels,
    Hardy,
    Strong,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lebesgue-constant table with exact variation-bound checks
    Lebesgue {
        /// Largest kernel order in the table
        #[arg(long, default_value_t = 4096)]
        max: u64,
        /// Refuse requests above this order
        #[arg(long, default_value_t = 4096)]
        cap: u64,
    },

    /// Prefix-sum ratio checkpoints for the variation or the Lebesgue
    /// constants
    Fine {
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Refuse requests above this endpoint (default: 2^20 for the
        /// variation variant, 2^16 for the lebesgue variant)
        #[arg(long)]
        cap: Option<u64>,
    },

    /// Materialize the product counterexample and verify it, or dump it
    Counterexample {
        /// Block index n; the grid lives at resolution n+1
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = EmitArg::Record)]
        emit: EmitArg,
        /// Refuse 2D resolutions above this cap
        #[arg(long, default_value_t = 12)]
        cap_2d: u32,
    },

    /// Weighted block sums of the quadratic partial-sum norms
    Divergence {
        #[arg(long, default_value_t = 0)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = PhiArg::One)]
        phi: PhiArg,
        /// Exponent for --phi power
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, value_enum, default_value_t = LogBaseArg::E)]
        log_base: LogBaseArg,
        /// Force the full 2D evaluation route (small n only)
        #[arg(long)]
        oracle: bool,
        /// Refuse block ranges beyond this n_max
        #[arg(long, default_value_t = 14)]
        cap: u32,
        /// Refuse 2D resolutions above this cap (oracle route)
        #[arg(long, default_value_t = 12)]
        cap_2d: u32,
    },

    /// Exact L1/H1 report for a built-in function family (JSON)
    Hardy {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Family parameter (block index or kernel order)
        #[arg(long, default_value_t = 0)]
        n: u64,
        /// Grid resolution (default: the smallest sufficient one)
        #[arg(long)]
        resolution: Option<u32>,
        #[arg(long, default_value_t = 24)]
        cap_1d: u32,
        #[arg(long, default_value_t = 12)]
        cap_2d: u32,
    },

    /// Dump a Dirichlet kernel grid, or its spectrum, as a table
    KernelDump {
        /// Kernel order
        #[arg(long)]
        n: u64,
        /// Grid resolution (default: the smallest sufficient one)
        #[arg(long)]
        resolution: Option<u32>,
        /// Dump Walsh-Fourier coefficients instead of cell values
        #[arg(long)]
        spectrum: bool,
        #[arg(long, default_value_t = 24)]
        cap_1d: u32,
    },

    /// Run the deterministic self-check suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

enum CliError {
    Validation(String),
    Cap(String),
    Io(std::io::Error),
}

impl From<walshkit::Error> for CliError {
    fn from(err: walshkit::Error) -> Self {
        match err {
            walshkit::Error::CounterexampleCapExceeded { .. } => CliError::Cap(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

type CliResult = Result<ExitCode, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads(explicit: Option<usize>) -> Result<(), CliError> {
    let requested = match explicit {
        Some(t) => Some(t),
        None => match std::env::var("WALSHKIT_THREADS") {
            Ok(raw) => Some(raw.parse::<usize>().map_err(|_| {
                CliError::Validation(format!("WALSHKIT_THREADS is not a thread count: {raw:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(threads) = requested {
        if threads == 0 {
            return Err(CliError::Validation(
                "thread count must be positive".to_string(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|err| CliError::Validation(format!("thread pool: {err}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    configure_threads(cli.threads)?;
    let mut sink = match &cli.output {
        Some(path) => Sink::file(path)?,
        None => Sink::stdout(),
    };
    let format = match cli.out {
        Out::Csv => Format::Csv,
        Out::Json => Format::Json,
    };
    let code = match cli.command {
        Cmd::Lebesgue { max, cap } => cmd_lebesgue(&mut sink, format, max, cap)?,
        Cmd::Fine {
            max_n,
            variant,
            cap,
        } => cmd_fine(&mut sink, format, max_n, variant, cap)?,
        Cmd::Counterexample { n, emit, cap_2d } => {
            cmd_counterexample(&mut sink, format, n, emit, cap_2d)?
        }
        Cmd::Divergence {
            n_min,
            n_max,
            phi,
            alpha,
            log_base,
            oracle,
            cap,
            cap_2d,
        } => cmd_divergence(
            &mut sink, format, n_min, n_max, phi, alpha, log_base, oracle, cap, cap_2d,
        )?,
        Cmd::Hardy {
            family,
            n,
            resolution,
            cap_1d,
            cap_2d,
        } => cmd_hardy(&mut sink, family, n, resolution, cap_1d, cap_2d)?,
        Cmd::KernelDump {
            n,
            resolution,
            spectrum,
            cap_1d,
        } => cmd_kernel_dump(&mut sink, format, n, resolution, spectrum, cap_1d)?,
        Cmd::Verify { suite } => cmd_verify(&mut sink, suite)?,
    };
    sink.flush()?;
    Ok(code)
}

fn cmd_lebesgue(sink: &mut Sink, format: Format, max: u64, cap: u64) -> CliResult {
    if max < 1 {
        return Err(CliError::Validation("--max must be at least 1".to_string()));
    }
    if max > cap {
        return Err(CliError::Cap(format!(
            "lebesgue sweep to {max} exceeds the cap {cap}; raise --cap explicitly"
        )));
    }
    let sweep = lebesgue_sweep(max);
    let mut table = Table::new(
        sink,
        format,
        &[
            "n",
            "V",
            "norm_num",
            "norm_exp",
            "norm_float",
            "lower_ok",
            "upper_ok",
        ],
    );
    for record in &sweep.records {
        let [num, exp, float] = exact_columns(&record.constant);
        table.row(&[
            Field::Uint(record.n),
            Field::Uint(record.variation),
            num,
            exp,
            float,
            Field::Bool(record.lower_ok),
            Field::Bool(record.upper_ok),
        ])?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fine(
    sink: &mut Sink,
    format: Format,
    max_n: u64,
    variant: VariantArg,
    cap: Option<u64>,
) -> CliResult {
    if max_n < 2 {
        return Err(CliError::Validation(
            "--max-n must be at least 2".to_string(),
        ));
    }
    let (variant, default_cap) = match variant {
        VariantArg::Variation => (FineVariant::Variation, 1u64 << 20),
        VariantArg::Lebesgue => (FineVariant::Lebesgue, 1u64 << 16),
    };
    let cap = cap.unwrap_or(default_cap);
    if max_n > cap {
        return Err(CliError::Cap(format!(
            "{} ratio sweep to {max_n} exceeds the cap {cap}; raise --cap explicitly",
            variant.name()
        )));
    }
    let mut table = Table::new(sink, format, &["n", "ratio"]);
    for (n, ratio) in fine_ratios(max_n, variant) {
        table.row(&[Field::Uint(n), Field::Float(ratio)])?;
    }
    Ok(ExitCode::SUCCESS)
}

/// The 0/1 coefficient table the counterexample must produce: ones exactly
/// on the square block {2^n..2^(n+1)-1}^2.
fn expected_counterexample_spectrum(n: u32) -> Spectrum2D {
    let side = 1usize << (n + 1);
    let low = 1usize << n;
    let mut coeffs = vec![0i64; side * side];
    for i in low..side {
        for j in low..side {
            coeffs[i * side + j] = 1;
        }
    }
    Spectrum2D::from_integer_coeffs(n + 1, coeffs)
}

fn cmd_counterexample(
    sink: &mut Sink,
    format: Format,
    n: u32,
    emit_what: EmitArg,
    cap_2d: u32,
) -> CliResult {
    if n >= cap_2d {
        return Err(CliError::Cap(format!(
            "counterexample {n} needs 2D resolution {}, above the cap {cap_2d}; raise --cap-2d explicitly",
            u64::from(n) + 1
        )));
    }
    let grid = counterexample(n)?;
    match emit_what {
        EmitArg::Record => {
            let spectrum = analyze2d(&grid);
            let coefficients_ok = spectrum == expected_counterexample_spectrum(n);
            let report = h1_norm_2d(&grid);
            let ok = coefficients_ok
                && report.l1 == DyadicRational::one()
                && report.h1 == DyadicRational::one();
            let mut table = Table::new(
                sink,
                format,
                &["n", "l1", "l1_float", "h1", "h1_float", "coefficients_ok"],
            );
            table.row(&[
                Field::Uint(u64::from(n)),
                Field::Exact(report.l1.clone()),
                Field::Float(report.l1.to_f64()),
                Field::Exact(report.h1.clone()),
                Field::Float(report.h1.to_f64()),
                Field::Bool(coefficients_ok),
            ])?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        EmitArg::Grid => {
            dump_values(sink, format, "cell_index", grid.values())?;
            Ok(ExitCode::SUCCESS)
        }
        EmitArg::Spectrum => {
            let spectrum = analyze2d(&grid);
            dump_values(sink, format, "coeff_index", spectrum.values())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn dump_values(
    sink: &mut Sink,
    format: Format,
    index_name: &'static str,
    values: impl Iterator<Item = DyadicRational>,
) -> Result<(), CliError> {
    let columns: &'static [&'static str] = match index_name {
        "coeff_index" => &[
            "coeff_index",
            "value_numerator",
            "value_exponent",
            "value_float",
        ],
        _ => &[
            "cell_index",
            "value_numerator",
            "value_exponent",
            "value_float",
        ],
    };
    let mut table = Table::new(sink, format, columns);
    for (index, value) in values.enumerate() {
        let [num, exp, float] = exact_columns(&value);
        table.row(&[Field::Uint(index as u64), num, exp, float])?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_divergence(
    sink: &mut Sink,
    format: Format,
    n_min: u32,
    n_max: u32,
    phi: PhiArg,
    alpha: Option<f64>,
    log_base: LogBaseArg,
    oracle: bool,
    cap: u32,
    cap_2d: u32,
) -> CliResult {
    let phi = match (phi, alpha) {
        (PhiArg::One, None) => WeightFunction::One,
        (PhiArg::Log, None) => WeightFunction::Log,
        (PhiArg::Loglog, None) => WeightFunction::LogLog,
        (PhiArg::Power, Some(alpha)) => WeightFunction::power(alpha)?,
        (PhiArg::Power, None) => {
            return Err(CliError::Validation(
                "--phi power needs --alpha".to_string(),
            ))
        }
        (_, Some(_)) => {
            return Err(CliError::Validation(
                "--alpha is only meaningful with --phi power".to_string(),
            ))
        }
    };
    if n_max > cap {
        return Err(CliError::Cap(format!(
            "divergence sweep to block {n_max} exceeds the cap {cap}; raise --cap explicitly"
        )));
    }
    let path = if oracle {
        if n_max >= cap_2d {
            return Err(CliError::Cap(format!(
                "oracle route at block {n_max} needs 2D resolution {}, above the cap {cap_2d}; raise --cap-2d explicitly",
                u64::from(n_max) + 1
            )));
        }
        NormPath::Oracle2D
    } else {
        NormPath::Shortcut1D
    };
    let base = match log_base {
        LogBaseArg::E => LogBase::Natural,
        LogBaseArg::Two => LogBase::Two,
    };
    let records = divergence_sweep(n_min, n_max, &phi, base, path)?;
    let mut table = Table::new(
        sink,
        format,
        &["n", "block_sum", "phi_at_block", "ratio", "path"],
    );
    for record in &records {
        table.row(&[
            Field::Uint(u64::from(record.n)),
            Field::Float(record.block_sum),
            Field::Float(record.phi_at_block),
            Field::Float(record.ratio),
            Field::Text(record.path.name()),
        ])?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hardy(
    sink: &mut Sink,
    family: FamilyArg,
    n: u64,
    resolution: Option<u32>,
    cap_1d: u32,
    cap_2d: u32,
) -> CliResult {
    enum Built {
        One(Grid1D),
        Two(Grid2D),
    }

    let check_resolution = |needed: u32, cap: u32, kind: &str| -> Result<u32, CliError> {
        let resolution = resolution.unwrap_or(needed);
        if resolution < needed {
            return Err(CliError::Validation(format!(
                "resolution {resolution} cannot represent this function (needs >= {needed})"
            )));
        }
        if resolution > cap {
            return Err(CliError::Cap(format!(
                "{kind} resolution {resolution} exceeds the cap {cap}"
            )));
        }
        Ok(resolution)
    };

    let (name, built) = match family {
        FamilyArg::Counterexample => {
            let block = u32::try_from(n)
                .ok()
                .filter(|b| *b < 30)
                .ok_or_else(|| CliError::Validation("block index out of range".to_string()))?;
            let needed = block + 1;
            let resolution = check_resolution(needed, cap_2d, "2D")?;
            let grid = counterexample(block)?.refine(resolution)?;
            ("counterexample", Built::Two(grid))
        }
        FamilyArg::WalshPair => {
            let needed = if n == 0 { 0 } else { 64 - n.leading_zeros() };
            let resolution = check_resolution(needed, cap_2d, "2D")?;
            let w = walsh_function(n, resolution)?;
            ("walsh-pair", Built::Two(Grid2D::tensor(&w, &w)?))
        }
        FamilyArg::DirichletDiff => {
            let block = u32::try_from(n)
                .ok()
                .filter(|b| *b < 30)
                .ok_or_else(|| CliError::Validation("block index out of range".to_string()))?;
            let needed = block + 1;
            let resolution = check_resolution(needed, cap_1d, "1D")?;
            (
                "dirichlet-diff",
                Built::One(difference_kernel(block).refine(resolution)?),
            )
        }
        FamilyArg::Dirichlet => {
            if n == 0 {
                return Err(CliError::Validation(
                    "dirichlet family needs n >= 1".to_string(),
                ));
            }
            let resolution = check_resolution(minimal_resolution(n), cap_1d, "1D")?;
            ("dirichlet", Built::One(dirichlet_recursive(n, resolution)?))
        }
        FamilyArg::Constant => {
            let resolution = check_resolution(0, cap_1d, "1D")?;
            ("constant", Built::One(Grid1D::constant(resolution, 1)))
        }
    };

    let (resolution, l1, h1) = match built {
        Built::One(grid) => {
            let report = h1_norm_1d(&grid);
            (grid.resolution(), report.l1, report.h1)
        }
        Built::Two(grid) => {
            let report = h1_norm_2d(&grid);
            (grid.resolution(), report.l1, report.h1)
        }
    };
    writeln!(
        sink,
        "{{\"family\":\"{name}\",\"n\":{n},\"resolution\":{resolution},\"l1\":\"{l1}\",\"l1_float\":{},\"h1\":\"{h1}\",\"h1_float\":{}}}",
        l1.to_f64(),
        h1.to_f64()
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_kernel_dump(
    sink: &mut Sink,
    format: Format,
    n: u64,
    resolution: Option<u32>,
    spectrum: bool,
    cap_1d: u32,
) -> CliResult {
    let resolution = resolution.unwrap_or_else(|| minimal_resolution(n.max(1)));
    if resolution > cap_1d {
        return Err(CliError::Cap(format!(
            "1D resolution {resolution} exceeds the cap {cap_1d}; raise --cap-1d explicitly"
        )));
    }
    let grid = dirichlet_recursive(n, resolution)?;
    if spectrum {
        dump_values(sink, format, "coeff_index", analyze(&grid).values())?;
    } else {
        dump_values(sink, format, "cell_index", grid.values())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(sink: &mut Sink, suite: SuiteArg) -> CliResult {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Bitops => vec![Suite::Bitops],
        SuiteArg::Dyadic => vec![Suite::Dyadic],
        SuiteArg::Walsh => vec![Suite::Walsh],
        SuiteArg::Kernels => vec![Suite::Kernels],
        SuiteArg::Hardy => vec![Suite::Hardy],
        SuiteArg::Strong => vec![Suite::Strong],
    };
    let mut total = 0usize;
    let mut failures = 0usize;
    for suite in suites {
        for check in suite.run() {
            total += 1;
            let tag = if check.passed {
                "PASS"
            } else {
                failures += 1;
                "FAIL"
            };
            writeln!(sink, "[{tag}] {}: {}", check.name, check.detail)?;
        }
    }
    writeln!(sink, "verify: {total} checks, {failures} failures")?;
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
