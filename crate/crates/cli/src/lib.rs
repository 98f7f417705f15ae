//! Command-line front end: construction, evaluation, verification,
//! counting and plotting of optimal quantizers.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 I/O error.

mod plot;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use affine_quant::engine::{multistart_search, DEFAULT_MAX_DEPTH};
use affine_quant::io::{
    codebook_csv_rows, codebook_to_json, format_decimal, format_rational, interval_to_json, parse_codebooks,
    parse_rational, Annotations, CSV_HEADER,
};
use affine_quant::{
    count_variants, default_codebook, enumerate_variants, exact_distortion, lloyd_step, optimal_codebook,
    quantization_error, variant_at, Codebook, Rational,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// Variants checked one by one by `verify`; beyond this a fixed sample is used.
const VERIFY_ALL_UP_TO: u32 = 1000;
const VERIFY_SAMPLE: u32 = 100;
const MAX_PLOT_DEPTH: u32 = 10;

#[derive(Debug, Parser)]
#[command(name = "affine-quant", version, about = "Optimal quantizers of the affine product-Cantor measure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an optimal codebook (or all of them) with its quantization error.
    Optimal {
        n: u64,
        /// Index of the variant in the lexicographic enumeration.
        #[arg(long, conflicts_with = "all")]
        variant: Option<BigUint>,
        /// Emit every variant, one JSON document per line.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the quantization error V_n.
    Error { n: u64 },
    /// Certified distortion of codebooks read as JSON.
    Distortion {
        /// JSON file with one or more codebooks; `-` or absent reads stdin.
        #[arg(long)]
        codebook: Option<PathBuf>,
        /// Stop refining once the interval is this narrow (`p/q`, decimal or `1e-12`).
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        depth: u32,
    },
    /// Check Lloyd fixed points of the optimal variants and run a multistart search.
    Verify {
        n: u64,
        #[arg(long, default_value_t = 200)]
        seeds: usize,
        #[arg(long, default_value_t = 1)]
        rng_seed: u64,
        #[arg(long, default_value_t = 20)]
        depth: u32,
        /// How far below V_n a multistart result may fall before failing.
        #[arg(long, default_value = "1e-9")]
        tol: String,
    },
    /// Number of optimal variants for n.
    Count { n: u64 },
    /// SVG of the depth-d cells and the default optimal codebook.
    Plot {
        n: u64,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
    Io(String),
}

type Outcome = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn lib<T>(r: affine_quant::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::Io(e.to_string())
}

fn with_decimal(v: &Rational) -> String {
    format!("{} (approx {})", format_rational(v), format_decimal(v, 10))
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Command::Optimal { n, variant, all, format, out } => cmd_optimal(n, variant, all, format, out, stdout),
        Command::Error { n } => cmd_error(n, stdout),
        Command::Distortion { codebook, tol, depth } => cmd_distortion(codebook, &tol, depth, stdin, stdout),
        Command::Verify { n, seeds, rng_seed, depth, tol } => cmd_verify(n, seeds, rng_seed, depth, &tol, stdout),
        Command::Count { n } => cmd_count(n, stdout),
        Command::Plot { n, depth, out } => cmd_plot(n, depth, out, stdout),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Verify(m)) => {
            let _ = writeln!(stderr, "verification failed: {m}");
            EXIT_VERIFY
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(stderr, "i/o error: {m}");
            EXIT_IO
        }
    }
}

/// Writes to `--out` when given, else to stdout.
fn emit(out: Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn render_codebook(cb: &Codebook<Rational>, index: &BigUint, v: &Rational, format: Format) -> String {
    let notes = Annotations { variant: Some(index.to_string()), error: Some(v.clone()) };
    match format {
        Format::Json => format!("{}\n", codebook_to_json(cb, &notes)),
        Format::Csv => codebook_csv_rows(cb, &notes),
    }
}

fn cmd_optimal(
    n: u64,
    variant: Option<BigUint>,
    all: bool,
    format: Format,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Outcome {
    if n < 1 {
        return usage("n must be at least 1");
    }
    let v = lib(quantization_error::<Rational>(n))?;
    let count = if n == 1 { BigUint::from(1u32) } else { lib(count_variants(n))? };
    let mut text = String::new();
    if format == Format::Csv {
        text.push_str(CSV_HEADER);
        text.push('\n');
    }
    if all {
        if n == 1 {
            text.push_str(&render_codebook(&lib(default_codebook(1))?, &BigUint::zero(), &v, format));
        } else {
            for (i, spec) in lib(enumerate_variants(n))?.enumerate() {
                let cb = lib(optimal_codebook(&spec))?;
                text.push_str(&render_codebook(&cb, &BigUint::from(i), &v, format));
            }
        }
    } else {
        let index = variant.unwrap_or_default();
        if index >= count {
            return usage(format!("variant {index} out of range: n = {n} has {count} variant(s) (0..{count})"));
        }
        let cb = if n == 1 { lib(default_codebook(1))? } else { lib(optimal_codebook(&lib(variant_at(n, &index))?))? };
        text.push_str(&render_codebook(&cb, &index, &v, format));
    }
    emit(out, stdout, &text)
}

fn cmd_error(n: u64, stdout: &mut dyn Write) -> Outcome {
    if n < 1 {
        return usage("n must be at least 1");
    }
    let v = lib(quantization_error::<Rational>(n))?;
    writeln!(stdout, "V_{n} = {}", with_decimal(&v)).map_err(io_err)
}

fn cmd_count(n: u64, stdout: &mut dyn Write) -> Outcome {
    if n < 2 {
        return usage("count needs n >= 2");
    }
    writeln!(stdout, "{}", lib(count_variants(n))?).map_err(io_err)
}

fn positive_rational(s: &str, what: &str) -> Result<Rational, Failure> {
    let t = lib(parse_rational(s))?;
    if t <= Rational::zero() {
        return usage(format!("{what} must be positive"));
    }
    Ok(t)
}

fn cmd_distortion(
    path: Option<PathBuf>,
    tol: &str,
    depth: u32,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Outcome {
    let tol = positive_rational(tol, "--tol")?;
    if depth < 1 {
        return usage("--depth must be at least 1");
    }
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(&p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(io_err)?;
            s
        }
    };
    for cb in lib(parse_codebooks(&text))? {
        let interval = lib(exact_distortion(&cb, &tol, depth))?;
        writeln!(stdout, "{}", interval_to_json(&interval)).map_err(io_err)?;
    }
    Ok(())
}

fn num_iter(count: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut i = BigUint::zero();
    while &i < count {
        out.push(i.clone());
        i += 1u32;
    }
    out
}

/// Variant indices checked by `verify`.
fn verify_indices(count: &BigUint) -> Vec<BigUint> {
    if count <= &BigUint::from(VERIFY_ALL_UP_TO) {
        return num_iter(count);
    }
    let last = count - 1u32;
    (0..VERIFY_SAMPLE).map(|k| &last * k / (VERIFY_SAMPLE - 1)).collect()
}

fn cmd_verify(n: u64, seeds: usize, rng_seed: u64, depth: u32, tol: &str, stdout: &mut dyn Write) -> Outcome {
    if n < 1 {
        return usage("n must be at least 1");
    }
    if seeds < 1 || depth < 1 {
        return usage("--seeds and --depth must be at least 1");
    }
    let tol = positive_rational(tol, "--tol")?;
    let v = lib(quantization_error::<Rational>(n))?;
    let mut lines = vec![format!("V_{n} = {}", with_decimal(&v))];
    let mut failures = Vec::new();

    let variants: Vec<(BigUint, Codebook<Rational>)> = if n == 1 {
        vec![(BigUint::zero(), lib(default_codebook(1))?)]
    } else {
        let count = lib(count_variants(n))?;
        let indices = verify_indices(&count);
        if count > BigUint::from(VERIFY_ALL_UP_TO) {
            lines.push(format!("variants: {count}, checking a sample of {}", indices.len()));
        } else {
            lines.push(format!("variants: {count}"));
        }
        indices
            .into_iter()
            .map(|i| Ok((i.clone(), lib(optimal_codebook(&lib(variant_at(n, &i))?))?)))
            .collect::<Result<_, Failure>>()?
    };
    for (index, cb) in &variants {
        let status = match lloyd_step(cb, depth) {
            Ok(next) if &next == cb => "PASS".to_string(),
            Ok(_) => "FAIL (moved)".to_string(),
            Err(e) => format!("FAIL ({e})"),
        };
        if status != "PASS" {
            failures.push(format!("variant {index} is not a Lloyd fixed point"));
        }
        lines.push(format!("variant {index}: fixed point {status}"));
    }

    let report = lib(multistart_search(n as usize, seeds, rng_seed, depth))?;
    match &report.best {
        Some(best) => {
            lines.push(format!(
                "multistart: best upper bound {} from {} run(s), {} aborted",
                with_decimal(&best.interval.upper),
                report.runs.len(),
                report.failed
            ));
            if best.interval.upper < v.clone() - tol.clone() {
                failures.push(format!("multistart found {} below V_{n}", format_rational(&best.interval.upper)));
            }
        }
        None => lines.push(format!("multistart: no run converged ({} aborted)", report.failed)),
    }
    lines.push(format!("result: {}", if failures.is_empty() { "PASS" } else { "FAIL" }));
    for l in &lines {
        writeln!(stdout, "{l}").map_err(io_err)?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(failures.join("; ")))
    }
}

fn cmd_plot(n: u64, depth: u32, out: Option<PathBuf>, stdout: &mut dyn Write) -> Outcome {
    if n < 1 {
        return usage("n must be at least 1");
    }
    if !(1..=MAX_PLOT_DEPTH).contains(&depth) {
        return usage(format!("--depth must be between 1 and {MAX_PLOT_DEPTH}"));
    }
    let cb = lib(default_codebook::<Rational>(n))?;
    let title = format!("Optimal {n}-means over the depth-{depth} cells");
    emit(out, stdout, &plot::render(&cb, depth, &title))
}
