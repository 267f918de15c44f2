//! Command-line frontend: corrected pi estimates, reference-table
//! verification, symbolic inaccuracy measures and their parameterized
//! families, series evaluation with CSV export, error bounds, and the
//! Euclidean-peeling reconstruction.
//!
//! Exit codes: 0 = success (including `--help`/`--version`), 1 = usage
//! error, 2 = a verification subcommand found mismatches.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use madhava::correction::convergent;
use madhava::exactnum::{pow10, rat_to_fixed, Rounding};
use madhava::hayashi::reconstruct;
use madhava::series::{
    error_table, evaluate, exact_partial, fig1_data, partial_sum, putumana_identity,
    reference_pi, EvalResult, SeriesId, SeriesSpec,
};
use madhava::sthaulya::{
    error_bounds, sthaulya_nested_family, sthaulya_nested_offset, sthaulya_offset_family,
    sthaulya_of, verify_properties,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Parser)]
#[command(
    name = "madhava",
    version,
    about = "Exact-arithmetic pi series, end corrections, and their structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated odd-reciprocal pi estimate with an optional end correction
    Pi {
        /// Number of series terms
        #[arg(long)]
        terms: u64,
        /// End-correction order: "none" or 1..5
        #[arg(long, default_value = "none")]
        correction: String,
        /// Fractional digits to print
        #[arg(long, default_value_t = 15)]
        digits: u32,
    },
    /// Recompute a published reference table and verify it cell by cell
    Table {
        /// 1 = 16-digit corrected estimates, 2 = error magnitudes
        #[arg(long)]
        which: u32,
    },
    /// Inaccuracy measure of a convergent or of a parameterized candidate
    Sthaulya {
        /// Convergent order (mutually exclusive with --family)
        #[arg(long)]
        k: Option<u32>,
        /// Evaluate at this odd divisor p >= 3 instead of printing symbolically
        #[arg(long)]
        at: Option<i64>,
        /// Candidate family: offset, nested2, nested3, or nested-offset
        #[arg(long)]
        family: Option<String>,
        /// Family parameter, NUM/DEN or integer
        #[arg(long)]
        param: Option<String>,
    },
    /// Continued-fraction convergent of the correction term
    Convergent {
        /// Convergent order
        #[arg(long)]
        k: u32,
    },
    /// Structural property report for the inaccuracy denominators
    Props {
        /// Check orders 1..=K
        #[arg(long)]
        max_k: u32,
    },
    /// Evaluate one series to fixed precision
    Series {
        /// leibniz, leibniz_corrected(K), eq38..eq41, eq42a, eq42b, putumana, sqrt12
        #[arg(long)]
        id: String,
        /// Number of series terms
        #[arg(long)]
        terms: u64,
        /// Fractional digits to print
        #[arg(long, default_value_t = 15)]
        digits: u32,
        /// Also write per-term-count rows n,estimate,abs_error
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Log-error progression of the four pi series, written as CSV
    Fig1 {
        /// Largest term count (rows run 2, 2+step, ...)
        #[arg(long)]
        nmax: u64,
        /// Term-count stride
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Output file
        #[arg(long)]
        csv: PathBuf,
    },
    /// Euclidean-peeling reconstruction under an assumed value of pi
    Hayashi {
        /// Assumed pi as NUM/DEN, e.g. 355/113
        #[arg(long)]
        pi: String,
        /// Term counts 1..=N to peel
        #[arg(long, default_value_t = 5)]
        nmax: u64,
        /// Peeling depth
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Two-sided bounds on the corrected partial-sum error
    Bounds {
        /// Correction order
        #[arg(long)]
        k: u32,
        /// Term count
        #[arg(long)]
        n: u64,
    },
    /// Check the paired-term identity behind the cubic-rate series
    PutumanaVerify,
}

/// Restore the default SIGPIPE disposition so that piping output into a
/// pager or `head` terminates the process quietly instead of panicking on
/// a failed write. Rust's startup code sets the signal to ignored.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::Pi { terms, correction, digits } => cmd_pi(terms, &correction, digits),
        Command::Table { which } => cmd_table(which),
        Command::Sthaulya { k, at, family, param } => cmd_sthaulya(k, at, family, param),
        Command::Convergent { k } => cmd_convergent(k),
        Command::Props { max_k } => cmd_props(max_k),
        Command::Series { id, terms, digits, csv } => cmd_series(&id, terms, digits, csv),
        Command::Fig1 { nmax, step, csv } => cmd_fig1(nmax, step, &csv),
        Command::Hayashi { pi, nmax, depth } => cmd_hayashi(&pi, nmax, depth),
        Command::Bounds { k, n } => cmd_bounds(k, n),
        Command::PutumanaVerify => cmd_putumana_verify(),
    }
}

fn err_str(e: madhava::Error) -> String {
    e.to_string()
}

/// `NUM/DEN` or a plain integer, exactly.
fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("invalid numerator in {s:?}"))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("invalid denominator in {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// `|printed value - exact sum|` for an evaluation: the counted per-term
/// rounding bound scaled to pi units, plus half an output ulp.
fn printed_error_bound(result: &EvalResult) -> BigRational {
    let accumulated = result.rounding_bound.to_rational()
        * BigRational::from_integer(BigInt::from(result.multiplier));
    accumulated + BigRational::new(BigInt::one(), BigInt::from(2) * pow10(result.spec.scale))
}

/// Two-significant-digit scientific rendering that rounds the mantissa up,
/// so the printed bound never understates the actual one.
fn format_bound(q: &BigRational) -> String {
    assert!(q.is_positive());
    let one = BigRational::one();
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut exp: i64 = 0;
    let mut m = q.clone();
    while m < one {
        m *= ten.clone();
        exp -= 1;
    }
    while m >= ten {
        m /= ten.clone();
        exp += 1;
    }
    let scaled = if exp <= 1 {
        q * BigRational::from_integer(pow10((1 - exp) as u32))
    } else {
        q / BigRational::from_integer(pow10((exp - 1) as u32))
    };
    let m2 = scaled.ceil().to_integer();
    if m2 == BigInt::from(100) {
        return format!("1.0e{}", exp + 1);
    }
    let digits = m2.to_string();
    format!("{}.{}e{exp}", &digits[..1], &digits[1..])
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), String> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| format!("{} has no file name", path.display()))?;
    let tmp = parent.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    std::fs::write(&tmp, contents).map_err(|e| format!("writing {}: {e}", tmp.display()))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        format!("renaming into {}: {e}", path.display())
    })?;
    Ok(())
}

fn cmd_pi(terms: u64, correction: &str, digits: u32) -> Result<i32, String> {
    if digits == 0 {
        return Err("digits must be at least 1".into());
    }
    let id = match correction {
        "none" => SeriesId::Leibniz,
        k => {
            let order: u32 = k
                .parse()
                .map_err(|_| format!("correction must be \"none\" or an order 1..5, got {k:?}"))?;
            SeriesId::LeibnizCorrected(order)
        }
    };
    let spec = SeriesSpec::new(id, terms, digits).map_err(err_str)?;
    let result = partial_sum(&spec).map_err(err_str)?;
    println!("{}", result.value);
    println!("rounding bound {}", format_bound(&printed_error_bound(&result)));
    Ok(0)
}

/// The published 16-digit estimates (order-3 correction applied).
const TABLE1_PUBLISHED: [(u64, &str); 8] = [
    (5, "3.141587301587302"),
    (6, "3.141594274480180"),
    (10, "3.141592705349155"),
    (11, "3.141592626657870"),
    (20, "3.141592654019864"),
    (21, "3.141592653283544"),
    (30, "3.141592653615266"),
    (31, "3.141592653569532"),
];

/// The published error table; columns E, E1, E2, E3. Plain-decimal cells
/// carry 7 fractional digits, scientific cells 8 significant digits.
const TABLE2_PUBLISHED: [(u64, [&str; 4]); 8] = [
    (10, ["0.0997530", "-2.4696534e-4", "2.4112190e-6", "-5.1759362e-8"]),
    (11, ["-0.0907231", "1.8593504e-4", "-1.5063313e-6", "2.6931923e-8"]),
    (100, ["0.0099998", "-2.4996876e-7", "2.4990676e-11", "-5.7731597e-15"]),
    (101, ["-0.0099007", "2.4261781e-7", "-2.3777869e-11", "5.3290705e-15"]),
    (1000, ["9.9999975e-4", "-2.5000002e-10", "0.0", "0.0"]),
    (1001, ["-9.9900075e-4", "2.4925084e-10", "-4.4408921e-16", "0.0"]),
    (10000, ["9.9999999e-5", "-2.5002223e-13", "0.0", "0.0"]),
    (10001, ["-9.9990001e-5", "2.5002223e-13", "0.0", "0.0"]),
];

fn cmd_table(which: u32) -> Result<i32, String> {
    match which {
        1 => cmd_table_1(),
        2 => cmd_table_2(),
        other => Err(format!("no table {other}; pass --which 1 or --which 2")),
    }
}

fn cmd_table_1() -> Result<i32, String> {
    let four = BigRational::from_integer(BigInt::from(4));
    let reference: Vec<char> = reference_pi(15).to_string().chars().collect();
    let mut mismatches = Vec::new();
    println!("  n  estimate (order-3 correction, correct digits marked)");
    for (n, published) in TABLE1_PUBLISHED {
        let quarter = exact_partial(SeriesId::LeibnizCorrected(3), n).map_err(err_str)?;
        let value = rat_to_fixed(&(quarter * &four), 15, Rounding::HalfEven).to_string();
        let correct = value
            .chars()
            .zip(reference.iter())
            .take_while(|(a, b)| a == *b)
            .count();
        println!("{n:>3}  {value}");
        println!("     {}", "^".repeat(correct));
        if value != published {
            mismatches.push(format!("n={n}: computed {value}, published {published}"));
        }
    }
    if mismatches.is_empty() {
        println!("all 8 rows match the published table");
        Ok(0)
    } else {
        println!("{} of 8 rows differ from the published table:", mismatches.len());
        for m in &mismatches {
            println!("  {m}");
        }
        Ok(2)
    }
}

/// Compares one computed cell against its published rendering: `0.0` cells
/// must be below 5e-16 in exact magnitude, plain-decimal cells match at
/// their fractional width, scientific cells at 8 significant digits.
fn table2_mismatch(
    entry: &madhava::exactnum::FixedDecimal,
    published: &str,
) -> Option<String> {
    if published == "0.0" {
        let slack = BigRational::new(BigInt::one(), pow10(39));
        let cap = BigRational::new(BigInt::from(5), pow10(16));
        if entry.to_rational().abs() + slack >= cap {
            return Some("published 0.0 but |exact| >= 5e-16".into());
        }
        return None;
    }
    if published.contains('e') {
        let got = entry.to_scientific(8);
        if got.trim_start_matches('+') != published {
            return Some(format!("computed {got}, published {published}"));
        }
        return None;
    }
    let frac_digits = (published.len() - published.find('.').unwrap_or(0) - 1) as u32;
    let got = entry.rescale(frac_digits, Rounding::HalfEven).to_string();
    if got != published {
        return Some(format!("computed {got}, published {published}"));
    }
    None
}

fn cmd_table_2() -> Result<i32, String> {
    let ns: Vec<u64> = TABLE2_PUBLISHED.iter().map(|(n, _)| *n).collect();
    let rows = error_table(&ns, 34).map_err(err_str)?;
    let mut mismatches = Vec::new();
    println!("{:>6}  {:<16}{:<16}{:<16}E3", "n", "E", "E1", "E2");
    for (row, (n, published)) in rows.iter().zip(TABLE2_PUBLISHED.iter()) {
        let cells = [&row.e, &row.e1, &row.e2, &row.e3];
        println!(
            "{:>6}  {:<16}{:<16}{:<16}{}",
            row.n,
            cells[0].to_scientific(8),
            cells[1].to_scientific(8),
            cells[2].to_scientific(8),
            cells[3].to_scientific(8),
        );
        for (c, cell) in cells.iter().enumerate() {
            if let Some(why) = table2_mismatch(cell, published[c]) {
                mismatches.push(format!("{}({n}): {why}", ["E", "E1", "E2", "E3"][c]));
            }
        }
    }
    if mismatches.is_empty() {
        println!("all 32 cells conform to the published table");
        Ok(0)
    } else {
        println!("{} cells differ from the published table:", mismatches.len());
        for m in &mismatches {
            println!("  {m}");
        }
        Ok(2)
    }
}

fn cmd_sthaulya(
    k: Option<u32>,
    at: Option<i64>,
    family: Option<String>,
    param: Option<String>,
) -> Result<i32, String> {
    match (k, family) {
        (Some(k), None) => {
            if param.is_some() {
                return Err("--param only applies to --family".into());
            }
            let sthaulya = sthaulya_of(k).map_err(err_str)?;
            match at {
                None => println!("{}", sthaulya.expr.render('p')),
                Some(p) => {
                    if p < 3 || p % 2 == 0 {
                        return Err(format!("p must be an odd integer >= 3, got {p}"));
                    }
                    let x = BigRational::from_integer(BigInt::from(p));
                    println!("{}", sthaulya.expr.eval(&x).map_err(err_str)?);
                }
            }
            Ok(0)
        }
        (None, Some(family)) => {
            if at.is_some() {
                return Err("--at only applies to --k".into());
            }
            let q = parse_rational(
                param
                    .as_deref()
                    .ok_or("--family needs --param")?,
            )?;
            let expr = match family.as_str() {
                "offset" => sthaulya_offset_family(&q),
                "nested2" => sthaulya_nested_family(2, &q).map_err(err_str)?,
                "nested3" => sthaulya_nested_family(3, &q).map_err(err_str)?,
                "nested-offset" => sthaulya_nested_offset(&q),
                other => {
                    return Err(format!(
                        "unknown family {other:?}; expected offset, nested2, nested3, or nested-offset"
                    ))
                }
            };
            println!("{}", expr.render('p'));
            Ok(0)
        }
        _ => Err("pass exactly one of --k or --family".into()),
    }
}

fn cmd_convergent(k: u32) -> Result<i32, String> {
    let term = convergent(k).map_err(err_str)?;
    println!("f(p) = {}", term.p_form.render('p'));
    println!("F(n) = {}", term.n_form.render('n'));
    Ok(0)
}

fn cmd_props(max_k: u32) -> Result<i32, String> {
    if max_k == 0 {
        return Err("--max-k must be at least 1".into());
    }
    let mut failed = 0u32;
    for k in 1..=max_k {
        let report = verify_properties(k).map_err(err_str)?;
        if !report.all_pass() {
            failed += 1;
        }
        println!("{report}");
    }
    if failed == 0 {
        println!("all {max_k} property reports pass");
        Ok(0)
    } else {
        println!("{failed} of {max_k} property reports FAILED");
        Ok(2)
    }
}

fn cmd_series(id: &str, terms: u64, digits: u32, csv: Option<PathBuf>) -> Result<i32, String> {
    if digits == 0 {
        return Err("digits must be at least 1".into());
    }
    let id: SeriesId = id.parse().map_err(err_str)?;
    let spec = SeriesSpec::new(id, terms, digits).map_err(err_str)?;
    let result = evaluate(&spec).map_err(err_str)?;
    println!("{}", result.value);
    if let Some(err) = &result.error_vs_reference {
        println!("error vs reference {}", err.to_scientific(8));
    }
    if let Some(path) = csv {
        let mut contents = String::from("n,estimate,abs_error\n");
        for n in 1..=terms {
            let row = evaluate(&SeriesSpec::new(id, n, digits).map_err(err_str)?)
                .map_err(err_str)?;
            let abs_err = row
                .error_vs_reference
                .as_ref()
                .expect("evaluate always fills the error")
                .abs();
            contents.push_str(&format!(
                "{n},{},{}\n",
                row.value,
                abs_err.to_scientific(8).trim_start_matches('+')
            ));
        }
        write_atomic(&path, &contents)?;
        println!("wrote {terms} rows to {}", path.display());
    }
    Ok(0)
}

fn cmd_fig1(nmax: u64, step: u64, csv: &Path) -> Result<i32, String> {
    let rows = fig1_data(nmax, step).map_err(err_str)?;
    let mut contents = String::from("n,leibniz,eq38,eq39,eq40\n");
    for row in &rows {
        contents.push_str(&format!(
            "{},{:.3},{:.3},{:.3},{:.3}\n",
            row.n, row.log_abs[0], row.log_abs[1], row.log_abs[2], row.log_abs[3]
        ));
    }
    write_atomic(csv, &contents)?;
    println!("wrote {} rows to {}", rows.len(), csv.display());
    Ok(0)
}

fn cmd_hayashi(pi: &str, nmax: u64, depth: usize) -> Result<i32, String> {
    let assumed = parse_rational(pi)?;
    if !assumed.is_positive() {
        return Err(format!("assumed pi must be positive, got {assumed}"));
    }
    let report = reconstruct(&assumed, nmax, depth).map_err(err_str)?;
    print!("{report}");
    Ok(0)
}

fn cmd_bounds(k: u32, n: u64) -> Result<i32, String> {
    let bounds = error_bounds(k, n).map_err(err_str)?;
    println!("lower        |I({})|/2 = {}", 2 * n + 1, bounds.lower);
    println!("upper        |I({})|/2 = {}", 2 * n - 1, bounds.upper);
    println!("simple upper |I({})|   = {}", 2 * n + 1, bounds.simple_upper);
    Ok(0)
}

fn cmd_putumana_verify() -> Result<i32, String> {
    let identity = putumana_identity();
    println!("paired difference: {}", identity.lhs.render('j'));
    println!("collapsed form:    {}", identity.rhs.render('j'));
    if identity.holds {
        println!("identity holds exactly");
        Ok(0)
    } else {
        println!("IDENTITY FAILS");
        Ok(2)
    }
}
