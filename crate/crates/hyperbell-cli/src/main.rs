//! Command-line front end for the hyperbell library.
//!
//! Exit codes: 0 success / verified match; 1 verification failure or sequence
//! mismatch; 2 usage error (including the `--max-bits` resource guard);
//! 3 I/O or network error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hyperbell::analytic::{check_identity, decimal_string, parse_decimal, IdentityTag, PrecisionBudget};
use hyperbell::oeis::{bundled_fixture, compare, emit_bfile, fetch, parse_bfile};
use hyperbell::sequences::{extended_bell_prefix, restricted_bell_prefix, stirling_ext};
use hyperbell::series::{oracle_bell, oracle_restricted, oracle_sequence, oracle_stirling, HypergeomSpec};
use hyperbell::{Error, Int};

#[derive(Parser)]
#[command(
    name = "hyperbell",
    version,
    about = "Exact weighted set-partition sequences, verification oracles, and constant identities"
)]
struct Cli {
    /// Abort (exit 2) before computing anything whose values could exceed
    /// this many bits.
    #[arg(long = "max-bits", global = true, default_value_t = 1_000_000)]
    max_bits: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    /// Space-separated values, one logical row per line.
    #[default]
    Plain,
    /// Comma-separated with a header row.
    Csv,
    /// A single JSON document; large integers appear as decimal strings.
    Json,
    /// Two-column "index value" lines (single sequences only).
    Bfile,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Bell,
    Stirling,
    Restricted,
    General,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeqKind {
    /// The level-L sequence b(0), b(1), ...
    Bell,
    /// The diagonal band S(n + p, n) for n = 1, 2, ...
    Supra,
    /// The restricted sequence with minimum block size p + 1.
    Restricted,
}

#[derive(Subcommand)]
enum Command {
    /// Print b(0..=n_max) for one level.
    Bell {
        #[arg(long = "L")]
        level: u32,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print the partition-count triangle (rows n = 1..=n_max), or one column.
    Stirling {
        #[arg(long = "L")]
        level: u32,
        #[arg(long = "n-max")]
        n_max: usize,
        /// Restrict output to the single column with this block count.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print b(p; 0..=n_max): partitions with every block larger than p.
    Restricted {
        #[arg(long = "L")]
        level: u32,
        #[arg(long)]
        p: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Recompute a sequence from the power-series route and compare it
    /// against the recursion route.
    Oracle {
        #[arg(long)]
        kind: OracleKind,
        #[arg(long = "L", default_value_t = 0)]
        level: u32,
        /// Block count (kind=stirling).
        #[arg(long)]
        l: Option<usize>,
        /// Minimum-block-size restriction (kind=restricted).
        #[arg(long)]
        p: Option<usize>,
        /// Comma-separated positive integer parameters (kind=general).
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<u64>>,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Evaluate both sides of one constant identity with rigorous enclosures.
    Identity {
        #[arg(long)]
        tag: String,
        #[arg(long, default_value_t = 40)]
        terms: usize,
        #[arg(long, default_value = "1e-36")]
        tol: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Compare a library sequence against a reference b-file.
    Oeis {
        /// Which library sequence to compare.
        #[arg(long)]
        seq: SeqKind,
        #[arg(long = "L", default_value_t = 0)]
        level: u32,
        /// Restriction (seq=restricted) or diagonal offset (seq=supra, default 1).
        #[arg(long)]
        p: Option<usize>,
        /// Reference sequence id, e.g. A000110.
        #[arg(long)]
        id: String,
        /// Index in the reference file aligned with our first value.
        #[arg(long, default_value_t = 0)]
        offset: i64,
        /// Number of library values to compare.
        #[arg(long = "n-max", default_value_t = 12)]
        n_max: usize,
        /// Download (and cache) the b-file instead of using a bundled fixture.
        #[arg(long)]
        fetch: bool,
        /// Force use of the bundled fixture (the default).
        #[arg(long)]
        fixture: bool,
        #[arg(long = "cache-dir", env = "HYPERBELL_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    fn fail(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::InvalidArgument(_) | Error::BadSequenceId(_) | Error::OrderMismatch { .. } => 2,
            Error::IntegralityViolation { .. }
            | Error::InsufficientPrecision { .. }
            | Error::EmptyOverlap => 1,
            Error::NonzeroConstantTerm { .. } | Error::ConstantTermNotOne { .. } => 2,
            Error::BFileParse { .. } | Error::Io(_) | Error::Network(_) | Error::HttpStatus { .. } => 3,
        };
        CliError { code, message: err.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let max_bits = cli.max_bits;
    match cli.command {
        Command::Bell { level, n_max, format } => {
            guard_bits(max_bits, &ones(level), n_max)?;
            let values = extended_bell_prefix(level, n_max);
            print_sequence(&values, 0, format)
        }
        Command::Stirling { level, n_max, l, format } => {
            guard_bits(max_bits, &ones(level), n_max)?;
            match l {
                None => print_triangle(level, n_max, format),
                Some(blocks) => {
                    if n_max < blocks {
                        return Err(CliError::usage(format!(
                            "column {blocks} needs --n-max of at least {blocks}"
                        )));
                    }
                    let values: Vec<Int> =
                        (blocks..=n_max).map(|n| stirling_ext(level, n, blocks)).collect();
                    print_sequence(&values, blocks as i64, format)
                }
            }
        }
        Command::Restricted { level, p, n_max, format } => {
            guard_bits(max_bits, &ones(level), n_max)?;
            let values = restricted_bell_prefix(level, p, n_max);
            print_sequence(&values, 0, format)
        }
        Command::Oracle { kind, level, l, p, params, order, format } => {
            run_oracle(max_bits, kind, level, l, p, params, order, format)
        }
        Command::Identity { tag, terms, tol, format } => run_identity(max_bits, &tag, terms, &tol, format),
        Command::Oeis { seq, level, p, id, offset, n_max, fetch, fixture, cache_dir, format } => {
            run_oeis(max_bits, seq, level, p, &id, offset, n_max, fetch, fixture, cache_dir, format)
        }
    }
}

/// Every value the table commands print is below `6 * w(n_max)`, where the
/// weight is `n! * prod_i rising(k_i, n)`.  Refuse up front when even that
/// bound would not fit in `max_bits` bits.
fn guard_bits(max_bits: u64, weight_params: &[u64], n: usize) -> Result<(), CliError> {
    let mut bits = 3.0 + log2_factorial(n);
    for &k in weight_params {
        let k = k as usize;
        bits += log2_factorial(n + k - 1) - log2_factorial(k - 1);
    }
    let needed = bits.ceil() as u64;
    if needed > max_bits {
        return Err(CliError::usage(format!(
            "values could need about {needed} bits, above the --max-bits limit of {max_bits}"
        )));
    }
    Ok(())
}

fn log2_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}

fn ones(level: u32) -> Vec<u64> {
    vec![1; level as usize]
}

fn run_oracle(
    max_bits: u64,
    kind: OracleKind,
    level: u32,
    l: Option<usize>,
    p: Option<usize>,
    params: Option<Vec<u64>>,
    order: usize,
    format: Format,
) -> Result<(), CliError> {
    match kind {
        OracleKind::Bell => {
            guard_bits(max_bits, &ones(level), order)?;
            let series_route = oracle_bell(level, order)?;
            let recursion_route = extended_bell_prefix(level, order);
            report_agreement(&series_route, &recursion_route, format)
        }
        OracleKind::Stirling => {
            let blocks = l.ok_or_else(|| CliError::usage("--l is required for kind=stirling"))?;
            guard_bits(max_bits, &ones(level), order)?;
            let series_route = oracle_stirling(level, blocks, order)?;
            let recursion_route: Vec<Int> =
                (0..=order).map(|n| stirling_ext(level, n, blocks)).collect();
            report_agreement(&series_route, &recursion_route, format)
        }
        OracleKind::Restricted => {
            let restriction = p.ok_or_else(|| CliError::usage("--p is required for kind=restricted"))?;
            guard_bits(max_bits, &ones(level), order)?;
            let series_route = oracle_restricted(level, restriction, order)?;
            let recursion_route = restricted_bell_prefix(level, restriction, order);
            report_agreement(&series_route, &recursion_route, format)
        }
        OracleKind::General => {
            let params = params.ok_or_else(|| CliError::usage("--params is required for kind=general"))?;
            let spec = HypergeomSpec::new(params)?;
            guard_bits(max_bits, spec.params(), order)?;
            let values = oracle_sequence(&spec, order)?;
            print_sequence(&values, 0, format)?;
            verdict_line(format, "integrality OK");
            Ok(())
        }
    }
}

fn report_agreement(series_route: &[Int], recursion_route: &[Int], format: Format) -> Result<(), CliError> {
    debug_assert_eq!(series_route.len(), recursion_route.len());
    let disagreement = series_route
        .iter()
        .zip(recursion_route.iter())
        .position(|(a, b)| a != b);
    print_sequence(series_route, 0, format)?;
    match disagreement {
        None => {
            verdict_line(format, &format!("OK {0}/{0}", series_route.len()));
            Ok(())
        }
        Some(index) => {
            verdict_line(
                format,
                &format!(
                    "MISMATCH at index {index}: series={} recursion={}",
                    series_route[index], recursion_route[index]
                ),
            );
            Err(CliError::fail(format!("series and recursion routes disagree at index {index}")))
        }
    }
}

/// In plain format the verdict is part of the output; in machine formats it
/// goes to stderr so stdout stays a single clean document.
fn verdict_line(format: Format, text: &str) {
    if format == Format::Plain {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
}

fn run_identity(max_bits: u64, tag: &str, terms: usize, tol: &str, format: Format) -> Result<(), CliError> {
    let tag: IdentityTag = tag.parse()?;
    let tol = parse_decimal(tol)?;
    let budget = PrecisionBudget::new(terms, tol)?;
    let spec = tag.spec();
    guard_bits(max_bits, spec.params(), terms)?;
    let report = check_identity(tag, &budget);

    const DIGITS: usize = 45;
    let lhs_lo = decimal_string(report.lhs.lo(), DIGITS, false);
    let lhs_hi = decimal_string(report.lhs.hi(), DIGITS, true);
    let rhs_lo = decimal_string(report.rhs.lo(), DIGITS, false);
    let rhs_hi = decimal_string(report.rhs.hi(), DIGITS, true);
    let gap = decimal_string(&report.gap, DIGITS, true);

    match format {
        Format::Plain => {
            println!("tag: {}", report.tag);
            println!("terms: {terms}");
            println!("lhs: [{lhs_lo}, {lhs_hi}]");
            println!("rhs: [{rhs_lo}, {rhs_hi}]");
            println!("overlap: {}", report.overlap);
            println!("gap: {gap}");
        }
        Format::Csv => {
            println!("field,value");
            println!("tag,{}", report.tag);
            println!("terms,{terms}");
            println!("lhs_lo,{lhs_lo}");
            println!("lhs_hi,{lhs_hi}");
            println!("rhs_lo,{rhs_lo}");
            println!("rhs_hi,{rhs_hi}");
            println!("overlap,{}", report.overlap);
            println!("gap,{gap}");
        }
        Format::Json => {
            let doc = serde_json::json!({
                "tag": report.tag.to_string(),
                "terms": terms,
                "lhs": [lhs_lo, lhs_hi],
                "rhs": [rhs_lo, rhs_hi],
                "overlap": report.overlap,
                "gap": gap,
            });
            println!("{doc}");
        }
        Format::Bfile => {
            return Err(CliError::usage("bfile format only applies to single integer sequences"));
        }
    }
    if report.overlap {
        Ok(())
    } else {
        Err(CliError::fail("the two enclosures do not overlap"))
    }
}

#[allow(clippy::too_many_arguments)]
fn run_oeis(
    max_bits: u64,
    seq: SeqKind,
    level: u32,
    p: Option<usize>,
    id: &str,
    offset: i64,
    n_max: usize,
    use_fetch: bool,
    use_fixture: bool,
    cache_dir: Option<PathBuf>,
    format: Format,
) -> Result<(), CliError> {
    if use_fetch && use_fixture {
        return Err(CliError::usage("--fetch and --fixture are mutually exclusive"));
    }
    let ours: Vec<Int> = match seq {
        SeqKind::Bell => {
            guard_bits(max_bits, &ones(level), n_max)?;
            extended_bell_prefix(level, n_max)
        }
        SeqKind::Supra => {
            let diag = p.unwrap_or(1);
            guard_bits(max_bits, &ones(level), n_max + diag)?;
            (1..=n_max).map(|n| stirling_ext(level, n + diag, n)).collect()
        }
        SeqKind::Restricted => {
            guard_bits(max_bits, &ones(level), n_max)?;
            restricted_bell_prefix(level, p.unwrap_or(0), n_max)
        }
    };

    let text: String = if use_fetch {
        let dir = cache_dir.unwrap_or_else(|| std::env::temp_dir().join("hyperbell-oeis"));
        fetch(id, &dir)?
    } else {
        bundled_fixture(id)
            .ok_or_else(|| {
                CliError::usage(format!("no bundled fixture for {id}; pass --fetch to download it"))
            })?
            .to_string()
    };
    let reference = parse_bfile(id, &text)?;
    let report = compare(&ours, offset, &reference)?;

    match format {
        Format::Plain => {
            println!("sequence: {}", report.seq_id);
            println!("offset: {}", report.offset);
            println!("compared: {} (indices {}..={})", report.compared, report.first_index, report.last_index);
            if report.matched() {
                println!("result: match");
            } else {
                println!("result: {} mismatches", report.mismatches.len());
                for m in &report.mismatches {
                    println!("mismatch at index {}: ours={} reference={}", m.index, m.ours, m.reference);
                }
            }
        }
        Format::Csv => {
            println!("field,value");
            println!("sequence,{}", report.seq_id);
            println!("offset,{}", report.offset);
            println!("compared,{}", report.compared);
            println!("first_index,{}", report.first_index);
            println!("last_index,{}", report.last_index);
            println!("matched,{}", report.matched());
            let encoded: Vec<String> = report
                .mismatches
                .iter()
                .map(|m| format!("{}:{}:{}", m.index, m.ours, m.reference))
                .collect();
            println!("mismatches,{}", encoded.join(";"));
        }
        Format::Json => {
            let mismatches: Vec<serde_json::Value> = report
                .mismatches
                .iter()
                .map(|m| {
                    serde_json::json!({
                        "index": m.index,
                        "ours": m.ours.to_string(),
                        "reference": m.reference.to_string(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "sequence": report.seq_id,
                "offset": report.offset,
                "compared": report.compared,
                "first_index": report.first_index,
                "last_index": report.last_index,
                "matched": report.matched(),
                "mismatches": mismatches,
            });
            println!("{doc}");
        }
        Format::Bfile => {
            return Err(CliError::usage("bfile format only applies to single integer sequences"));
        }
    }
    if report.matched() {
        Ok(())
    } else {
        Err(CliError::fail(format!(
            "{} of {} compared values disagree with {}",
            report.mismatches.len(),
            report.compared,
            report.seq_id
        )))
    }
}

fn print_sequence(values: &[Int], start: i64, format: Format) -> Result<(), CliError> {
    match format {
        Format::Plain => {
            let line: Vec<String> = values.iter().map(Int::to_string).collect();
            println!("{}", line.join(" "));
        }
        Format::Csv => {
            println!("index,value");
            for (i, value) in values.iter().enumerate() {
                println!("{},{value}", start + i as i64);
            }
        }
        Format::Json => {
            let doc: Vec<serde_json::Value> =
                values.iter().map(|v| serde_json::Value::String(v.to_string())).collect();
            println!("{}", serde_json::Value::Array(doc));
        }
        Format::Bfile => {
            print!("{}", emit_bfile(start, values));
        }
    }
    Ok(())
}

fn print_triangle(level: u32, n_max: usize, format: Format) -> Result<(), CliError> {
    if n_max < 1 {
        return Err(CliError::usage("--n-max must be at least 1 for the triangle"));
    }
    match format {
        Format::Plain => {
            for n in 1..=n_max {
                let row: Vec<String> =
                    (1..=n).map(|l| stirling_ext(level, n, l).to_string()).collect();
                println!("{}", row.join(" "));
            }
        }
        Format::Csv => {
            println!("n,l,value");
            for n in 1..=n_max {
                for l in 1..=n {
                    println!("{n},{l},{}", stirling_ext(level, n, l));
                }
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = (1..=n_max)
                .map(|n| {
                    let row: Vec<serde_json::Value> = (1..=n)
                        .map(|l| serde_json::Value::String(stirling_ext(level, n, l).to_string()))
                        .collect();
                    serde_json::json!({ "n": n, "values": row })
                })
                .collect();
            println!("{}", serde_json::Value::Array(rows));
        }
        Format::Bfile => {
            return Err(CliError::usage(
                "bfile format only applies to single integer sequences; use --l to select a column",
            ));
        }
    }
    Ok(())
}
