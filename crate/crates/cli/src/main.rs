use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use beauville_core::beauville::{
    abelian_beauville_search, nottingham_noncovering_suite, verify_main_theorem, AbelianSearch, BeauvilleError,
};
use beauville_core::coset_enum::{enumerate, EnumerationError, EnumerationLimits, DEFAULT_MAX_COSETS};
use beauville_core::fp_series::{commutator_suite, lcs_suite, order_suite, SuiteRow};
use beauville_core::is_prime;
use beauville_core::presentations::{fairbairn_presentation, parse_presentation};

const MAX_COSETS_ENV: &str = "BEAUVILLE_MAX_COSETS";

#[derive(Parser)]
#[command(name = "beauville", version)]
#[command(about = "Verify strongly real Beauville structures on p-group quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline for F/γ_(i+1)(F), i = k(p-1)+1, and write a certificate
    Verify {
        #[arg(long, value_parser = odd_prime)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Certificate path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Property suites on finite quotients of the Nottingham group
    Nottingham {
        #[arg(long, value_parser = odd_prime)]
        p: u64,
        /// Truncation degree M (the quotient N/N_M); defaults to kp+4
        #[arg(long)]
        precision: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: Option<u32>,
        #[arg(long, value_enum)]
        check: SuiteKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pairs for the commutator suite
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Coset-enumerate a presentation file and print the group order
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Check the orders of the two Fairbairn presentations (8192 and 16384)
    Fairbairn {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Search C_n x C_n for a Beauville structure
    Abelian {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteKind {
    Order,
    Lcs,
    Comms,
    Noncover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass = 0,
    Falsified = 1,
    ResourceLimit = 2,
    Usage = 64,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

fn odd_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if p >= 3 && p <= u32::MAX as u64 && is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not an odd prime"))
    }
}

/// Flag, then environment, then the built-in default.
fn limits(flag: Option<usize>) -> Result<EnumerationLimits, String> {
    if let Some(n) = flag {
        return Ok(EnumerationLimits::new(n));
    }
    match std::env::var(MAX_COSETS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(EnumerationLimits::new)
            .map_err(|_| format!("{MAX_COSETS_ENV}={v} is not a positive integer")),
        Err(_) => Ok(EnumerationLimits::new(DEFAULT_MAX_COSETS)),
    }
}

fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn enumeration_status(e: &EnumerationError) -> Status {
    match e {
        EnumerationError::LimitExceeded { .. } | EnumerationError::QueueOverflow { .. } => Status::ResourceLimit,
        _ => Status::Falsified,
    }
}

fn cmd_verify(p: u64, k: u32, out: Option<PathBuf>, limits: EnumerationLimits) -> Status {
    let cert = match verify_main_theorem(p, k, limits) {
        Ok(cert) => cert,
        Err(e) => {
            eprintln!("verify p={p} k={k}: {e}");
            return match e {
                e if e.is_resource_limit() => Status::ResourceLimit,
                BeauvilleError::NotOddPrime(_) | BeauvilleError::ZeroK => Status::Usage,
                _ => Status::Falsified,
            };
        }
    };
    for c in &cert.checks {
        eprintln!("[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    eprintln!(
        "p={} k={} i={} |H|={} exp={} o(uv)={} ({} ms)",
        cert.p, cert.k, cert.i, cert.group_order, cert.exponent, cert.order_uv, cert.wall_ms
    );
    let json = cert.to_json();
    match out {
        Some(path) => {
            if let Err(e) = write_atomically(&path, &json) {
                eprintln!("cannot write {}: {e}", path.display());
                return Status::Usage;
            }
        }
        None => println!("{json}"),
    }
    if cert.all_passed() {
        Status::Pass
    } else {
        Status::Falsified
    }
}

fn print_rows(rows: &[SuiteRow]) -> Status {
    let width = rows.iter().map(|r| r.index.len()).max().unwrap_or(5).max(5);
    println!("{:<width$}  {:<6} expected | observed", "index", "result");
    for r in rows {
        let verdict = if r.pass { "ok" } else { "FAIL" };
        println!("{:<width$}  {:<6} {} | {}", r.index, verdict, r.expected, r.observed);
    }
    let failures = rows.iter().filter(|r| !r.pass).count();
    eprintln!("{} rows, {failures} mismatches", rows.len());
    if failures == 0 {
        Status::Pass
    } else {
        Status::Falsified
    }
}

struct SuiteArgs {
    p: u64,
    precision: Option<usize>,
    k: Option<u32>,
    check: SuiteKind,
    seed: u64,
    samples: usize,
    limits: EnumerationLimits,
}

fn cmd_nottingham(a: SuiteArgs) -> Status {
    let p32 = a.p as u32;
    let precision = a.precision.unwrap_or(a.k.unwrap_or(1) as usize * a.p as usize + 4);
    let rows = match a.check {
        SuiteKind::Order => order_suite(p32, precision).map_err(|e| e.to_string()),
        SuiteKind::Lcs => lcs_suite(p32, precision).map_err(|e| e.to_string()),
        SuiteKind::Comms => commutator_suite(p32, precision, a.samples, a.seed).map_err(|e| e.to_string()),
        SuiteKind::Noncover => {
            let k = a.k.unwrap_or_else(|| (precision.saturating_sub(3) / a.p as usize).max(1) as u32);
            if precision < k as usize * a.p as usize + 3 {
                eprintln!("noncover needs precision >= kp+3 = {}", k as usize * a.p as usize + 3);
                return Status::Usage;
            }
            match nottingham_noncovering_suite(a.p, k, a.limits.max_cosets) {
                Ok(rows) => Ok(rows),
                Err(e) if e.is_resource_limit() => {
                    eprintln!("{e}");
                    return Status::ResourceLimit;
                }
                Err(e) => Err(e.to_string()),
            }
        }
    };
    match rows {
        Ok(rows) => print_rows(&rows),
        Err(e) => {
            eprintln!("{e}");
            Status::Usage
        }
    }
}

fn cmd_enumerate(file: &Path, limits: EnumerationLimits) -> Status {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", file.display());
            return Status::Usage;
        }
    };
    let pres = match parse_presentation(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return Status::Usage;
        }
    };
    match enumerate(&pres, limits) {
        Ok(table) => {
            println!("{}", table.n_cosets());
            eprintln!("{pres}: order {}", table.n_cosets());
            Status::Pass
        }
        Err(e) => {
            eprintln!("{e}");
            enumeration_status(&e)
        }
    }
}

fn cmd_fairbairn(which: u8, limits: EnumerationLimits) -> Status {
    let expected = if which == 1 { 8192 } else { 16384 };
    let pres = fairbairn_presentation(which).expect("which is 1 or 2");
    match enumerate(&pres, limits) {
        Ok(table) => {
            let n = table.n_cosets();
            println!("{n}");
            let pass = n == expected;
            eprintln!("Fairbairn group {which}: order {n}, expected {expected}: {}", if pass { "pass" } else { "FAIL" });
            if pass {
                Status::Pass
            } else {
                Status::Falsified
            }
        }
        Err(e) => {
            eprintln!("{e}");
            enumeration_status(&e)
        }
    }
}

fn cmd_abelian(n: u32) -> Status {
    match abelian_beauville_search(n) {
        Ok(AbelianSearch::Found { pairs, strongly_real, .. }) => {
            let show = |(x, y): (beauville_core::beauville::ZnPair, beauville_core::beauville::ZnPair)| {
                format!("{{({}, {}), ({}, {})}}", x.a, x.b, y.a, y.b)
            };
            println!("C_{n} x C_{n}: {} {}", show(pairs[0]), show(pairs[1]));
            println!("strongly real: {}", if strongly_real { "yes" } else { "no" });
            if strongly_real {
                Status::Pass
            } else {
                Status::Falsified
            }
        }
        Ok(AbelianSearch::None) => {
            println!("C_{n} x C_{n}: NONE");
            Status::Pass
        }
        Err(e) => {
            eprintln!("{e}");
            Status::Falsified
        }
    }
}

fn run(cli: Cli) -> Status {
    let resolve = |flag| match limits(flag) {
        Ok(l) => Ok(l),
        Err(msg) => {
            eprintln!("{msg}");
            Err(Status::Usage)
        }
    };
    match cli.command {
        Command::Verify { p, k, out, max_cosets } => match resolve(max_cosets) {
            Ok(l) => cmd_verify(p, k, out, l),
            Err(s) => s,
        },
        Command::Nottingham { p, precision, k, check, seed, samples, max_cosets } => match resolve(max_cosets) {
            Ok(limits) => cmd_nottingham(SuiteArgs { p, precision, k, check, seed, samples, limits }),
            Err(s) => s,
        },
        Command::Enumerate { file, max_cosets } => match resolve(max_cosets) {
            Ok(l) => cmd_enumerate(&file, l),
            Err(s) => s,
        },
        Command::Fairbairn { which, max_cosets } => match resolve(max_cosets) {
            Ok(l) => cmd_fairbairn(which, l),
            Err(s) => s,
        },
        Command::Abelian { n } => cmd_abelian(n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Pass.into(),
                _ => Status::Usage.into(),
            };
        }
    };
    run(cli).into()
}
