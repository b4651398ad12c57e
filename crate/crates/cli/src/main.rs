//! cacforge: construct and verify weight-3 conflict-avoiding codes of prime
//! length, count points on the diagonal equations behind them, and scan
//! prime ranges for solvability.
//!
//! Exit codes: 0 success, 1 domain error, 2 verification failure, 64 usage.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cacforge_core::cac;
use cacforge_core::charsum;
use cacforge_core::diagonal;
use cacforge_core::error::Error as CoreError;
use cacforge_core::exec;
use cacforge_core::field::FieldCtx;
use cacforge_core::nt;
use cacforge_core::scan;
use cacforge_core::selftest;

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "cacforge", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Output format for record-shaped results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel subcommands (scan, sweeps).
    #[arg(long, global = true, env = "CACFORGE_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search all generators of F_q for a solution of g^2 X^l + g Y^l + 1 = 0.
    Solve(SolveArgs),
    /// Count solutions for one generator, or aggregate over all of them.
    Count(CountArgs),
    /// Solvability, crude and Hasse-Weil thresholds for an exponent.
    Bound {
        #[arg(long)]
        ell: u64,
    },
    /// Optimal-size bookkeeping for a prime code length.
    Sizes {
        #[arg(long)]
        p: u64,
    },
    /// Ramanujan sum c_n(m) by the closed form.
    Ramanujan {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: i64,
    },
    /// Build or verify conflict-avoiding codes.
    #[command(subcommand)]
    Cac(CacCommand),
    /// Per-prime solvability verdicts over a range, as CSV.
    Scan(ScanArgs),
    /// Primes up to a limit with a Fibonacci primitive root.
    FibRoots {
        #[arg(long)]
        limit: u64,
    },
    /// Run the embedded reference-record checks.
    Selftest {
        /// List check names without running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Field size, a prime power.
    #[arg(long)]
    q: u64,
    /// Modulus coefficients for extension fields, constant term first.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    /// Exponent; must be a proper divisor of q-1.
    #[arg(long)]
    ell: u64,
    /// Only accept witnesses with x*y != 0.
    #[arg(long)]
    require_nonzero_xy: bool,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    #[arg(long)]
    ell: u64,
    /// Generator in element syntax ("3", "4+1*a"); omit to aggregate over all.
    #[arg(long)]
    g: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Charsum,
    Both,
}

#[derive(Debug, Subcommand)]
enum CacCommand {
    /// Build an optimal code of odd prime length p.
    Build {
        #[arg(long)]
        p: u64,
    },
    /// Check the pairwise difference-set disjointness of an exported code.
    Verify {
        #[arg(long)]
        file: String,
    },
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    lo: u64,
    #[arg(long)]
    hi: u64,
    /// Restrict to primes whose <-1,2> index equals this value.
    #[arg(long)]
    ell: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_DOMAIN);
        }
        let _ = exec::set_global_jobs(jobs);
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CoreError> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(cli, args),
        Command::Count(args) => cmd_count(cli, args),
        Command::Bound { ell } => {
            emit(cli, &diagonal::bound_sheet(*ell)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sizes { p } => {
            emit(cli, &diagonal::cac_size_sheet(*p)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ramanujan { n, m } => cmd_ramanujan(cli, *n, *m),
        Command::Cac(CacCommand::Build { p }) => cmd_cac_build(*p),
        Command::Cac(CacCommand::Verify { file }) => cmd_cac_verify(cli, file),
        Command::Scan(args) => cmd_scan(args),
        Command::FibRoots { limit } => {
            for p in scan::fib_prime_sequence(*limit) {
                println!("{p}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { list } => cmd_selftest(*list),
    }
}

fn make_field(q: u64, modulus: &Option<Vec<u64>>) -> Result<Arc<FieldCtx>, CoreError> {
    match modulus {
        None => FieldCtx::with_default_modulus(q),
        Some(coeffs) => {
            let f = nt::factorize(q)?;
            if f.factors.len() != 1 {
                return Err(CoreError::NotPrimePower { n: q });
            }
            let (p, k) = f.factors[0];
            if coeffs.len() != k as usize + 1 {
                return Err(CoreError::Domain(format!(
                    "modulus has degree {}, but q = {p}^{k}",
                    coeffs.len().saturating_sub(1)
                )));
            }
            FieldCtx::extension(p, coeffs)
        }
    }
}

#[derive(Serialize)]
struct SolveOutput {
    q: u64,
    ell: u64,
    require_nonzero_xy: bool,
    field: cacforge_core::field::FieldDescriptor,
    witness: Option<SolveWitness>,
    report: Option<diagonal::DiagonalReport>,
}

#[derive(Serialize)]
struct SolveWitness {
    g: String,
    x: String,
    y: String,
}

fn cmd_solve(cli: &Cli, args: &SolveArgs) -> Result<ExitCode, CoreError> {
    let field = make_field(args.q, &args.modulus)?;
    let found = diagonal::find_solvable_generator(&field, args.ell, args.require_nonzero_xy)?;
    let (witness, report) = match found {
        None => (None, None),
        Some(w) => (
            Some(SolveWitness {
                g: field.format_elem(w.g),
                x: field.format_elem(w.x),
                y: field.format_elem(w.y),
            }),
            Some(diagonal::diagonal_report(&field, args.ell, w.g)?),
        ),
    };
    emit(
        cli,
        &SolveOutput {
            q: field.q(),
            ell: args.ell,
            require_nonzero_xy: args.require_nonzero_xy,
            field: field.descriptor(),
            witness,
            report,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CountOutput {
    q: u64,
    ell: u64,
    g: Option<String>,
    #[serde(rename = "N")]
    n: u64,
    method: &'static str,
}

fn cmd_count(cli: &Cli, args: &CountArgs) -> Result<ExitCode, CoreError> {
    let field = make_field(args.q, &args.modulus)?;
    let n = match &args.g {
        Some(gtext) => {
            let g = field.parse_elem(gtext)?;
            match args.method {
                Method::Brute => diagonal::count_affine(&field, args.ell, g)?,
                Method::Charsum => charsum::count_via_charsum(&field, args.ell, g)?,
                Method::Both => {
                    let brute = diagonal::count_affine(&field, args.ell, g)?;
                    let cs = charsum::count_via_charsum(&field, args.ell, g)?;
                    if brute != cs {
                        return Err(CoreError::Consistency(format!(
                            "brute force gives {brute}, character sum gives {cs}"
                        )));
                    }
                    brute
                }
            }
        }
        None => {
            let brute = || charsum::aggregate_count(&field, args.ell);
            let by_charsum = || -> Result<u64, CoreError> {
                let sys = charsum::CharSystem::new(&field, args.ell)?;
                let mut subsum = 0u64;
                for t in 1..=args.ell {
                    if nt::gcd(t, args.ell) == 1 {
                        subsum += sys.count_for_generator(field.gen_pow(t))?;
                    }
                }
                Ok(nt::euler_phi(field.q() - 1) / nt::euler_phi(args.ell) * subsum)
            };
            match args.method {
                Method::Brute => brute()?,
                Method::Charsum => by_charsum()?,
                Method::Both => {
                    let b = brute()?;
                    let c = by_charsum()?;
                    if b != c {
                        return Err(CoreError::Consistency(format!(
                            "brute force gives {b}, character sum gives {c}"
                        )));
                    }
                    b
                }
            }
        }
    };
    let method = match args.method {
        Method::Brute => "brute",
        Method::Charsum => "charsum",
        Method::Both => "both",
    };
    emit(
        cli,
        &CountOutput {
            q: field.q(),
            ell: args.ell,
            g: args.g.clone(),
            n,
            method,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RamanujanOutput {
    n: u64,
    m: i64,
    value: i64,
}

fn cmd_ramanujan(cli: &Cli, n: u64, m: i64) -> Result<ExitCode, CoreError> {
    if n == 0 {
        return Err(CoreError::ZeroValue);
    }
    let value = nt::ramanujan_sum(n, m);
    if n <= 10_000 {
        let oracle = nt::ramanujan_sum_oracle(n, m);
        if oracle != value {
            return Err(CoreError::Consistency(format!(
                "closed form {value} disagrees with the oracle {oracle}"
            )));
        }
    }
    emit(cli, &RamanujanOutput { n, m, value })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_cac_build(p: u64) -> Result<ExitCode, CoreError> {
    let build = cac::build_optimal_cac(p)?;
    let witness = build.witness.as_ref().map(|t| cac::WitnessDoc {
        g: t.g,
        x: t.x,
        y: t.y,
    });
    println!("{}", cac::export_cac(&build.code, witness)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_cac_verify(cli: &Cli, file: &str) -> Result<ExitCode, CoreError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CoreError::Domain(format!("cannot read {file}: {e}")))?;
    let (code, _witness) = cac::import_cac(&text)?;
    let verdict = cac::verify_cac(&code)?;
    #[derive(Serialize)]
    struct VerifyOutput<'a> {
        n: u64,
        size: usize,
        #[serde(flatten)]
        verdict: &'a cac::Verdict,
    }
    emit(
        cli,
        &VerifyOutput {
            n: code.n,
            size: code.size(),
            verdict: &verdict,
        },
    )?;
    match verdict {
        cac::Verdict::Valid => Ok(ExitCode::SUCCESS),
        cac::Verdict::Conflict {
            first,
            second,
            residue,
        } => {
            eprintln!(
                "error: difference sets of codewords {first} and {second} share residue {residue}"
            );
            Ok(ExitCode::from(EXIT_VERIFY))
        }
    }
}

fn cmd_scan(args: &ScanArgs) -> Result<ExitCode, CoreError> {
    let records = scan::scan_range(args.lo, args.hi, args.ell)?;
    let mut out = String::from("p,ell0,verdict,g,x,y,ms\n");
    for r in &records {
        let (verdict, g, x, y) = match r.verdict {
            scan::ScanVerdict::Holds { g, x, y } => {
                ("holds", g.to_string(), x.to_string(), y.to_string())
            }
            scan::ScanVerdict::Vacuous => ("vacuous", String::new(), String::new(), String::new()),
            scan::ScanVerdict::CoveredByBound => (
                "covered_by_bound",
                String::new(),
                String::new(),
                String::new(),
            ),
            scan::ScanVerdict::Failed => ("failed", String::new(), String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.p, r.ell0, verdict, g, x, y, r.elapsed_ms
        ));
    }
    match &args.out {
        None => print!("{out}"),
        Some(path) => std::fs::write(path, &out)
            .map_err(|e| CoreError::Domain(format!("cannot write {path}: {e}")))?,
    }
    eprintln!(
        "scanned {} primes in [{}, {}]",
        records.len(),
        args.lo,
        args.hi
    );
    if records
        .iter()
        .any(|r| r.verdict == scan::ScanVerdict::Failed)
    {
        eprintln!("error: at least one prime failed the witness search");
        return Ok(ExitCode::from(EXIT_VERIFY));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(list: bool) -> Result<ExitCode, CoreError> {
    if list {
        for name in selftest::check_names() {
            println!("{name}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let outcomes = selftest::run_all();
    let mut failures = 0usize;
    for o in &outcomes {
        if o.passed {
            println!("PASS {}", o.name);
        } else {
            println!("FAIL {} ({})", o.name, o.detail);
            failures += 1;
        }
    }
    println!("{} checks, {} failed", outcomes.len(), failures);
    if failures > 0 {
        Ok(ExitCode::from(EXIT_VERIFY))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

/// Prints a serializable record as compact JSON or a key/value table.
fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<(), CoreError> {
    let json = serde_json::to_value(value).map_err(|e| CoreError::Parse(e.to_string()))?;
    match cli.format {
        Format::Json => {
            println!("{json}");
        }
        Format::Table => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            match &json {
                serde_json::Value::Object(map) => {
                    for (key, val) in map {
                        let _ = writeln!(w, "{key}: {val}");
                    }
                }
                other => {
                    let _ = writeln!(w, "{other}");
                }
            }
        }
    }
    Ok(())
}
