use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use farey::error::{FareyError, Result};
use farey::fraction::Fraction;
use farey::oracle::{self, OracleConfig};
use farey::registry::CreationRegistry;
use farey::sequence::Sweep;
use farey::{analysis, cycles, io as fio, primes, sequence, totient};

#[derive(Parser)]
#[command(name = "farey", version, about = "Farey sequence toolkit", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Header line {"order":m,"len":L}, then one {"n":..,"d":..,"s":..} per triple
    TriplesJsonl,
    /// One n/d per line
    Fractions,
    /// n,d,s rows
    Csv,
    /// Human-oriented report lines
    ReportText,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the sequence of a given order
    Gen {
        #[arg(long)]
        order: u64,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Use the classic three-term recursion (plain fractions, no s values)
        #[arg(long)]
        classic: bool,
    },
    /// Advance a JSON-lines sequence by one order
    Step {
        /// Input file; stdin when omitted
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Fractions created in the transition out of the given order
    Created {
        #[arg(long)]
        order: u64,
    },
    /// Check the structural properties at a given order
    Props {
        #[arg(long)]
        order: u64,
        /// Check a single property 1..=7 instead of all
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        only: Option<u8>,
    },
    /// Exact gap to the successor of a fraction at a given order
    Gap {
        #[arg(long)]
        frac: String,
        #[arg(long)]
        order: u64,
    },
    /// Position of a fraction at a given order via the index formula
    Index {
        #[arg(long)]
        frac: String,
        #[arg(long)]
        order: u64,
    },
    /// Franel-Landau discrepancy table as CSV
    Franel {
        #[arg(long)]
        max_order: u64,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residue-class set of orders carrying countdown c at a denominator
    Cycles {
        #[arg(long)]
        denominator: u64,
        #[arg(long)]
        c: u64,
        /// Print the truncated enumeration with this k budget instead
        #[arg(long)]
        ems: Option<u64>,
    },
    /// Odd primes from the sieve recursion
    Primes {
        #[arg(long)]
        count: usize,
        /// Re-derive each prime from the full sieve instead of the recursion
        #[arg(long)]
        strict: bool,
    },
    /// Twin prime pairs from the incremental recursion
    Twins {
        #[arg(long)]
        count: usize,
        /// Replicate the truncated-set generator with this k budget
        #[arg(long)]
        paper_k: Option<u64>,
    },
    /// Run the oracle-equivalence suite up to a given order
    Selftest {
        #[arg(long)]
        max_order: u64,
    },
    /// Regenerate naive-enumeration fixtures
    #[command(hide = true)]
    OracleFixtures {
        #[arg(long)]
        max_order: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &FareyError) -> u8 {
    match e {
        FareyError::Overflow { .. }
        | FareyError::OrderCapExceeded { .. }
        | FareyError::ScanCapExceeded { .. } => 3,
        FareyError::TruncationExhausted { .. } => 4,
        FareyError::Io(_) | FareyError::DualPathMismatch { .. } => 1,
        _ => 2,
    }
}

fn run(command: Command) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Gen { order, format, classic } => {
            if classic {
                match format {
                    None | Some(OutputFormat::Fractions) => {}
                    _ => {
                        return Err(FareyError::Parse(
                            "--classic produces plain fractions; use --format fractions".into(),
                        ))
                    }
                }
                let fractions = sequence::generate_classic(order)?;
                fio::write_fractions(&mut out, fractions.into_iter())?;
            } else {
                let seq = sequence::generate(order)?;
                match format.unwrap_or(OutputFormat::TriplesJsonl) {
                    OutputFormat::TriplesJsonl => fio::write_sequence(&mut out, &seq)?,
                    OutputFormat::Fractions => fio::write_fractions(&mut out, seq.fractions())?,
                    OutputFormat::Csv => fio::write_triples_csv(&mut out, &seq)?,
                    OutputFormat::ReportText => {
                        return Err(FareyError::Parse(
                            "report-text applies to twins output only".into(),
                        ))
                    }
                }
            }
        }
        Command::Step { input } => {
            let seq = match input {
                Some(path) => fio::read_sequence(BufReader::new(File::open(path)?))?,
                None => fio::read_sequence(io::stdin().lock())?,
            };
            let (next, _) = sequence::step(&seq)?;
            fio::write_sequence(&mut out, &next)?;
        }
        Command::Created { order } => {
            let created = sequence::created(order)?;
            fio::write_created(&mut out, &created)?;
        }
        Command::Props { order, only } => {
            let ids: Vec<u8> = match only {
                Some(id) => vec![id],
                None => (1..=7).collect(),
            };
            let reports = ids
                .into_iter()
                .map(|id| analysis::check_property(id, order))
                .collect::<Result<Vec<_>>>()?;
            fio::write_property_reports(&mut out, &reports)?;
        }
        Command::Gap { frac, order } => {
            let f: Fraction = frac.parse()?;
            let s_f = cycles::s_initial(&f)?;
            let gap = analysis::gap_from_parts(f.denominator(), s_f, order)?;
            writeln!(out, "{}", gap)?;
        }
        Command::Index { frac, order } => {
            let f: Fraction = frac.parse()?;
            let registry = CreationRegistry::build(order)?;
            writeln!(out, "{}", analysis::order_index(&f, order, &registry)?)?;
        }
        Command::Franel { max_order, out: path } => {
            let rows = analysis::franel_table(max_order)?;
            match path {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    fio::write_franel_csv(&mut file, &rows)?;
                    file.flush()?;
                }
                None => fio::write_franel_csv(&mut out, &rows)?,
            }
        }
        Command::Cycles { denominator, c, ems } => match ems {
            Some(k_max) => {
                let values = cycles::ems(denominator, c, k_max)?;
                let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", rendered.join(" "))?;
            }
            None => {
                let set = cycles::cycle_set_for_denominator(denominator, c)?;
                writeln!(out, "d={} c={} :: {}", denominator, c, set)?;
            }
        },
        Command::Primes { count, strict } => {
            let primes = if strict {
                primes::prime_stream_strict(count)?
            } else {
                primes::prime_stream(count)?
            };
            let rendered: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
            writeln!(out, "{}", rendered.join(" "))?;
        }
        Command::Twins { count, paper_k } => match paper_k {
            Some(k_max) => {
                let pairs = primes::twin_primes_report(count, k_max)?;
                out.write_all(primes::format_report(&pairs).as_bytes())?;
            }
            None => {
                for pair in primes::twin_stream(count)? {
                    writeln!(out, "{} {}", pair.p, pair.q)?;
                }
            }
        },
        Command::Selftest { max_order } => {
            out.flush()?;
            return selftest(max_order);
        }
        Command::OracleFixtures { max_order } => {
            let cfg = OracleConfig { max_order, ..OracleConfig::default() };
            for m in 1..=max_order {
                let fractions = oracle::naive_farey(m, &cfg)?;
                let rendered: Vec<String> = fractions.iter().map(|f| f.to_string()).collect();
                writeln!(out, "{}: {}", m, rendered.join(" "))?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// Differential checks of the recursion against the naive oracles. Prints a
/// summary per check; any mismatch reports the witness and fails the run.
fn selftest(max_order: u64) -> Result<ExitCode> {
    if max_order == 0 {
        return Err(FareyError::Parse("selftest needs --max-order >= 1".into()));
    }
    let cfg = OracleConfig {
        max_order: max_order.saturating_mul(2).max(OracleConfig::default().max_order),
        ..OracleConfig::default()
    };
    let mut failures = 0usize;
    let mut fail = |msg: String| {
        eprintln!("FAIL {}", msg);
        failures += 1;
    };

    let mut sweep = Sweep::to(max_order)?;
    while let Some(state) = sweep.advance()? {
        let m = state.order;
        let naive = oracle::naive_farey(m, &cfg)?;

        if state.entries.len() != naive.len() {
            fail(format!("m={}: recursion yields {} entries, oracle {}", m, state.entries.len(), naive.len()));
            continue;
        }
        for (t, want) in state.entries.iter().zip(&naive) {
            if t.fraction() != *want {
                fail(format!("m={}: fraction {} where oracle has {}", m, t.fraction(), want));
            }
        }

        for pair in state.entries.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if b.n as u128 * a.d as u128 - a.n as u128 * b.d as u128 != 1 {
                fail(format!("m={}: neighbors {}/{} and {}/{} not unimodular", m, a.n, a.d, b.n, b.d));
            }
        }

        let classic = sequence::generate_classic(m)?;
        if classic != naive {
            fail(format!("m={}: classic recursion disagrees with oracle", m));
        }

        if m >= 2 {
            let phi = totient::totient(m)?;
            if state.created.len() as u64 != phi {
                fail(format!("m={}: {} creations, totient says {}", m, state.created.len(), phi));
            }
            if state.created.iter().any(|c| c.fraction().denominator() != m) {
                fail(format!("m={}: created fraction with wrong denominator", m));
            }
        }

        let scans = oracle::naive_s_all(m, &cfg)?;
        for (t, (frac, s)) in state.entries.iter().zip(&scans) {
            if t.fraction() != *frac || t.s != *s {
                fail(format!("m={}: countdown of {} is {}, oracle scan says {}", m, t.fraction(), t.s, s));
            }
        }
    }

    if failures == 0 {
        println!("ok fraction sets match the naive enumeration for m = 1..={}", max_order);
        println!("ok neighbor pairs are unimodular for m = 1..={}", max_order);
        println!("ok classic recursion matches the oracle for m = 1..={}", max_order);
        println!("ok creation counts equal the totient for m = 2..={}", max_order);
        println!("ok countdown values match naive successor scans for m = 1..={}", max_order);
        println!("selftest passed");
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("selftest failed with {} mismatch(es)", failures);
        Ok(ExitCode::FAILURE)
    }
}
