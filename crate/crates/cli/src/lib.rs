//! Command-line front end for `carryset`.
//!
//! Every verb calls exactly one library operation. Results go to the output
//! stream and nothing else does, so the output can be piped; diagnostics go to
//! the error stream. Exit codes: `0` success, `1` range or internal error, `2`
//! usage or literal parse error.

use std::ffi::OsString;
use std::io::{self, Write};

use carryset::explorer::{self, Witness};
use carryset::{adder, magma, FinSet, Natural};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "carryset",
    version,
    about = "Carry-approximation algebra on finite subsets of the naturals",
    after_help = "Set literals are brace-wrapped decimal lists such as \"{3,4,5}\"; \"{}\" is the empty set."
)]
struct Cli {
    /// Emit machine-readable JSON instead of plain literals.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// A ⊕ B = (A △ B) △ ((A ∩ B) + 1)
    Oplus {
        #[arg(value_parser = parse_set)]
        a: FinSet,
        #[arg(value_parser = parse_set)]
        b: FinSet,
    },
    /// The inverse A' with A ⊕ A' = {}
    Invert {
        #[arg(value_parser = parse_set)]
        a: FinSet,
    },
    /// The unique X with A ⊕ X = B
    Solve {
        #[arg(value_parser = parse_set)]
        a: FinSet,
        #[arg(value_parser = parse_set)]
        b: FinSet,
    },
    /// Length of the run of A ending at N (0 if N is not in A)
    Stretch {
        #[arg(value_parser = parse_set)]
        a: FinSet,
        n: usize,
    },
    /// Iterates A_1 = A, A_{i+1} = A_i ⊕ A
    Orbit {
        #[arg(value_parser = parse_set)]
        a: FinSet,
        #[arg(long, default_value_t = 8)]
        iterations: usize,
    },
    /// Compare (A ⊕ B) ⊕ C with A ⊕ (B ⊕ C)
    Assoc {
        #[arg(value_parser = parse_set)]
        a: FinSet,
        #[arg(value_parser = parse_set)]
        b: FinSet,
        #[arg(value_parser = parse_set)]
        c: FinSet,
    },
    /// Test every triple of subsets of [0, bound) for associativity
    ScanAssoc {
        #[arg(long)]
        bound: usize,
        /// Worker threads, 0 for all cores; never changes the output
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Classify every candidate sub-group of P([0, bound)), as JSON lines
    SearchSubgroups {
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        max_size: usize,
        /// Worker threads, 0 for all cores; never changes the output
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Exactness statistics of the one-round adder over WIDTH-bit operands, as JSON
    AdderStats { width: u32 },
    /// Σ 2^n over the elements of A
    Encode {
        #[arg(value_parser = parse_set)]
        a: FinSet,
    },
    /// The set of bit positions of a natural number
    Decode {
        #[arg(value_parser = parse_natural)]
        m: Natural,
    },
}

fn parse_set(s: &str) -> Result<FinSet, String> {
    FinSet::parse(s).map_err(|e| e.to_string())
}

fn parse_natural(s: &str) -> Result<Natural, String> {
    s.parse::<Natural>()
        .map_err(|_| format!("`{s}` is not a non-negative decimal integer"))
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Run with captured output.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}

/// Run, writing the payload to `out` and diagnostics to `err`. `argv[0]` is
/// the program name.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

enum Failure {
    Domain(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct SetResult<'a> {
    result: &'a FinSet,
}

fn emit_set(out: &mut dyn Write, json: bool, set: &FinSet) -> Result<(), Failure> {
    if json {
        json_line(out, &SetResult { result: set })
    } else {
        writeln!(out, "{set}")?;
        Ok(())
    }
}

fn describe(w: &Witness) -> String {
    format!(
        "({a} ⊕ {b}) ⊕ {c} = {l} but {a} ⊕ ({b} ⊕ {c}) = {r}",
        a = w.a,
        b = w.b,
        c = w.c,
        l = w.left,
        r = w.right
    )
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Oplus { a, b } => emit_set(out, json, &magma::oplus(&a, &b)),
        Command::Invert { a } => emit_set(out, json, &magma::invert(&a)),
        Command::Solve { a, b } => {
            let x = magma::solve_checked(&a, &b).map_err(domain)?;
            emit_set(out, json, &x)
        }
        Command::Stretch { a, n } => {
            let s = magma::stretch(&a, n).get();
            if json {
                json_line(out, &serde_json::json!({ "stretch": s }))
            } else {
                writeln!(out, "{s}")?;
                Ok(())
            }
        }
        Command::Orbit { a, iterations } => {
            let sets = explorer::orbit(&a, iterations);
            if json {
                json_line(out, &serde_json::json!({ "orbit": sets }))
            } else {
                for s in &sets {
                    writeln!(out, "{s}")?;
                }
                Ok(())
            }
        }
        Command::Assoc { a, b, c } => {
            let w = explorer::assoc_witness(&a, &b, &c);
            if json {
                json_line(out, &serde_json::json!({ "witness": w }))
            } else {
                match w {
                    Some(w) => writeln!(out, "non-associative: {}", describe(&w))?,
                    None => writeln!(out, "associative")?,
                }
                Ok(())
            }
        }
        Command::ScanAssoc { bound, workers } => {
            let scan = explorer::scan_associativity_with_workers(bound, workers.unwrap_or(0))
                .map_err(domain)?;
            if json {
                json_line(out, &scan)
            } else {
                writeln!(
                    out,
                    "bound={} total_triples={} failing_triples={}",
                    scan.bound, scan.total_triples, scan.failing_triples
                )?;
                match &scan.first_witness {
                    Some(w) => writeln!(out, "first_witness: {}", describe(w))?,
                    None => writeln!(out, "first_witness: none")?,
                }
                Ok(())
            }
        }
        Command::SearchSubgroups {
            bound,
            max_size,
            workers,
        } => {
            let mut io_error = None;
            let summary = explorer::visit_closed_subsets_with_workers(
                bound,
                max_size,
                workers.unwrap_or(0),
                |report| {
                    if io_error.is_none() {
                        if let Err(e) = serde_json::to_writer(&mut *out, &report)
                            .map_err(io::Error::from)
                            .and_then(|()| writeln!(out))
                        {
                            io_error = Some(e);
                        }
                    }
                },
            )
            .map_err(domain)?;
            if let Some(e) = io_error {
                return Err(Failure::Io(e));
            }
            json_line(out, &serde_json::json!({ "summary": summary }))
        }
        Command::AdderStats { width } => {
            let stats = adder::approx_stats(width).map_err(domain)?;
            json_line(out, &stats)
        }
        Command::Encode { a } => {
            let m = a.encode();
            // Written by hand: the value may exceed every JSON number type serde knows.
            if json {
                writeln!(out, "{{\"value\":{m}}}")?;
            } else {
                writeln!(out, "{m}")?;
            }
            Ok(())
        }
        Command::Decode { m } => emit_set(out, json, &FinSet::decode(&m)),
    }
}
