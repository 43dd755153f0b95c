mod bratteli;
mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use afrokhlin_core::lambda::DEFAULT_CUTOFF;

/// Exit status contract.
pub mod exit {
    pub const DECIDED: u8 = 0;
    pub const INPUT_ERROR: u8 = 2;
    pub const UNKNOWN: u8 = 3;
    pub const NOT_FREE: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "afrokhlin", version, about = "Classify product-type Z/2 actions on UHF algebras")]
pub struct Cli {
    /// Last factor index multiplied out exactly in tail-product bounds.
    #[arg(long, global = true, env = "AFROKHLIN_CUTOFF", default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: u64,

    /// Emit the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Print nothing on success; the exit status carries the result.
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strict/tracial Rokhlin, outerness and crossed-product verdicts.
    Classify {
        /// Fixture name (car1, car2, car3, notcar) or path to a JSON spec.
        spec: String,
    },
    /// Query a K0 class of the crossed product.
    Ktheory {
        spec: String,
        /// Class written a,b@n.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, value_enum)]
        query: Query,
    },
    /// Stage vector of an extreme or the invariant tracial state.
    Traces {
        spec: String,
        #[arg(long)]
        stage: u64,
        /// 0, 1 or inv.
        #[arg(long, value_parser = parse_extreme)]
        extreme: ExtremeArg,
        /// Also evaluate the trace on this class (a,b@n at the same stage).
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Collapse factors m+1..n into a single factor.
    Condense {
        spec: String,
        /// Range m..n.
        #[arg(long)]
        range: String,
    },
    /// Bratteli diagram of the crossed product.
    Bratteli {
        spec: String,
        #[arg(long)]
        stages: u64,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// K-theory of the torsion and no-torsion AF examples.
    Torsion {
        /// Torsion order exponent: K0 starts as Z ⊕ Z/2^m.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// r(1), r(2), … repeated periodically.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1u64])]
        r: Vec<u64>,
        /// Report the no-torsion example instead.
        #[arg(long)]
        notor: bool,
    },
    /// Rokhlin tower for a finite G-set.
    Cantor {
        gset: PathBuf,
        /// JSON list of base sets by element name; singletons by default.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Query {
    Positive,
    EqualZero,
    Flip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeArg {
    Zero,
    One,
    Invariant,
}

fn parse_extreme(s: &str) -> Result<ExtremeArg, String> {
    match s {
        "0" => Ok(ExtremeArg::Zero),
        "1" => Ok(ExtremeArg::One),
        "inv" => Ok(ExtremeArg::Invariant),
        other => Err(format!("expected 0, 1 or inv, got {other:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT_ERROR } else { exit::DECIDED };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            if !cli.quiet {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            if let Some(stdout) = &e.stdout {
                if !cli.quiet {
                    print!("{stdout}");
                }
            }
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
