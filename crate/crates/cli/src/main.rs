//! `qflag`: quantum and equivariant quantum cohomology of type-A partial
//! flag manifolds from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{run, CliError};
use crate::output::render;

#[derive(Parser, Debug)]
#[command(name = "qflag", version, about = "Quantum cohomology of partial flag manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Directory for cached Gröbner bases.
    #[arg(long, env = "QFLAG_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest ambient dimension n accepted.
    #[arg(long, default_value_t = 5, global = true)]
    pub n_limit: usize,
    /// Largest number of basis elements kept during Buchberger.
    #[arg(long, default_value_t = 10_000, global = true)]
    pub max_generators: usize,
    /// Largest number of terms in any intermediate polynomial.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    pub max_terms: usize,
    /// Residue route: auto, symbolic, socle or specialized[:seed].
    #[arg(long, default_value = "auto", global = true)]
    pub residue_method: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct FlagArgs {
    /// Dimensions 0 < n_1 < ... < n_l = n of the flag, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    /// Use the U(n)-equivariant presentation.
    #[arg(long)]
    pub equivariant: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Presentation, Gröbner basis and standard basis of a flag manifold.
    Present(FlagArgs),
    /// Quantum product of two classes.
    Multiply {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Residue pairing of two classes, or the full table.
    Pair {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long, required_unless_present = "table")]
        a: Option<String>,
        #[arg(long, required_unless_present = "table")]
        b: Option<String>,
        /// Print the pairing on the standard basis.
        #[arg(long)]
        table: bool,
    },
    /// Three-point Gromov–Witten invariant.
    Gw {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        /// Curve degree, one entry per quantum variable.
        #[arg(long, value_delimiter = ',', required = true)]
        degree: Vec<u16>,
    },
    /// Number of degree-d curves meeting the given divisors.
    CountDivisors {
        #[command(flatten)]
        flag: FlagArgs,
        /// Divisor classes; a token `xN` repeats the previous class to N copies.
        #[arg(long, num_args = 1.., required = true)]
        classes: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        degree: Vec<u16>,
    },
    /// Run the verification suite.
    Verify {
        /// Largest n included in the suite.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Substitute values for parameters or quantum variables.
    Specialize {
        #[command(flatten)]
        flag: FlagArgs,
        /// Assignment `name=value`, e.g. `c1=0` or `q[1]=0`.
        #[arg(long = "set", required = true)]
        set: Vec<String>,
    },
    /// Ring of a product of two flag manifolds.
    Product {
        #[command(flatten)]
        flag: FlagArgs,
        /// Dimensions of the second factor.
        #[arg(long = "with", value_delimiter = ',', required = true)]
        with: Vec<usize>,
    },
    /// Check the splitting of the relations at q_j = 0.
    InductionCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Quantum variable set to zero, e.g. `q1`.
        #[arg(long)]
        zero: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", render(&outcome.report, cli.global.format));
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            let code = e.exit_code();
            match cli.global.format {
                Format::Json => println!("{}", output::to_json(&e.to_json())),
                _ => eprintln!("error [{}]: {}", e.code(), e),
            }
            ExitCode::from(code)
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self.code() {
            "usage" => 2,
            "resource_cap" => 3,
            _ => 1,
        }
    }
}
