use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

/// Exact Hermitian lattice computations over Z[i]: fixed lattices of
/// anti-involutions, Vinberg diagrams, mod-2 invariants, stabilizers and the
/// cusp cone.
#[derive(Parser, Debug)]
#[command(name = "octica", version, about)]
pub struct Cli {
    /// Reference data file (defaults to the bundled copy)
    #[arg(long, global = true, value_name = "PATH")]
    pub data: Option<PathBuf>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for enumeration and the report runner
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect the stored lattices
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Compute Fix(Λ, χ_i) and verify the stored basis B_i against L_i
    Fix {
        #[arg(long, value_name = "0..4")]
        chi: String,
    },
    /// Run Vinberg's algorithm and print the fundamental roots
    Vinberg {
        /// L0..L4, or a JSON file holding an integer Gram matrix
        #[arg(long)]
        lattice: String,
        /// volume, expected:<k> or height:<h>
        #[arg(long, default_value = "volume")]
        stop: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Render the Coxeter diagram of a lattice
    Diagram {
        #[arg(long)]
        lattice: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Print the stored reference diagram instead of computing one
        #[arg(long)]
        reference: bool,
    },
    /// Mod-2 involution φ_i and its invariants
    Mod2 {
        #[arg(long, value_name = "0..4")]
        chi: String,
    },
    /// Invariants of Φ(τ) for involutions τ of S8, from cycle types
    S8Table,
    /// Search for a type-II stabilizer element of χ_i
    Type2 {
        #[arg(long, value_name = "0..4")]
        chi: String,
    },
    /// Cone angle of the cusp, glued from the two wedge quotients
    ConeAngle,
    /// Run every reproduction check and print the report
    VerifyAll {
        /// Restrict to check groups (names or numbers 1..9), comma separated
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Zero all runtimes so reruns are byte-identical
        #[arg(long)]
        no_timings: bool,
    },
    /// Print the manual page (roff)
    Man,
}

#[derive(Subcommand, Debug)]
pub enum LatticeAction {
    /// Gram matrix, rank and signature of lambda, lz or L0..L4
    Show {
        #[arg(default_value = "lambda")]
        name: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Ascii,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Man = cli.command {
        let mut buf = Vec::new();
        if clap_mangen::Man::new(Cli::command())
            .render(&mut buf)
            .is_err()
        {
            return ExitCode::from(3);
        }
        let _ = std::io::stdout().write_all(&buf);
        return ExitCode::SUCCESS;
    }
    let result = std::panic::catch_unwind(|| commands::run(&cli));
    match result {
        Ok(Ok(out)) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Ok(Err(Failure { code, message })) => {
            eprintln!("octica: {message}");
            ExitCode::from(code)
        }
        Err(_) => ExitCode::from(3),
    }
}
