use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use iwalab::commands::{self, CompareOptions, FeOptions, Outcome};
use iwalab::files;
use iwalab::InputError;

/// Finite-precision computations over Zp[[T]].
#[derive(Parser)]
#[command(name = "iwalab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weierstrass preparation of a series, e.g. `prep "T^3 + 4*T^2 + 4*T + 3" p=3 N=4 M=8`.
    Prep {
        expr: String,
        /// `p=… N=… M=…`
        #[arg(required = true, num_args = 3)]
        precision: Vec<String>,
    },
    /// Iwasawa invariants of a module file.
    Invariants { file: PathBuf },
    /// Size and structure of (M/p^m)_{Γ_n}.
    Coinv { file: PathBuf, m: u32, n: u32 },
    /// Check the comparison hypotheses and conclusion for two modules.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 3)]
        power_max: u32,
        /// Extra polynomials for the corank test; repeatable.
        #[arg(long = "f")]
        polys: Vec<String>,
    },
    /// Perfect-pairing computations.
    Pairing {
        #[command(subcommand)]
        command: PairingCommand,
    },
    /// Run the functional-equation checker on a datum file.
    FeCheck {
        datum: PathBuf,
        #[arg(long = "f", default_value = "T")]
        f: String,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        /// Print the verdict as JSON instead of the text report.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum PairingCommand {
    /// Exact annihilator of the subgroup generated by `generators`.
    Annihilate { file: PathBuf },
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    match cli.command {
        Command::Prep { expr, precision } => commands::prep(&expr, &precision),
        Command::Invariants { file } => Ok(commands::invariants_report(&files::load_module(&file)?)),
        Command::Coinv { file, m, n } => commands::coinv_report(&files::load_module(&file)?, m, n),
        Command::Compare { a, b, m_max, n_max, power_max, polys } => {
            let opts = CompareOptions { m_max, n_max, power_max, extra_polys: polys };
            commands::compare(&files::load_module(&a)?, &files::load_module(&b)?, &opts)
        }
        Command::Pairing { command: PairingCommand::Annihilate { file } } => {
            let (pair, c) = files::load_pairing(&file)?;
            commands::annihilate(&pair, &c)
        }
        Command::FeCheck { datum, f, m_max, n_max, json } => {
            let (verdict, outcome) = commands::fe_check_file(&datum, &FeOptions { f, m_max, n_max })?;
            if json {
                let text = serde_json::to_string_pretty(&verdict).expect("verdict serializes") + "\n";
                Ok(Outcome { text, pass: outcome.pass })
            } else {
                Ok(outcome)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
