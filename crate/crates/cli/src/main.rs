use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayleigh_cli::commands::{self, Outcome, SchemeArg, SumMethod};

#[derive(Parser)]
#[command(name = "rayleigh", version, about = "Spectrum, exact Rayleigh sums and eigenvalue bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues λ_0..λ_{count-1} with family tags and boundary residuals.
    Spectrum {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        count: u32,
    },
    /// Power sums A_1..A_{max-p}.
    Sums {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        max_p: u32,
        #[arg(long, value_enum, default_value_t = SumMethod::Recursion)]
        method: SumMethod,
        /// Terms per family for the direct sums.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u32).range(1..))]
        terms: u32,
        /// Grid size for the Nyström traces.
        #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(16..))]
        nodes: u32,
    },
    /// Euler–Rayleigh enclosures of λ_0 for m = 1..m-max.
    Bounds {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        m_max: u32,
        #[arg(long, value_enum, default_value_t = SchemeArg::Both)]
        scheme: SchemeArg,
    },
    /// Power sums of the unit-disk spectrum for ℓ = 2..max-l.
    Disk {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..))]
        max_l: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Runs the full cross-validation suite.
    Verify {
        #[arg(long, default_value_t = 0.0, hide = true, allow_negative_numbers = true)]
        perturb_alpha: f64,
    },
}

fn run(command: &Command) -> rayleigh_core::Result<Outcome> {
    match *command {
        Command::Spectrum { count } => commands::spectrum(count as usize),
        Command::Sums { max_p, method, terms, nodes } => {
            commands::sums(max_p as usize, method, terms as usize, nodes as usize)
        }
        Command::Bounds { m_max, scheme } => commands::bounds(m_max as usize, scheme),
        Command::Disk { max_l, tol } => commands::disk(max_l as usize, tol),
        Command::Verify { perturb_alpha } => commands::verify(perturb_alpha),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Table => outcome.record.to_table(),
                Format::Json => outcome.record.to_json() + "\n",
                Format::Csv => outcome.record.to_csv(),
            };
            print!("{text}");
            for reason in &outcome.failures {
                eprintln!("failed: {reason}");
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
