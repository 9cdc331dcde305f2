use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gradus::{
    cmd_analyze, cmd_decompose, cmd_example, cmd_grade, cmd_idempotents, cmd_units, cmd_validate,
    RunConfig,
};

/// Universal gradings, idempotents and roots of unity of orders.
///
/// ORDER is a path to an order JSON file or `example:<name>` for a built-in
/// order (see `gradus example --help`).
#[derive(Parser)]
#[command(name = "gradus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunConfig,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an order and check the ring axioms.
    Validate { order: String },
    /// Rank, reducedness, connectedness and the canonical Gram form.
    Analyze { order: String },
    /// Universal grading of a reduced order.
    Grade { order: String },
    /// Roots of unity.
    Units { order: String },
    /// Idempotents.
    Idempotents { order: String },
    /// Universal orthogonal decomposition of a Gram matrix file
    /// `{"n": k, "gram": [["decimal", ...], ...]}`.
    Decompose { gram: String },
    /// Print a built-in order as JSON: z, zc<n>, zc<n>x<m>, zsqrt<d>, zphi,
    /// zeta<p>, parity<n>, eisenstein-kummer, zeps, zxz.
    Example { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rc = &cli.run;
    let result = match &cli.command {
        Command::Validate { order } => cmd_validate(order),
        Command::Analyze { order } => cmd_analyze(order, rc),
        Command::Grade { order } => cmd_grade(order, rc),
        Command::Units { order } => cmd_units(order, rc),
        Command::Idempotents { order } => cmd_idempotents(order, rc),
        Command::Decompose { gram } => cmd_decompose(gram, rc),
        Command::Example { name } => cmd_example(name),
    };
    match result {
        Ok(report) => {
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{}", report.render(rc.format).trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
