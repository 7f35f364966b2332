use std::process::ExitCode;

use clap::{Parser, Subcommand};
use loewner_cli::checks::run_suite;
use loewner_cli::commands;
use loewner_cli::{json, CliError, CliResult};
use loewner_core::Tolerances;

/// Loewner-order toolkit for real symmetric matrices.
///
/// Matrix arguments are JSON documents `{"n": 2, "data": [...]}` given as
/// a file path, inline JSON, or `-` for stdin.
#[derive(Parser)]
#[command(name = "loewner", version)]
struct Cli {
    /// Relative tolerance for PSD and rank decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reference trial count for randomized checks.
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare A and B in the Loewner order.
    Order { a: String, b: String },
    /// Largest t with t·xxᵗ/|x|² ≤ A.
    Strength { a: String, x: String },
    /// Automorphisms X ↦ T(X(TᵗT - I) + I)⁻¹XTᵗ of the effect algebra.
    #[command(subcommand)]
    Phi(PhiCommand),
    /// Matrix intervals and their canonical forms.
    #[command(subcommand)]
    Interval(IntervalCommand),
    /// Run the randomized invariant suite.
    Selftest,
}

#[derive(Subcommand)]
enum PhiCommand {
    /// Image of the effect X under the automorphism generated by T.
    Apply { t: String, x: String },
    /// Generator of φ_S ∘ φ_R.
    Compose { s: String, r: String },
    /// Generator of the inverse automorphism.
    Invert { t: String },
    /// Inputs whose images `recover` needs.
    Probes { n: usize },
    /// Generator from recorded probe images.
    Recover { pairs: String },
}

#[derive(Subcommand)]
enum IntervalCommand {
    /// Canonical class of an interval.
    Classify { spec: String },
    /// Isomorphism onto the canonical representative.
    Chain { spec: String },
    /// Image of X under that isomorphism.
    Map { spec: String, x: String },
}

fn tolerances(tol: f64) -> CliResult<Tolerances> {
    let t = Tolerances {
        psd_tol: tol,
        rank_tol: tol,
        ..Tolerances::default()
    };
    t.validate().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(t)
}

fn run(cli: Cli) -> CliResult<()> {
    let tol = tolerances(cli.tol)?;
    let value = match cli.command {
        Command::Order { a, b } => commands::order(&a, &b, &tol)?,
        Command::Strength { a, x } => commands::strength_cmd(&a, &x, &tol)?,
        Command::Phi(sub) => match sub {
            PhiCommand::Apply { t, x } => commands::phi_apply(&t, &x, &tol)?,
            PhiCommand::Compose { s, r } => commands::phi_compose(&s, &r, &tol)?,
            PhiCommand::Invert { t } => commands::phi_invert(&t, &tol)?,
            PhiCommand::Probes { n } => commands::phi_probes(n)?,
            PhiCommand::Recover { pairs } => commands::phi_recover(&pairs, &tol)?,
        },
        Command::Interval(sub) => match sub {
            IntervalCommand::Classify { spec } => commands::interval_classify(&spec, &tol)?,
            IntervalCommand::Chain { spec } => commands::interval_chain(&spec, &tol)?,
            IntervalCommand::Map { spec, x } => commands::interval_map(&spec, &x, &tol)?,
        },
        Command::Selftest => {
            let checks = run_suite(cli.seed, cli.trials);
            for c in &checks {
                println!("{}", c.line());
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            println!(
                "selftest seed={} trials={}: {passed}/{} passed",
                cli.seed,
                cli.trials,
                checks.len()
            );
            if passed < checks.len() {
                return Err(CliError::Property(format!(
                    "{} of {} checks failed",
                    checks.len() - passed,
                    checks.len()
                )));
            }
            return Ok(());
        }
    };
    print!("{}", json::render(&value));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
