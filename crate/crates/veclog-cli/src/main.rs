//! `veclog` — matrix-vector propositional calculus from the command line.

mod commands;
mod output;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use commands::Settings;
use output::{DocumentParts, Outcome, EXIT_USAGE};
use serde_json::json;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "veclog",
    version,
    about = "Matrix-vector propositional calculus: parse, evaluate, differentiate, integrate",
    after_help = "Formulas use ! & | ^ -> <-> with !& (nand) and !| (nor); constants 1/0 or \
                  true/false; variables [a-z][a-z0-9_]*. Pass '-' as the formula to read it \
                  from stdin. Exit codes: 0 ok, 1 usage error, 2 evaluation or verification \
                  failure."
)]
struct Cli {
    /// Emit a machine-readable JSON document on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Tolerance for numeric verification checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Step for probabilistic grid scans, in (0, 0.25]
    #[arg(long, global = true, default_value_t = 0.25)]
    grid_step: f64,

    /// Seed for randomized operations (reserved; every command is deterministic)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Variable cap for truth-table enumeration
    #[arg(long, global = true, default_value_t = 20)]
    max_vars: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and echo it in infix and Polish notation
    Parse { formula: String },
    /// Print the exhaustive truth table
    Table { formula: String },
    /// Evaluate the scalar projection under an assignment
    Eval {
        formula: String,
        /// Weights, e.g. p=0.3 q=true
        #[arg(value_name = "NAME=WEIGHT")]
        assignments: Vec<String>,
    },
    /// Boolean derivative; add an assignment for the numeric value
    Diff {
        formula: String,
        variable: String,
        /// Differentiation order (2 uses the successive-derivative weight map)
        #[arg(long, default_value_t = 1)]
        order: u8,
        /// Mixed second derivative with this second variable
        #[arg(long, value_name = "VAR2")]
        cross: Option<String>,
        #[arg(value_name = "NAME=WEIGHT")]
        assignments: Vec<String>,
    },
    /// Boolean integral: one of the four general forms, or a template search
    Integrate {
        formula: String,
        /// Fresh integration variable
        tau: String,
        /// General integral version (1-4); the default mode with version 1
        #[arg(long, value_name = "VERSION")]
        general: Option<u8>,
        /// Search for particular integrals with the built-in template library
        #[arg(long)]
        particular: bool,
        /// Cap on the number of particular integrals returned
        #[arg(long, default_value_t = 8)]
        max_results: usize,
    },
    /// Verify the tautology hierarchy HS -> MP -> EM -> 1
    Hierarchy,
    /// Per-variable derivative report with sensitivity classification
    Sensitivity { formula: String },
    /// Decide whether a formula is a tautology
    Tautology { formula: String },
}

fn read_formula_arg(arg: &str) -> String {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .expect("read stdin");
        buf.trim().to_string()
    } else {
        arg.to_string()
    }
}

fn dispatch(cli: &Cli, settings: &Settings) -> Outcome {
    match &cli.command {
        Command::Parse { formula } => {
            let text = read_formula_arg(formula);
            let parts = DocumentParts {
                command: "parse",
                input: json!({ "formula": text }),
                settings: settings.echo(),
            };
            commands::cmd_parse(&parts, &text)
        }
        Command::Table { formula } => {
            let text = read_formula_arg(formula);
            let parts = DocumentParts {
                command: "table",
                input: json!({ "formula": text }),
                settings: settings.echo(),
            };
            commands::cmd_table(&parts, settings, &text)
        }
        Command::Eval {
            formula,
            assignments,
        } => {
            let text = read_formula_arg(formula);
            let parts = DocumentParts {
                command: "eval",
                input: json!({ "assignments": assignments, "formula": text }),
                settings: settings.echo(),
            };
            commands::cmd_eval(&parts, &text, assignments)
        }
        Command::Diff {
            formula,
            variable,
            order,
            cross,
            assignments,
        } => {
            let text = read_formula_arg(formula);
            let parts = DocumentParts {
                command: "diff",
                input: json!({
                    "assignments": assignments,
                    "cross": cross,
                    "formula": text,
                    "order": order,
                    "variable": variable,
                }),
                settings: settings.echo(),
            };
            commands::cmd_diff(&parts, &text, variable, *order, cross.as_deref(), assignments)
        }
        Command::Integrate {
            formula,
            tau,
            general,
            particular,
            max_results,
        } => {
            let text = read_formula_arg(formula);
            let parts = DocumentParts {
                command: "integrate",
                input: json!({
                    "formula": text,
                    "general": general,
                    "max_results": max_results,
                    "particular": particular,
                    "tau": tau,
                }),
                settings: settings.echo(),
            };
            commands::cmd_integrate(
                &parts,
                settings,
                &text,
                tau,
                *general,
                *particular,
                *max_results,
            )
        }
        Command::Hierarchy => {
            let parts = DocumentParts {
                command: "hierarchy",
                input: json!({}),
                settings: settings.echo(),
            };
            commands::cmd_hierarchy(&parts)
        }
        Command::Sensitivity { formula } => {
            let text = read_formula_arg(formula);
            let parts = DocumentParts {
                command: "sensitivity",
                input: json!({ "formula": text }),
                settings: settings.echo(),
            };
            commands::cmd_sensitivity(&parts, settings, &text)
        }
        Command::Tautology { formula } => {
            let text = read_formula_arg(formula);
            let parts = DocumentParts {
                command: "tautology",
                input: json!({ "formula": text }),
                settings: settings.echo(),
            };
            commands::cmd_tautology(&parts, settings, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    let settings = Settings {
        tol: cli.tol,
        grid_step: cli.grid_step,
        seed: cli.seed,
        max_vars: cli.max_vars,
    };
    let outcome = if settings.grid_step > 0.0 && settings.grid_step <= 0.25 {
        dispatch(&cli, &settings)
    } else {
        let parts = DocumentParts {
            command: "(invalid)",
            input: json!({}),
            settings: settings.echo(),
        };
        parts.error(output::CliError::usage(format!(
            "--grid-step must be in (0, 0.25], got {}",
            settings.grid_step
        )))
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome.document).expect("serialize document")
        );
    } else if outcome.exit == 0 {
        println!("{}", outcome.text);
    } else {
        eprintln!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit as u8)
}
