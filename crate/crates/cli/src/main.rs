mod builtin;
mod names;
mod render;
mod run;
mod scenario;

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

/// Exact invariants and bicanonical-map verdicts for surfaces with p_g = 0.
#[derive(Parser)]
#[command(name = "bicanon", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a bundled scenario by name.
    Run {
        /// Path to a JSON scenario, or the name of a bundled one.
        scenario: String,
        /// Print the machine-readable report instead of the text report.
        #[arg(long)]
        json: bool,
        /// Include per-relation checks, full eigentables and reasons.
        #[arg(long, short)]
        verbose: bool,
    },
    /// List the bundled scenarios.
    ListBuiltin,
}

fn load(arg: &str) -> Result<(String, String)> {
    let path = Path::new(arg);
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg).to_string();
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {arg}"))?;
        return Ok((text, stem));
    }
    builtin::lookup(arg)
        .or_else(|| builtin::lookup(&stem))
        .map(|text| (text.to_string(), stem))
        .ok_or_else(|| anyhow!("{arg} is neither a readable file nor a bundled scenario (see `bicanon list-builtin`)"))
}

fn run(arg: &str, json: bool, verbose: bool) -> Result<String> {
    let (text, fallback) = load(arg)?;
    let scenario = scenario::parse(&text, &fallback).with_context(|| format!("in scenario {arg}"))?;
    let output = run::execute(scenario)?;
    if json {
        let value = serde_json::to_value(&output)?;
        Ok(serde_json::to_string_pretty(&value)? + "\n")
    } else {
        Ok(render::render(&output, verbose))
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let inconsistent = err.chain().any(|e| {
        e.downcast_ref::<bicanon::Error>()
            .is_some_and(bicanon::Error::is_inconsistency)
    });
    if inconsistent {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListBuiltin => {
            for (name, _) in builtin::BUILTINS {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            scenario,
            json,
            verbose,
        } => match run(&scenario, json, verbose) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(exit_code(&e))
            }
        },
    }
}
