//! `loft`: batch front end for the LO and LO1 engines.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CmdResult, Failure};
use report::{digest, RunReport};

#[derive(Parser)]
#[command(name = "loft", version, about = "Bottom-up evaluation for LO and LO1 programs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a program.
    Check { file: PathBuf },
    /// Symbolic fixpoint of an LO program.
    Saturate { file: PathBuf },
    /// Constraint-based fixpoint of an LO1 program.
    Saturate1 {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
    },
    /// Ground least fixpoint restricted to facts of bounded size.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
    /// Top-down proof search for a goal.
    Prove {
        file: PathBuf,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 32)]
        depth: usize,
    },
    /// Disjunctive logic programs.
    #[command(subcommand)]
    Dlp(DlpCommand),
    /// Petri net coverability.
    #[command(subcommand)]
    Petri(PetriCommand),
}

#[derive(Subcommand)]
enum DlpCommand {
    /// Least fixpoint of a DLP program.
    Lfp { file: PathBuf },
    /// Refute a goal by SLO-resolution.
    Refute {
        file: PathBuf,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Compare an LO program with its DLP translation.
    Compare { file: PathBuf },
}

#[derive(Subcommand)]
enum PetriCommand {
    /// Print the LO encoding of a net.
    Encode {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Backward coverability of the target markings.
    Cover {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
        #[arg(long)]
        strict: bool,
    },
    /// Bounded forward exploration from the initial marking.
    Explore {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 16)]
        max_size: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Saturate { .. } => "saturate",
            Command::Saturate1 { .. } => "saturate1",
            Command::Oracle { .. } => "oracle",
            Command::Prove { .. } => "prove",
            Command::Dlp(DlpCommand::Lfp { .. }) => "dlp lfp",
            Command::Dlp(DlpCommand::Refute { .. }) => "dlp refute",
            Command::Dlp(DlpCommand::Compare { .. }) => "dlp compare",
            Command::Petri(PetriCommand::Encode { .. }) => "petri encode",
            Command::Petri(PetriCommand::Cover { .. }) => "petri cover",
            Command::Petri(PetriCommand::Explore { .. }) => "petri explore",
        }
    }

    fn file(&self) -> &Path {
        match self {
            Command::Check { file }
            | Command::Saturate { file }
            | Command::Saturate1 { file, .. }
            | Command::Oracle { file, .. }
            | Command::Prove { file, .. }
            | Command::Dlp(DlpCommand::Lfp { file })
            | Command::Dlp(DlpCommand::Refute { file, .. })
            | Command::Dlp(DlpCommand::Compare { file })
            | Command::Petri(PetriCommand::Encode { file, .. })
            | Command::Petri(PetriCommand::Cover { file, .. })
            | Command::Petri(PetriCommand::Explore { file, .. }) => file,
        }
    }

    fn run(&self, src: &str) -> CmdResult {
        match self {
            Command::Check { .. } => commands::check(src),
            Command::Saturate { .. } => commands::saturate_lo(src),
            Command::Saturate1 { max_iters, .. } => commands::saturate_lo1(src, *max_iters),
            Command::Oracle { cap, .. } => commands::oracle(src, *cap),
            Command::Prove { goal, depth, .. } => commands::prove(src, goal, *depth),
            Command::Dlp(DlpCommand::Lfp { .. }) => commands::dlp_lfp(src),
            Command::Dlp(DlpCommand::Refute { goal, depth, .. }) => commands::dlp_refute(src, goal, *depth),
            Command::Dlp(DlpCommand::Compare { .. }) => commands::dlp_compare(src),
            Command::Petri(PetriCommand::Encode { strict, .. }) => commands::petri_encode(src, *strict),
            Command::Petri(PetriCommand::Cover { max_iters, strict, .. }) => {
                commands::petri_cover(src, *strict, *max_iters)
            }
            Command::Petri(PetriCommand::Explore { steps, max_size, .. }) => {
                commands::petri_explore(src, *steps, *max_size)
            }
        }
    }
}

fn report_failure(file: &Path, f: &Failure) {
    let origin = f.origin.map(str::to_string).unwrap_or_else(|| file.display().to_string());
    match &f.position {
        Some(pos) => eprintln!("error: {origin}:{pos}: {}", f.message),
        None => eprintln!("error: {origin}: {}", f.message),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let file = cli.command.file();
    let bytes = match std::fs::read(file) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(1);
        }
    };
    let Ok(src) = std::str::from_utf8(&bytes) else {
        eprintln!("error: {}: input is not valid UTF-8", file.display());
        return ExitCode::from(1);
    };
    let start = Instant::now();
    let outcome = match cli.command.run(src) {
        Ok(o) => o,
        Err(f) => {
            report_failure(file, &f);
            return ExitCode::from(1);
        }
    };
    let elapsed = start.elapsed().as_millis();
    match cli.format {
        Format::Json => {
            let report = RunReport {
                command: cli.command.name(),
                digest: digest(&bytes),
                status: outcome.status,
                iterations: outcome.iterations,
                result: &outcome.result,
                wall_time_ms: cli.timing.then_some(elapsed),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        Format::Text => {
            print!("{}", outcome.text);
            if cli.timing {
                println!("wall time: {elapsed} ms");
            }
        }
    }
    ExitCode::from(outcome.certainty.exit_code() as u8)
}
