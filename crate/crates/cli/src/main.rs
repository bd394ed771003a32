use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "hodgeworks", version, about = "Spectral sequences, décalage and Hodge axiom checks for filtered complexes")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Operation {
    Dec,
    #[value(name = "dec*")]
    DecDual,
    Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Mhc,
    Ahc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of the spectral pages of one filtration.
    Pages {
        input: PathBuf,
        #[arg(long)]
        filtration: Option<String>,
        /// Last page to print (default: the stable page).
        #[arg(long)]
        stage: Option<u32>,
    },
    /// Décalage, dual décalage or shift of one filtration.
    Decalage {
        input: PathBuf,
        #[arg(long)]
        filtration: Option<String>,
        #[arg(long, value_enum, default_value = "dec")]
        direction: Operation,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Mixed or absolute Hodge complex axioms of a diagram.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "mhc")]
        mode: ModeArg,
    },
    /// Ext groups of two mixed Hodge structures.
    Ext {
        source: PathBuf,
        target: PathBuf,
        #[arg(default_value_t = 1)]
        degree: u32,
    },
    /// Hom-set between two absolute Hodge complexes, per degree.
    Homset { source: PathBuf, target: PathBuf },
    /// Minimal model of an absolute Hodge complex.
    Minimal {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-validates files; with --seed, runs a generated corpus instead.
    Verify {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Directory receiving the generated corpus.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Pages { input, filtration, stage } => commands::pages(&input, filtration.as_deref(), stage),
        Command::Decalage { input, filtration, direction, output } => {
            commands::decalage(&input, filtration.as_deref(), direction, output.as_deref())
        }
        Command::Check { input, mode } => commands::check(&input, mode),
        Command::Ext { source, target, degree } => commands::ext(&source, &target, degree),
        Command::Homset { source, target } => commands::homset(&source, &target),
        Command::Minimal { input, output } => commands::minimal(&input, output.as_deref()),
        Command::Verify { inputs, seed, count, emit } => commands::verify(&inputs, seed, count, emit.as_deref()),
    };
    match result {
        Ok(out) => {
            match (&out.artifact, cli.format) {
                (Some(text), _) => print!("{text}"),
                (None, OutputFormat::Text) => print!("{}", out.report.render()),
                (None, OutputFormat::Json) => print!("{}", hodgeworks::format::to_json(&out.report)),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
