use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pontryagin::cli::{
    analysis_exit_code, exit_code_for, parse_problem, render_text, run_analyze, run_eval,
    run_verify, VerifySummary,
};
use pontryagin::exact::scalar::parse_scalar;
use pontryagin::Error;

#[derive(Parser)]
#[command(name = "pontryagin", version, about = "Exact operator models in indefinite inner product spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a problem file and print a report.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Evaluate the represented function at one point.
    Eval {
        file: PathBuf,
        /// Point of evaluation, e.g. "2", "1/2", "1+1i".
        #[arg(long)]
        at: String,
    },
    /// Check the file's expected values against a fresh analysis.
    Verify { file: PathBuf },
}

fn read_problem(path: &PathBuf) -> Result<pontryagin::cli::Problem, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        2u8
    })?;
    parse_problem(&text).map_err(|e| {
        eprintln!("error: {e}");
        exit_code_for(&e)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { file, output } => match read_problem(&file) {
            Err(code) => code,
            Ok(problem) => {
                let analysis = run_analyze(&problem);
                match output {
                    OutputFormat::Json => {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&analysis.report)
                                .expect("report serializes")
                        );
                    }
                    OutputFormat::Text => print!("{}", render_text(&analysis.report)),
                }
                analysis_exit_code(&analysis.report)
            }
        },
        Command::Eval { file, at } => match read_problem(&file) {
            Err(code) => code,
            Ok(problem) => match parse_scalar(&at).map_err(Error::parse) {
                Err(e) => {
                    eprintln!("error: --at: {e}");
                    2
                }
                Ok(z) => match run_eval(&problem, &z) {
                    Ok(eval) => {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&eval).expect("evaluation serializes")
                        );
                        0
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        exit_code_for(&e)
                    }
                },
            },
        },
        Command::Verify { file } => match read_problem(&file) {
            Err(code) => code,
            Ok(problem) => {
                let outcome = run_verify(&problem);
                let summary =
                    VerifySummary { matched: outcome.matched, diffs: outcome.diffs.clone() };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                );
                if outcome.matched {
                    0
                } else {
                    1
                }
            }
        },
    };
    ExitCode::from(code)
}
