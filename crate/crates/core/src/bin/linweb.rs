use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use linweb::families::{survey, Family, FamilySpec};
use linweb::input::read_matrix_file;
use linweb::report::{analyze, verify_reference};
use linweb::web::{closed_form, LinearWeb};

/// Exact analysis of linear webs W(2n, n, 2).
#[derive(Parser)]
#[command(name = "linweb", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for surveys (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of the web given by a matrix file.
    Analyze { file: PathBuf },
    /// Reproduce the three example webs and report literal mismatches.
    VerifyPaper,
    /// Seeded statistics over a random family of webs.
    Survey {
        #[arg(long, default_value = "generic")]
        family: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entries are drawn from -bound..=bound.
        #[arg(long, default_value_t = 9)]
        bound: i64,
    },
    /// Closed-form equations of the web given by a matrix file.
    ClosedForm { file: PathBuf },
}

enum Failure {
    Input(String),
    Internal(String),
}

fn emit<T: Serialize + std::fmt::Display>(
    value: &T,
    json: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let text = if json {
        let mut s = serde_json::to_string_pretty(value)
            .map_err(|e| Failure::Internal(format!("serialization failed: {e}")))?;
        s.push('\n');
        s
    } else {
        value.to_string()
    };
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_web(file: &Path) -> Result<LinearWeb, Failure> {
    let a = read_matrix_file(file).map_err(|e| Failure::Input(e.to_string()))?;
    LinearWeb::new(a).map_err(|e| Failure::Input(e.to_string()))
}

/// Plain text rendering wrapper so closed forms print one equation per line.
#[derive(Serialize)]
#[serde(transparent)]
struct Equations(linweb::web::ClosedFormEquations);

impl std::fmt::Display for Equations {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0.render_text())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Analyze { file } => {
            let web = load_web(&file)?;
            let bundle = analyze(web.a()).map_err(|e| Failure::Input(e.to_string()))?;
            emit(&bundle, cli.json, out)
        }
        Command::VerifyPaper => {
            let report = verify_reference();
            emit(&report, cli.json, out)?;
            if report.derived_ok {
                Ok(())
            } else {
                Err(Failure::Internal("derived checks failed".into()))
            }
        }
        Command::Survey {
            family,
            n,
            count,
            seed,
            bound,
        } => {
            let family: Family = family
                .parse()
                .map_err(|e: linweb::families::FamilyError| Failure::Input(e.to_string()))?;
            let spec =
                FamilySpec::new(family, n, bound).map_err(|e| Failure::Input(e.to_string()))?;
            if count == 0 {
                return Err(Failure::Input("--count must be positive".into()));
            }
            if cli.jobs == Some(0) {
                return Err(Failure::Input("--jobs must be positive".into()));
            }
            let stats = survey(&spec, count, seed, cli.jobs)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            emit(&stats, cli.json, out)
        }
        Command::ClosedForm { file } => {
            let web = load_web(&file)?;
            emit(&Equations(closed_form(&web)), cli.json, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(1),
    }
}
