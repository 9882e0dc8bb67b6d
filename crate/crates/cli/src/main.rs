use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mahlerkit_cli::run::EXIT_INPUT;
use mahlerkit_cli::{run_file, Mode, Options, Outcome};
use rayon::prelude::*;

/// Solve, pair and certify Mahler equations from problem files.
///
/// Exit codes: 0 success, 2 honest failure (caps exhausted, no solution,
/// inconsistent system, bound violated), 3 hypothesis violated or seed
/// inconsistent, 4 input error. With several files the largest code wins.
#[derive(Parser, Debug)]
#[command(name = "mahlerkit", version)]
struct Cli {
    /// Operation to run.
    #[arg(value_enum)]
    mode: Mode,
    /// Problem files (JSON). Several files give a JSON array of documents.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Series precision cap, overriding the file.
    #[arg(long)]
    terms: Option<usize>,
    /// Degree cap, overriding the file.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Omit the timestamp so identical inputs give identical bytes.
    #[arg(long)]
    deterministic: bool,
    /// Worker threads for several files.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the document here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let opts = Options {
        terms: cli.terms,
        max_degree: cli.max_degree,
        deterministic: cli.deterministic,
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("mahlerkit: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let outcomes: Vec<Outcome> = pool.install(|| {
        cli.files
            .par_iter()
            .map(|f| run_file(cli.mode, f, &opts))
            .collect()
    });
    let code = outcomes.iter().map(|o| o.exit_code).max().unwrap_or(0);
    let doc = match outcomes.as_slice() {
        [one] => one.document.clone(),
        many => many.iter().map(|o| o.document.clone()).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    text.push('\n');
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("mahlerkit: cannot write output: {e}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(code as u8)
}
