mod args;
mod batch;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use run::{run, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let code = match &cli.command {
        Command::Batch { file, jobs } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {file}: {e}");
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            };
            let parsed = match batch::parse_jobs(&text) {
                Ok(j) => j,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            };
            let (report, code) = batch::run_batch(&parsed, *jobs);
            let out = if cli.global.pretty {
                serde_json::to_string_pretty(&report)
            } else {
                serde_json::to_string(&report)
            };
            emit(&out.expect("json"));
            code
        }
        cmd => match run(cmd, &cli.global) {
            Ok(out) => {
                emit(out.render(cli.global.pretty).trim_end());
                out.code
            }
            Err(f) => {
                eprintln!("error: {}", f.message);
                f.code
            }
        },
    };
    ExitCode::from(code as u8)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}
