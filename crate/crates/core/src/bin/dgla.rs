use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dgla::workbench::{run, Cli, OutputFormat};

fn main() -> ExitCode {
    // usage errors exit 1; 2 is reserved for Unknown verdicts
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                OutputFormat::Json => format!("{}\n", report.to_json()),
                OutputFormat::Text => report.to_text(),
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
