use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use papm::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.options.out {
            Some(path) => std::fs::write(path, &out.text)?,
            None => std::io::stdout().write_all(out.text.as_bytes())?,
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("papm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
