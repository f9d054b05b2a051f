mod args;
mod commands;
mod schema;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use kfamily::Error;
use serde_json::json;

use args::Cli;

#[derive(Debug, Clone, Copy)]
enum Failure {
    Io,
    Validation,
    Numerical,
}

impl Failure {
    fn of(e: &Error) -> Self {
        match e {
            Error::Io(_) => Failure::Io,
            e if e.is_validation() => Failure::Validation,
            _ => Failure::Numerical,
        }
    }

    fn code(self) -> u8 {
        match self {
            Failure::Io => 1,
            Failure::Validation => 2,
            Failure::Numerical => 3,
        }
    }

    fn kind(self) -> &'static str {
        match self {
            Failure::Io => "io",
            Failure::Validation => "validation",
            Failure::Numerical => "numerical",
        }
    }
}

fn report(failure: Failure, message: &str) -> ExitCode {
    let body = json!({"error": message, "kind": failure.kind(), "exit_code": failure.code()});
    eprintln!("{body}");
    ExitCode::from(failure.code())
}

fn emit(text: &str, path: &Path) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()
    } else {
        std::fs::write(path, text)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(Failure::Validation, e.to_string().trim()),
    };

    if cli.schema {
        println!("{}", serde_json::to_string_pretty(&schema::schemas()).unwrap_or_default());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        return report(Failure::Validation, "no command given; see --help");
    };
    if let Err(e) = command.validate() {
        return report(Failure::of(&e), &e.to_string());
    }
    match commands::run(&command) {
        Ok(rendered) => match emit(&rendered.0, &command.output().output) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => report(Failure::Io, &e.to_string()),
        },
        Err(e) => report(Failure::of(&e), &e.to_string()),
    }
}
