/// `println!` that returns write errors instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout().lock(), $($arg)*)?
    }};
}

mod args;
mod catalog;
mod commands;
mod reproduce;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::RingInfo(args) => commands::ring_info(cli, args),
        Command::Construct(args) => commands::construct(cli, args),
        Command::Verify(args) => commands::verify(cli, args),
        Command::Search(args) => commands::search(cli, args),
        Command::Oracle(args) => commands::oracle(cli, args),
        Command::Reproduce(args) => reproduce::reproduce(cli.json, args),
        Command::Emit(args) => commands::emit(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::EXIT_ERROR as u8)
        }
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        cause
            .downcast_ref::<std::io::Error>()
            .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
    })
}
