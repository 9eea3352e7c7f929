use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = chronoplan::cli::run(std::env::args_os());
    let mut stream: Box<dyn Write> = if outcome.code == chronoplan::cli::EXIT_USAGE {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    let _ = stream.write_all(outcome.output.as_bytes());
    ExitCode::from(outcome.code as u8)
}
