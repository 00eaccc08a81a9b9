use std::process::ExitCode;

fn main() -> ExitCode {
    multiphoton::cli::run()
}
