use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hodgecalc_cli::run(std::env::args_os()))
}
