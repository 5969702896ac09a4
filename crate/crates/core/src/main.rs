use std::io;
use std::process::ExitCode;

use qosc::cli;
use qosc::config::TOL_ENV_VAR;

fn main() -> ExitCode {
    let env_tol = std::env::var(TOL_ENV_VAR).ok();
    let code = cli::run(
        std::env::args_os(),
        env_tol.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
