use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let res = mdeg::cli::run(std::env::args_os());
    if !res.stdout.is_empty() {
        let _ = writeln!(std::io::stdout(), "{}", res.stdout.trim_end());
    }
    if !res.diagnostics.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", res.diagnostics.trim_end());
    }
    ExitCode::from(res.exit_code as u8)
}
