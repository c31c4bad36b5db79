use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(msg) = invspec_cli::configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(invspec_cli::EXIT_USAGE as u8);
    }
    let code = invspec_cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
