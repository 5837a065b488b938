use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = goss_cli::run(std::env::args_os(), &mut out);
    let _ = out.flush();
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(goss_cli::CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            if e.code() == 0 {
                println!("{e}");
            } else {
                eprintln!("{e}");
            }
            ExitCode::from(e.code())
        }
    }
}
