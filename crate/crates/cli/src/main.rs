use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (bytes, code) = pgd_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(&bytes)
        .and_then(|()| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
