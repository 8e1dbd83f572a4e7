use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = carryset_cli::run_with(std::env::args_os(), &mut out, &mut stderr.lock());
    let flushed = out.flush();
    match (code, flushed) {
        (0, Err(_)) => ExitCode::from(1),
        (c, _) => ExitCode::from(c),
    }
}
