use std::io::Write;

use super_splint::cli;

fn main() {
    let threads = match cli::threads_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let code = cli::run(std::env::args_os(), threads, &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
