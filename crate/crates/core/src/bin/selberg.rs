use std::io::Write;

fn main() {
    let out = selberg::cli::run_args(std::env::args_os());
    // a closed stdout (e.g. piping into `head`) is not an error worth reporting
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.status);
}
