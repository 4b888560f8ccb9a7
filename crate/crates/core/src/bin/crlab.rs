use std::io::Write;

fn main() {
    let out = crlab::cli::run_args(std::env::args_os(), std::env::var(crlab::cli::TOL_ENV).ok());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
