use std::io::Write;

fn main() {
    let outcome = sigmapoly::cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.exit_code);
}
