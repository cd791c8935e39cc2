use std::io::Write;

fn main() {
    let profile = std::env::var(dynres_cli::PROFILE_VAR).ok();
    let outcome = dynres_cli::run(std::env::args_os(), profile.as_deref());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
