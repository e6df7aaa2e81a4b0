use clap::Parser;
use qhfm_cli::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(err) = qhfm_cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
