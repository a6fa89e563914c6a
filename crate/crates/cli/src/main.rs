use clap::Parser;

use deloop_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.rendered(cli.format));
            if cli.format == deloop_cli::Format::Structured {
                println!();
            }
            std::process::exit(outcome.exit_code());
        }
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(2);
        }
    }
}
