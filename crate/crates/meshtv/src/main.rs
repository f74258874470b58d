use clap::Parser;

use meshtv::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(lines) => {
            for (key, value) in lines {
                println!("{key}={value}");
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
