use clap::Parser;

use phk::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let json = cli.json;
    match execute(&cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else {
                println!("{}", out.text);
            }
            if out.failed_checks > 0 {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
