use clap::Parser;
use graphon_cli::commands::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(summary) => {
            if !cli.quiet {
                eprintln!("{}", summary.message);
                for f in &summary.files {
                    println!("{}", summary.out_dir.join(f).display());
                }
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            std::process::exit(e.exit_code());
        }
    }
}
