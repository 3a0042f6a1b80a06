use clap::Parser;
use divfield::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    print!("{}", out.stdout(cli.json));
    if let Some(e) = &out.error {
        eprintln!("error: {e}");
    }
    std::process::exit(out.exit.code());
}
