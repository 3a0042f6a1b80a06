//! Runs CLI commands in-process and prints their JSON reports without timing fields.
//!
//! `cargo run --release --example json_report -- classify --label 19a1 --n 3`

use divfield::cli::run_args;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let args = if args.is_empty() { vec!["classify".into(), "--label".into(), "11a1".into(), "--n".into(), "5".into()] } else { args };
    let out = run_args(std::iter::once("divfield".to_string()).chain(args));
    match &out.report {
        Some(r) => println!("{}", serde_json::to_string_pretty(&r.deterministic_json()).unwrap()),
        None => println!("{}", out.text),
    }
    eprintln!("exit code {}", out.exit as i32);
}
