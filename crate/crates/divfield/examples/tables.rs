//! Recomputes the four result tables and prints a diff line per row.
//!
//! Rows whose curve is not bundled are skipped; pass a fixture file to fill them in:
//! `cargo run --release --example tables -- extra_curves.txt`

use divfield::cli::fixtures::FixtureFile;
use divfield::cli::tables::{diff_cm_table, diff_level_table, RowStatus};
use std::path::Path;

fn main() {
    let mut fixtures = FixtureFile::bundled();
    if let Some(path) = std::env::args().nth(1) {
        fixtures.merge(FixtureFile::load(Path::new(&path)).expect("readable fixture file")).expect("consistent labels");
    }
    let mut diffs = diff_cm_table();
    for table in 2..=4 {
        diffs.extend(diff_level_table(table, &fixtures));
    }
    for d in &diffs {
        println!("{}", d.line());
    }
    let count = |s: RowStatus| diffs.iter().filter(|d| d.status == s).count();
    println!(
        "\n{} agree, {} agree with erratum, {} disagree, {} skipped",
        count(RowStatus::Agree),
        count(RowStatus::AgreeWithErratum),
        count(RowStatus::Disagree),
        count(RowStatus::Skipped)
    );
}
