//! Computes relative error with propagated uncertainty for the rows in `fixtures/error_table.csv`.
//!
//! Run: `cargo run --example relative_errors`

use std::path::PathBuf;

use breathline::cli::error_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/error_table.csv");
    let file = std::fs::File::open(&path)?;
    println!(
        "{:<6} {:<4} {:>9} {:>14}",
        "method", "item", "predicted", "error"
    );
    for row in error_table(file, "error_table.csv")? {
        println!(
            "{:<6} {:<4} {:>9} {:>14}",
            row.method, row.item, row.predicted, row.display
        );
    }
    Ok(())
}
