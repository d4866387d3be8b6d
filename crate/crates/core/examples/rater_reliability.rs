//! Inter-rater reliability for a small panel of manual respiration counts.
//!
//! Run: `cargo run --example rater_reliability`

use breathline::cli::reliability_report;
use breathline::evaluate::RaterMatrix;

fn main() -> breathline::Result<()> {
    // One row per rater, one column per clip; a blank cell is a missing count.
    let csv = "\
clip1,clip2,clip3,clip4,clip5,clip6
20,17,13,24,19,8
20,17,12,24,21,8
20,16,14,24,17,8
20,18,,24,19,8
20,17,16,23,19,8
20,17,10,24,20,8
21,17,13,24,18,8
19,17,13,25,19,8
";
    let ratings = RaterMatrix::parse_csv(csv.as_bytes(), "panel")?;
    let report = reliability_report(&ratings)?;
    for (i, item) in report.items.iter().enumerate() {
        println!(
            "{item}: {:.1} ± {:.1} bpm, agreement {:.1}%",
            report.mean_rate[i],
            report.std_rate[i],
            100.0 * report.percent_agreement[i]
        );
    }
    match report.krippendorff_alpha {
        Some(alpha) => println!("Krippendorff's alpha (interval): {alpha:.4}"),
        None => println!("alpha undefined: {}", report.alpha_note.unwrap_or_default()),
    }
    Ok(())
}
