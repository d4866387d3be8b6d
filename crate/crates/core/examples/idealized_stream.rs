//! Tracks the idealized 12 breaths-per-minute label stream shipped in `fixtures/`.
//!
//! Run: `cargo run --example idealized_stream`

use std::path::PathBuf;

use breathline::domain::read_labels_csv;
use breathline::tracker::{detect_transitions, predict_respiration_rate};

fn main() -> breathline::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/idealized_12bpm.csv");
    let frames = read_labels_csv(&path)?;
    let transitions = detect_transitions(&frames)?;
    let estimate = predict_respiration_rate(&frames)?;

    println!(
        "{} frames over {:.3} s",
        frames.len(),
        frames.last().map_or(0.0, |f| f.timestamp_s)
    );
    println!("end-of-exhalation transitions at {transitions:?} s");
    println!("rate: {} bpm", estimate.display_rate());
    println!("{}", estimate.to_json());
    Ok(())
}
