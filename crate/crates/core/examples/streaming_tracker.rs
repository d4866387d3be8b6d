//! Feeds labels one at a time into the streaming tracker and prints each emitted estimate.
//!
//! Run: `cargo run --example streaming_tracker`

use breathline::simulate::{generate, ScenarioConfig};
use breathline::tracker::{predict_respiration_rate, TrackerState};

fn main() -> breathline::Result<()> {
    let scenario = generate(&ScenarioConfig {
        duration_s: 30.0,
        period_jitter_frac: 0.1,
        seed: 5,
        ..ScenarioConfig::with_rate(15.0)
    })?;

    let mut state = TrackerState::new();
    for frame in &scenario.truth_labels {
        let (next, emitted) = state.update(*frame)?;
        state = next;
        if let Some(estimate) = emitted {
            println!(
                "t = {:>6.3} s  cycles {:>2}  rate {}",
                frame.timestamp_s,
                estimate.cycle_count,
                estimate.display_rate()
            );
        }
    }
    let batch = predict_respiration_rate(&scenario.truth_labels)?;
    println!(
        "batch estimate {} (identical: {})",
        batch.display_rate(),
        batch == state.estimate()
    );
    Ok(())
}
