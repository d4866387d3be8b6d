//! Simulate -> label -> track for several breathing rates, with and without period jitter.
//!
//! Run: `cargo run --release --example closed_loop`

use breathline::audio::{label_audio, LabelingConfig};
use breathline::simulate::{generate, ScenarioConfig};
use breathline::tracker::predict_respiration_rate;

fn main() -> breathline::Result<()> {
    println!(
        "{:>6} {:>7} {:>10} {:>10}",
        "rate", "jitter", "truth", "estimate"
    );
    for jitter in [0.0, 0.1] {
        for rate in [8.0, 12.0, 16.0, 20.0, 24.0] {
            let cfg = ScenarioConfig {
                duration_s: 30.0,
                period_jitter_frac: jitter,
                seed: rate as u64,
                ..ScenarioConfig::with_rate(rate)
            };
            let scenario = generate(&cfg)?;
            let labels = label_audio(
                &scenario.audio,
                cfg.fps,
                scenario.frame_count(),
                &LabelingConfig::default(),
            )?;
            let truth = predict_respiration_rate(&scenario.truth_labels)?;
            let estimate = predict_respiration_rate(&labels)?;
            println!(
                "{rate:>6} {jitter:>7} {:>10} {:>10}",
                truth.display_rate(),
                estimate.display_rate()
            );
        }
    }
    Ok(())
}
