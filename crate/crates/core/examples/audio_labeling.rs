//! Labels frames from simulated regulator audio and compares them with the ground truth.
//!
//! Run: `cargo run --example audio_labeling`

use breathline::audio::{label_audio_traced, LabelingConfig, THRESHOLD_PRESETS};
use breathline::simulate::{generate, ScenarioConfig};

fn main() -> breathline::Result<()> {
    let scenario = generate(&ScenarioConfig::default())?;
    let truth = scenario.truth_states();
    let fps = scenario.config.fps;

    for threshold in THRESHOLD_PRESETS {
        let mut config = LabelingConfig::default();
        config.threshold.threshold = threshold;
        let trace = label_audio_traced(&scenario.audio, fps, scenario.frame_count(), &config)?;
        let agree = |labels: &[breathline::BreathState]| {
            labels.iter().zip(&truth).filter(|(a, b)| a == b).count() as f64 / truth.len() as f64
        };
        let smoothed: Vec<_> = trace.frames.iter().map(|f| f.label).collect();
        println!(
            "threshold {threshold:<6}: raw agreement {:.3}, after consistency {:.3}",
            agree(&trace.raw),
            agree(&smoothed)
        );
    }

    // Six seconds of frames: '#' exhalation, '.' inhalation; truth on the first line.
    let trace = label_audio_traced(&scenario.audio, fps, 180, &LabelingConfig::default())?;
    let strip = |labels: &mut dyn Iterator<Item = bool>| -> String {
        labels.map(|e| if e { '#' } else { '.' }).collect()
    };
    println!(
        "truth   {}",
        strip(&mut truth[..180].iter().map(|s| s.is_exhalation()))
    );
    println!(
        "labeled {}",
        strip(&mut trace.frames.iter().map(|f| f.label.is_exhalation()))
    );
    let peak = trace.statistics.iter().copied().fold(0.0, f64::max);
    println!("largest per-frame peak amplitude after filtering: {peak:.4}");
    Ok(())
}
