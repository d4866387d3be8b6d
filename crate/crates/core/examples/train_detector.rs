//! Trains the linear frame detector on simulated frames and evaluates it on a fresh draw,
//! next to the brightness heuristic.
//!
//! Run: `cargo run --release --example train_detector`

use breathline::detector::{
    detect_frames, features_of, train_linear, BrightnessBaseline, TrainParams,
};
use breathline::domain::states;
use breathline::evaluate::weighted_report;
use breathline::simulate::{generate, ScenarioConfig};
use breathline::tracker::predict_respiration_rate;

fn main() -> breathline::Result<()> {
    let train = generate(
        &ScenarioConfig {
            seed: 11,
            ..ScenarioConfig::default()
        }
        .with_frame_count(2000),
    )?;
    let test = generate(
        &ScenarioConfig {
            seed: 1011,
            ..ScenarioConfig::default()
        }
        .with_frame_count(1000),
    )?;

    let samples: Vec<_> = features_of(&train.frames)
        .into_iter()
        .zip(train.truth_states())
        .collect();
    let model = train_linear(&samples, &TrainParams::with_seed(11))?;
    println!(
        "trained {} epochs, final loss {:.5}",
        model.trained_epochs,
        model.loss_history.last().copied().unwrap_or(f64::NAN)
    );

    let fps = test.config.fps;
    let learned = detect_frames(&model, &test.frames, fps)?;
    let baseline = detect_frames(&BrightnessBaseline::default(), &test.frames, fps)?;
    for (name, labels) in [("linear", &learned), ("baseline", &baseline)] {
        let report = weighted_report(&states(labels), &test.truth_states())?;
        let rate = predict_respiration_rate(labels)?;
        println!(
            "{name:<8} accuracy {:.4}  precision {:.4}  recall {:.4}  f1 {:.4}  rate {}",
            report.accuracy,
            report.precision,
            report.recall,
            report.f1,
            rate.display_rate()
        );
    }
    Ok(())
}
