//! Frame-level breath-state detectors.
//!
//! Any binary classifier can drive the tracker. This module provides a trainable linear model
//! over [`FeatureVector`]s, a model-free brightness heuristic, and a loader for predictions
//! produced elsewhere (for example by deep networks trained outside this crate).

mod external;
mod features;
mod frame;
mod linear;

use rayon::prelude::*;

pub use external::{
    load_external_predictions, parse_predictions_jsonl, render_predictions_jsonl, Prediction,
};
pub use features::{
    extract_features, FeatureVector, EDGE_THRESHOLD, FEATURE_LEN, HISTOGRAM_BINS, TOP_DECILE,
};
pub use frame::{frame_file_name, read_frames_dir, Frame};
pub use linear::{
    predict, train_linear, train_linear_rows, LinearModel, TrainParams, LOSS_TOLERANCE,
};

use crate::domain::{BreathState, LabeledFrame};
use crate::error::Result;

/// Exhalation iff more than `fraction` of the pixels are brighter than `cutoff`.
pub fn brightness_baseline(frame: &Frame, cutoff: f64, fraction: f64) -> BreathState {
    let bright = frame.pixels().iter().filter(|&&v| v > cutoff).count();
    BreathState::from_bool(bright as f64 / frame.pixels().len() as f64 > fraction)
}

pub const BASELINE_CUTOFF: f64 = 0.6;
pub const BASELINE_FRACTION: f64 = 0.02;

/// A per-frame breath-state classifier.
pub trait Detector: Sync {
    fn detect(&self, frame: &Frame) -> Result<(BreathState, f64)>;
}

impl Detector for LinearModel {
    fn detect(&self, frame: &Frame) -> Result<(BreathState, f64)> {
        self.predict(&extract_features(frame))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrightnessBaseline {
    pub cutoff: f64,
    pub fraction: f64,
}

impl Default for BrightnessBaseline {
    fn default() -> Self {
        Self {
            cutoff: BASELINE_CUTOFF,
            fraction: BASELINE_FRACTION,
        }
    }
}

impl Detector for BrightnessBaseline {
    fn detect(&self, frame: &Frame) -> Result<(BreathState, f64)> {
        let bright = frame.pixels().iter().filter(|&&v| v > self.cutoff).count() as f64
            / frame.pixels().len() as f64;
        Ok((
            brightness_baseline(frame, self.cutoff, self.fraction),
            bright - self.fraction,
        ))
    }
}

/// Runs a detector over a frame sequence, stamping frame `i` at `i / fps`.
pub fn detect_frames<D: Detector + ?Sized>(
    detector: &D,
    frames: &[Frame],
    fps: f64,
) -> Result<Vec<LabeledFrame>> {
    frames
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            detector
                .detect(f)
                .map(|(label, _)| LabeledFrame::new(i as u64, i as f64 / fps, label))
        })
        .collect()
}

pub fn features_of(frames: &[Frame]) -> Vec<FeatureVector> {
    frames.par_iter().map(extract_features).collect()
}
