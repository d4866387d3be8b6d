//! Respiration-rate estimation from exhalation-bubble evidence.
//!
//! The crate turns synchronized audio and video frames of a scuba diver into a breathing rate:
//!
//! - [`audio`] labels frames from the regulator audio (bandpass, per-frame amplitude threshold,
//!   nearest-neighbor majority smoothing).
//! - [`detector`] labels frames from pixels: feature extraction, a linear max-margin classifier, a
//!   brightness heuristic, and ingestion of externally produced predictions.
//! - [`tracker`] finds end-of-exhalation transitions in a label stream and converts the gaps
//!   between them into breaths per minute, in batch or streaming form.
//! - [`simulate`] generates scenarios with exact ground truth for closed-loop testing.
//! - [`evaluate`] holds the evaluation arithmetic: weighted classification reports,
//!   inter-rater reliability and relative error with propagated uncertainty.
//!
//! Runnable examples for each capability live in `examples/`; the `breathline` binary wraps
//! the same pipeline as subcommands.

pub mod audio;
pub mod cli;
pub mod detector;
pub mod domain;
mod error;
pub mod evaluate;
pub mod manifest;
pub mod simulate;
pub mod tracker;

pub use domain::{
    AudioTrack, BreathState, EstimateStatus, LabeledFrame, RespirationEstimate, DEFAULT_FPS,
};
pub use error::{Error, Result};
