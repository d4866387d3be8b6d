//! Shared domain types: breath labels and label streams, audio tracks, rate estimates, and the
//! deterministic random source.

mod audio_track;
mod estimate;
mod labels;
pub mod rng;

pub use audio_track::{AudioTrack, DEFAULT_SAMPLE_RATE_HZ};
pub use estimate::{EstimateStatus, RespirationEstimate};
pub use labels::{
    format_timestamp, frames_from_labels, parse_labels_csv, read_labels_csv, render_labels_csv,
    save_labels_csv, states, validate_stream, write_labels_csv, BreathState, LabeledFrame,
    LABEL_CSV_HEADER,
};
pub use rng::{seeded_rng, split, DeterministicRng};

/// Default camera frame rate (frames per second).
pub const DEFAULT_FPS: f64 = 29.94;
