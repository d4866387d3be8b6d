//! Audio-driven fuzzy labeling: bandpass the track, cut it into per-frame windows, threshold
//! each window's amplitude, then smooth the labels with a nearest-neighbor majority pass.

mod filter;
mod labeling;
pub mod wav;

pub use filter::{
    bandpass_filter, design_kernel, magnitude_response, BandpassFilter, BandpassSpec, DEFAULT_TAPS,
};
pub use labeling::{
    frame_windows, frames_covered, label_audio, label_audio_traced, nn_consistency,
    threshold_classify, ConsistencySpec, LabelingConfig, LabelingTrace, ThresholdSpec,
    WindowStatistic, THRESHOLD_PRESETS,
};
