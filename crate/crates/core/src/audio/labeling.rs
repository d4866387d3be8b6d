use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::filter::{BandpassFilter, BandpassSpec};
use crate::domain::{AudioTrack, BreathState, LabeledFrame};
use crate::error::{Error, Result};

/// Per-window amplitude statistic compared against the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowStatistic {
    #[default]
    PeakAbs,
    Rms,
}

impl WindowStatistic {
    pub fn compute(self, window: &[f64]) -> f64 {
        match self {
            WindowStatistic::PeakAbs => window.iter().fold(0.0, |m: f64, s| m.max(s.abs())),
            WindowStatistic::Rms => {
                (window.iter().map(|s| s * s).sum::<f64>() / window.len() as f64).sqrt()
            }
        }
    }
}

/// Amplitude threshold presets observed for different collection environments.
pub const THRESHOLD_PRESETS: [f64; 3] = [0.009, 0.0125, 0.01];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSpec {
    pub threshold: f64,
    #[serde(default)]
    pub statistic: WindowStatistic,
}

impl Default for ThresholdSpec {
    fn default() -> Self {
        Self {
            threshold: 0.01,
            statistic: WindowStatistic::PeakAbs,
        }
    }
}

impl ThresholdSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "threshold must lie in (0, 1), got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencySpec {
    /// Neighbor radius in windows; 0 disables the pass.
    pub delta: usize,
}

impl Default for ConsistencySpec {
    fn default() -> Self {
        Self { delta: 6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LabelingConfig {
    #[serde(default)]
    pub bandpass: BandpassSpec,
    #[serde(default)]
    pub threshold: ThresholdSpec,
    #[serde(default)]
    pub consistency: ConsistencySpec,
}

fn window_bound(frame: usize, sample_rate_hz: u32, fps: f64) -> usize {
    (frame as f64 * sample_rate_hz as f64 / fps).round() as usize
}

/// Sample ranges belonging to each frame: window `i` is
/// `[round(i * fs / fps), round((i + 1) * fs / fps))`.
pub fn frame_windows(
    track: &AudioTrack,
    fps: f64,
    frame_count: usize,
) -> Result<Vec<Range<usize>>> {
    if !(fps.is_finite() && fps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "fps must be positive, got {fps}"
        )));
    }
    if frame_count == 0 {
        return Err(Error::InvalidInput("frame count must be positive".into()));
    }
    let fs = track.sample_rate_hz();
    let mut windows = Vec::with_capacity(frame_count);
    let mut start = 0;
    for i in 0..frame_count {
        let end = window_bound(i + 1, fs, fps);
        if end > track.len() {
            return Err(Error::InsufficientAudio {
                frame: i,
                needed: end,
                available: track.len(),
            });
        }
        windows.push(start..end);
        start = end;
    }
    Ok(windows)
}

/// Labels a window Exhalation iff its statistic strictly exceeds the threshold.
pub fn threshold_classify(
    track: &AudioTrack,
    windows: &[Range<usize>],
    spec: &ThresholdSpec,
) -> Result<Vec<BreathState>> {
    spec.validate()?;
    windows
        .iter()
        .enumerate()
        .map(|(index, w)| {
            if w.is_empty() {
                return Err(Error::InvalidWindow {
                    index,
                    reason: "window is empty".into(),
                });
            }
            let samples = track
                .samples()
                .get(w.clone())
                .ok_or_else(|| Error::InvalidWindow {
                    index,
                    reason: format!("range {w:?} exceeds track length {}", track.len()),
                })?;
            Ok(BreathState::from_bool(
                spec.statistic.compute(samples) > spec.threshold,
            ))
        })
        .collect()
}

/// Majority smoothing over `[i - delta, i + delta]`, truncated at the sequence ends. A mean of
/// exactly one half resolves to Exhalation.
pub fn nn_consistency(labels: &[BreathState], spec: &ConsistencySpec) -> Vec<BreathState> {
    let delta = spec.delta;
    if delta == 0 || labels.is_empty() {
        return labels.to_vec();
    }
    let mut prefix = Vec::with_capacity(labels.len() + 1);
    prefix.push(0usize);
    for l in labels {
        prefix.push(prefix.last().unwrap() + l.as_u8() as usize);
    }
    let last = labels.len() - 1;
    (0..labels.len())
        .map(|i| {
            let lo = i.saturating_sub(delta);
            let hi = (i + delta).min(last);
            let ones = prefix[hi + 1] - prefix[lo];
            let count = hi - lo + 1;
            BreathState::from_bool(2 * ones >= count)
        })
        .collect()
}

/// Every intermediate product of the labeling pipeline.
#[derive(Debug, Clone)]
pub struct LabelingTrace {
    pub filtered: AudioTrack,
    pub windows: Vec<Range<usize>>,
    pub statistics: Vec<f64>,
    pub raw: Vec<BreathState>,
    pub frames: Vec<LabeledFrame>,
}

pub fn label_audio_traced(
    track: &AudioTrack,
    fps: f64,
    frame_count: usize,
    config: &LabelingConfig,
) -> Result<LabelingTrace> {
    config.threshold.validate()?;
    let filter = BandpassFilter::new(config.bandpass, track.sample_rate_hz())?;
    let filtered = filter.apply_track(track)?;
    let windows = frame_windows(&filtered, fps, frame_count)?;
    let raw = threshold_classify(&filtered, &windows, &config.threshold)?;
    let statistics = windows
        .iter()
        .map(|w| {
            config
                .threshold
                .statistic
                .compute(&filtered.samples()[w.clone()])
        })
        .collect();
    let smoothed = nn_consistency(&raw, &config.consistency);
    let frames = smoothed
        .into_iter()
        .enumerate()
        .map(|(i, label)| LabeledFrame::new(i as u64, i as f64 / fps, label))
        .collect();
    Ok(LabelingTrace {
        filtered,
        windows,
        statistics,
        raw,
        frames,
    })
}

/// Bandpass, window, threshold, then smooth: one label per frame, stamped `i / fps`.
pub fn label_audio(
    track: &AudioTrack,
    fps: f64,
    frame_count: usize,
    config: &LabelingConfig,
) -> Result<Vec<LabeledFrame>> {
    label_audio_traced(track, fps, frame_count, config).map(|t| t.frames)
}

/// Number of whole frames covered by a track at `fps`.
pub fn frames_covered(track: &AudioTrack, fps: f64) -> usize {
    let mut n = (track.duration_s() * fps).floor() as usize;
    while n > 0 && window_bound(n, track.sample_rate_hz(), fps) > track.len() {
        n -= 1;
    }
    n
}
