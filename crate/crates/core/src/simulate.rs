//! Ground-truth scenario generator.
//!
//! A breathing timeline with period `60 / rate_bpm` starts every cycle with an exhalation segment
//! of `(exhalation_fraction ± jitter) * period` followed by inhalation. From it the generator
//! derives per-frame truth labels, a matching audio track (Gaussian noise shaped by the state
//! envelope and limited to the respiration band) and matching grayscale frames in which
//! exhalation shows up as bright disks.

use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audio::{wav, BandpassFilter, BandpassSpec};
use crate::detector::{frame_file_name, Frame};
use crate::domain::{
    format_timestamp, render_labels_csv, split, AudioTrack, BreathState, LabeledFrame,
};
use crate::error::{Error, Result};
use crate::tracker::detect_transitions;

/// Shortest scenario accepted by [`generate`].
pub const MIN_DURATION_S: f64 = 1.0;

const BACKGROUND_MEAN: f64 = 0.3;
const BACKGROUND_STD: f64 = 0.05;
const BUBBLE_RADIUS_PX: (usize, usize) = (2, 6);

// Sub-stream ids of the scenario seed.
const STREAM_TIMELINE: u64 = 1;
const STREAM_AUDIO: u64 = 2;
const STREAM_FRAMES: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub duration_s: f64,
    pub fps: f64,
    pub sample_rate_hz: u32,
    pub rate_bpm: f64,
    pub exhalation_fraction: f64,
    pub period_jitter_frac: f64,
    pub exhale_amp: f64,
    pub background_amp: f64,
    pub bubble_brightness: f64,
    pub bubbles_per_frame: (usize, usize),
    pub frame_size: usize,
    pub label_lag_frames: usize,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            duration_s: 15.0,
            fps: crate::domain::DEFAULT_FPS,
            sample_rate_hz: crate::domain::DEFAULT_SAMPLE_RATE_HZ,
            rate_bpm: 12.0,
            exhalation_fraction: 0.56,
            period_jitter_frac: 0.0,
            exhale_amp: 0.05,
            background_amp: 0.002,
            bubble_brightness: 0.9,
            bubbles_per_frame: (5, 15),
            frame_size: 64,
            label_lag_frames: 0,
            seed: 0,
        }
    }
}

impl ScenarioConfig {
    pub fn with_rate(rate_bpm: f64) -> Self {
        Self {
            rate_bpm,
            ..Self::default()
        }
    }

    /// Sets the duration so that exactly `frames` frames are generated.
    pub fn with_frame_count(mut self, frames: usize) -> Self {
        self.duration_s = (frames as f64 + 0.5) / self.fps;
        self
    }

    pub fn period_s(&self) -> f64 {
        60.0 / self.rate_bpm
    }

    pub fn frame_count(&self) -> usize {
        (self.duration_s * self.fps).floor() as usize
    }

    pub fn sample_count(&self) -> usize {
        (self.duration_s * self.sample_rate_hz as f64).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return fail(format!("fps must be positive, got {}", self.fps));
        }
        if !(self.duration_s.is_finite() && self.duration_s >= MIN_DURATION_S) {
            return fail(format!(
                "duration_s must be at least {MIN_DURATION_S} s, got {}",
                self.duration_s
            ));
        }
        if !(self.rate_bpm.is_finite() && self.rate_bpm > 0.0) {
            return fail(format!("rate_bpm must be positive, got {}", self.rate_bpm));
        }
        if !(self.exhalation_fraction > 0.0 && self.exhalation_fraction < 1.0) {
            return fail(format!(
                "exhalation_fraction must lie in (0, 1), got {}",
                self.exhalation_fraction
            ));
        }
        if !(self.period_jitter_frac.is_finite() && self.period_jitter_frac >= 0.0) {
            return fail("period_jitter_frac must be non-negative".into());
        }
        if !(0.0 < self.background_amp
            && self.background_amp < self.exhale_amp
            && self.exhale_amp < 1.0)
        {
            return fail(format!(
                "amplitudes must satisfy 0 < background_amp ({}) < exhale_amp ({}) < 1",
                self.background_amp, self.exhale_amp
            ));
        }
        if !(self.bubble_brightness > 0.0 && self.bubble_brightness < 1.0) {
            return fail("bubble_brightness must lie in (0, 1)".into());
        }
        if self.bubbles_per_frame.0 > self.bubbles_per_frame.1 {
            return fail("bubbles_per_frame must be an increasing [min, max] pair".into());
        }
        if self.frame_size < 2 * BUBBLE_RADIUS_PX.1 {
            return fail(format!(
                "frame_size must be at least {}",
                2 * BUBBLE_RADIUS_PX.1
            ));
        }
        BandpassSpec::default()
            .validate(self.sample_rate_hz)
            .map_err(|e| Error::InvalidConfig(format!("sample_rate_hz too low: {e}")))?;
        Ok(())
    }

    pub fn from_json(text: &str, source_name: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(source_name, e.line(), e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Breathing timeline with a fixed period and per-cycle exhalation lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct Timeline {
    period_s: f64,
    exhale_s: Vec<f64>,
}

impl Timeline {
    pub fn new(config: &ScenarioConfig) -> Self {
        let period_s = config.period_s();
        let cycles = (config.duration_s / period_s).ceil() as usize + 1;
        let mut rng = split(config.seed, STREAM_TIMELINE);
        let exhale_s = (0..cycles)
            .map(|_| {
                let u: f64 = rng.random_range(-1.0..=1.0);
                let fraction =
                    (config.exhalation_fraction + config.period_jitter_frac * u).clamp(0.05, 0.95);
                fraction * period_s
            })
            .collect();
        Self { period_s, exhale_s }
    }

    pub fn state_at(&self, t: f64) -> BreathState {
        let cycle = (t / self.period_s).floor() as usize;
        let phase = t - cycle as f64 * self.period_s;
        let exhale = self.exhale_s.get(cycle).copied().unwrap_or(0.0);
        BreathState::from_bool(phase < exhale)
    }

    /// Exact end-of-exhalation instants.
    pub fn exhalation_ends(&self) -> Vec<f64> {
        self.exhale_s
            .iter()
            .enumerate()
            .map(|(k, e)| k as f64 * self.period_s + e)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub truth_labels: Vec<LabeledFrame>,
    pub truth_transition_times_s: Vec<f64>,
    pub audio: AudioTrack,
    pub frames: Vec<Frame>,
}

impl Scenario {
    pub fn truth_states(&self) -> Vec<BreathState> {
        self.truth_labels.iter().map(|f| f.label).collect()
    }

    pub fn frame_count(&self) -> usize {
        self.truth_labels.len()
    }

    /// Writes `audio.wav`, `frames/frame_NNNNNN.pgm`, `truth_labels.csv` and
    /// `truth_transitions.json` under `dir`. Returns the written paths.
    pub fn save(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let frames_dir = dir.join("frames");
        std::fs::create_dir_all(&frames_dir).map_err(|e| Error::io(&frames_dir, e))?;

        let audio = dir.join("audio.wav");
        wav::write_wav_f32(&audio, &self.audio)?;
        let labels = dir.join("truth_labels.csv");
        std::fs::write(&labels, render_labels_csv(&self.truth_labels))
            .map_err(|e| Error::io(&labels, e))?;
        let transitions = dir.join("truth_transitions.json");
        std::fs::write(&transitions, self.transitions_json())
            .map_err(|e| Error::io(&transitions, e))?;

        self.frames
            .par_iter()
            .enumerate()
            .try_for_each(|(i, f)| f.write_pgm(&frames_dir.join(frame_file_name(i))))?;
        Ok(vec![audio, frames_dir, labels, transitions])
    }

    fn transitions_json(&self) -> String {
        let times: Vec<String> = self
            .truth_transition_times_s
            .iter()
            .map(|&t| format_timestamp(t))
            .collect();
        format!(
            "{{\n  \"rate_bpm\": {},\n  \"fps\": {},\n  \"transition_times_s\": [{}]\n}}\n",
            self.config.rate_bpm,
            self.config.fps,
            times.join(", ")
        )
    }
}

/// Gain that maps unit-variance white noise to unit variance after filtering.
fn noise_gain(kernel: &[f64]) -> f64 {
    kernel.iter().map(|h| h * h).sum::<f64>().sqrt()
}

fn synthesize_audio(config: &ScenarioConfig, timeline: &Timeline) -> Result<AudioTrack> {
    let fs = config.sample_rate_hz as f64;
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut rng = split(config.seed, STREAM_AUDIO);
    let raw: Vec<f64> = (0..config.sample_count())
        .map(|n| {
            let amp = if timeline.state_at(n as f64 / fs).is_exhalation() {
                config.exhale_amp
            } else {
                config.background_amp
            };
            amp * normal.sample(&mut rng)
        })
        .collect();
    let filter = BandpassFilter::new(BandpassSpec::default(), config.sample_rate_hz)?;
    let gain = noise_gain(filter.kernel());
    let shaped = filter
        .apply(&raw)
        .into_iter()
        .map(|s| ((s / gain).clamp(-1.0, 1.0) as f32) as f64)
        .collect();
    AudioTrack::new(config.sample_rate_hz, shaped)
}

fn render_frame(config: &ScenarioConfig, index: usize, bubbles: bool) -> Frame {
    let size = config.frame_size;
    let mut rng = split(config.seed, STREAM_FRAMES + index as u64);
    let background = Normal::new(BACKGROUND_MEAN, BACKGROUND_STD).expect("valid normal");
    let mut pixels: Vec<f64> = (0..size * size)
        .map(|_| background.sample(&mut rng).clamp(0.0, 1.0))
        .collect();
    if bubbles {
        let (lo, hi) = config.bubbles_per_frame;
        let count = rng.random_range(lo..=hi);
        for _ in 0..count {
            let r = rng.random_range(BUBBLE_RADIUS_PX.0..=BUBBLE_RADIUS_PX.1) as i64;
            let cx = rng.random_range(0..size) as i64;
            let cy = rng.random_range(0..size) as i64;
            for y in (cy - r).max(0)..=(cy + r).min(size as i64 - 1) {
                for x in (cx - r).max(0)..=(cx + r).min(size as i64 - 1) {
                    if (x - cx).pow(2) + (y - cy).pow(2) <= r * r {
                        pixels[y as usize * size + x as usize] = config.bubble_brightness;
                    }
                }
            }
        }
    }
    for p in &mut pixels {
        *p = (*p * 255.0).round() / 255.0;
    }
    Frame::new(size, size, pixels).expect("rendered pixels lie in [0, 1]")
}

pub fn generate(config: &ScenarioConfig) -> Result<Scenario> {
    config.validate()?;
    let timeline = Timeline::new(config);
    let frame_count = config.frame_count();

    let truth_labels: Vec<LabeledFrame> = (0..frame_count)
        .map(|i| {
            let t = i as f64 / config.fps;
            LabeledFrame::new(i as u64, t, timeline.state_at(t))
        })
        .collect();
    let truth_transition_times_s = detect_transitions(&truth_labels)?;
    let audio = synthesize_audio(config, &timeline)?;

    let lag = config.label_lag_frames;
    let frames = (0..frame_count)
        .into_par_iter()
        .map(|i| {
            let visible = i
                .checked_sub(lag)
                .map(|j| truth_labels[j].label.is_exhalation())
                .unwrap_or(false);
            render_frame(config, i, visible)
        })
        .collect();

    Ok(Scenario {
        config: config.clone(),
        truth_labels,
        truth_transition_times_s,
        audio,
        frames,
    })
}

/// Flips each label independently with probability `flip_prob`.
pub fn inject_label_noise(
    labels: &[LabeledFrame],
    flip_prob: f64,
    seed: u64,
) -> Result<Vec<LabeledFrame>> {
    if !(0.0..=1.0).contains(&flip_prob) {
        return Err(Error::InvalidInput(format!(
            "flip probability must lie in [0, 1], got {flip_prob}"
        )));
    }
    let mut rng = split(seed, 0);
    Ok(labels
        .iter()
        .map(|f| {
            let flip = rng.random::<f64>() < flip_prob;
            LabeledFrame {
                label: if flip { f.label.flipped() } else { f.label },
                ..*f
            }
        })
        .collect())
}
