//! End-of-exhalation transition tracking and rate estimation.
//!
//! A transition is recorded whenever an Inhalation frame follows an Exhalation frame, stamped with
//! the time of the last Exhalation frame. With `N >= 2` transitions the rate is the mean of the
//! instantaneous rates `60 / (t_j - t_{j-1})` over the `N - 1` gaps.

use crate::domain::{BreathState, EstimateStatus, LabeledFrame, RespirationEstimate};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrackerOptions {
    /// Transitions closer than this to the previously accepted one are ignored. `None` (the
    /// default) keeps every transition.
    pub min_gap_s: Option<f64>,
}

/// Times of every Exhalation -> Inhalation transition, stamped at the last Exhalation frame.
pub fn detect_transitions(stream: &[LabeledFrame]) -> Result<Vec<f64>> {
    detect_transitions_with(stream, &TrackerOptions::default())
}

pub fn detect_transitions_with(
    stream: &[LabeledFrame],
    options: &TrackerOptions,
) -> Result<Vec<f64>> {
    crate::domain::validate_stream(stream)?;
    let mut times: Vec<f64> = Vec::new();
    for pair in stream.windows(2) {
        if pair[0].label == BreathState::Exhalation && pair[1].label == BreathState::Inhalation {
            push_transition(&mut times, pair[0].timestamp_s, options);
        }
    }
    Ok(times)
}

fn push_transition(times: &mut Vec<f64>, t: f64, options: &TrackerOptions) -> bool {
    if let (Some(min_gap), Some(&last)) = (options.min_gap_s, times.last()) {
        if t - last < min_gap {
            return false;
        }
    }
    times.push(t);
    true
}

/// Converts transition times into a rate estimate.
///
/// `std_bpm` is the sample standard deviation of the per-cycle rates and is exactly zero for a
/// single cycle.
pub fn estimate_rate(transition_times_s: &[f64]) -> Result<RespirationEstimate> {
    if let Some(bad) = transition_times_s.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "transition time {bad} is not finite"
        )));
    }
    if let Some(pair) = transition_times_s.windows(2).find(|p| p[1] <= p[0]) {
        return Err(Error::InvalidInput(format!(
            "transition times must be strictly increasing ({} then {})",
            pair[0], pair[1]
        )));
    }
    let n = transition_times_s.len();
    if n < 2 {
        return Ok(RespirationEstimate::no_estimate(
            transition_times_s.to_vec(),
        ));
    }

    let cycle_rates: Vec<f64> = transition_times_s
        .windows(2)
        .map(|p| 60.0 / (p[1] - p[0]))
        .collect();
    let cycles = cycle_rates.len();
    let rate = cycle_rates.iter().sum::<f64>() / cycles as f64;
    let std = if cycles == 1 {
        0.0
    } else {
        let ss: f64 = cycle_rates.iter().map(|r| (r - rate).powi(2)).sum();
        (ss / (cycles - 1) as f64).sqrt()
    };

    Ok(RespirationEstimate {
        rate_bpm: Some(rate),
        std_bpm: Some(std),
        cycle_count: cycles,
        transition_times_s: transition_times_s.to_vec(),
        status: EstimateStatus::Ok,
    })
}

pub fn predict_respiration_rate(stream: &[LabeledFrame]) -> Result<RespirationEstimate> {
    estimate_rate(&detect_transitions(stream)?)
}

pub fn predict_respiration_rate_with(
    stream: &[LabeledFrame],
    options: &TrackerOptions,
) -> Result<RespirationEstimate> {
    estimate_rate(&detect_transitions_with(stream, options)?)
}

/// Online form of the tracker. Updating returns a new state; the old one is left untouched.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrackerState {
    previous: Option<LabeledFrame>,
    transition_times_s: Vec<f64>,
    frames_seen: u64,
    options: TrackerOptions,
}

impl TrackerState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_options(options: TrackerOptions) -> Self {
        Self {
            options,
            ..Self::default()
        }
    }

    pub fn previous_label(&self) -> Option<BreathState> {
        self.previous.map(|f| f.label)
    }

    pub fn transition_times_s(&self) -> &[f64] {
        &self.transition_times_s
    }

    pub fn frames_seen(&self) -> u64 {
        self.frames_seen
    }

    /// Current estimate over everything consumed so far.
    pub fn estimate(&self) -> RespirationEstimate {
        estimate_rate(&self.transition_times_s).expect("transitions are strictly increasing")
    }

    /// Consumes one frame. Emits an estimate exactly when the frame completes a new transition and
    /// at least two transitions have been seen.
    pub fn update(
        &self,
        frame: LabeledFrame,
    ) -> Result<(TrackerState, Option<RespirationEstimate>)> {
        if !frame.timestamp_s.is_finite() || frame.timestamp_s < 0.0 {
            return Err(Error::InvalidInput(format!(
                "frame {} has invalid timestamp {}",
                frame.index, frame.timestamp_s
            )));
        }
        if let Some(prev) = self.previous {
            if frame.timestamp_s <= prev.timestamp_s || frame.index <= prev.index {
                return Err(Error::InvalidInput(format!(
                    "frame {} at {} s arrived after frame {} at {} s",
                    frame.index, frame.timestamp_s, prev.index, prev.timestamp_s
                )));
            }
        }

        let mut next = self.clone();
        next.frames_seen += 1;
        next.previous = Some(frame);
        let mut emission = None;
        if let Some(prev) = self.previous {
            if prev.label == BreathState::Exhalation && frame.label == BreathState::Inhalation {
                let recorded = push_transition(
                    &mut next.transition_times_s,
                    prev.timestamp_s,
                    &next.options,
                );
                if recorded && next.transition_times_s.len() >= 2 {
                    emission = Some(next.estimate());
                }
            }
        }
        Ok((next, emission))
    }
}

pub fn streaming_update(
    state: &TrackerState,
    frame: LabeledFrame,
) -> Result<(TrackerState, Option<RespirationEstimate>)> {
    state.update(frame)
}
