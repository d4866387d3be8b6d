use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateStatus {
    Ok,
    NoEstimate,
}

/// Output of the rate tracker.
///
/// A stream with fewer than two end-of-exhalation transitions has no rate; that outcome is kept
/// distinct from a rate of zero (`rate_bpm` and `std_bpm` are `None`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RespirationEstimate {
    pub rate_bpm: Option<f64>,
    pub std_bpm: Option<f64>,
    pub cycle_count: usize,
    pub transition_times_s: Vec<f64>,
    pub status: EstimateStatus,
}

impl RespirationEstimate {
    pub fn no_estimate(transition_times_s: Vec<f64>) -> Self {
        Self {
            rate_bpm: None,
            std_bpm: None,
            cycle_count: 0,
            transition_times_s,
            status: EstimateStatus::NoEstimate,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == EstimateStatus::Ok
    }

    /// Display form: whole breaths per minute, or a dash when there is no estimate.
    pub fn display_rate(&self) -> String {
        match (self.rate_bpm, self.std_bpm) {
            (Some(r), Some(s)) => format!("{:.0}±{:.0}", r, s),
            _ => "-".to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serializes")
    }
}
