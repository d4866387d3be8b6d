use serde::{Deserialize, Serialize};

use crate::domain::RespirationEstimate;
use crate::error::{Error, Result};

/// Relative error between a predicted rate and the observers' mean, in percent, with its
/// first-order propagated uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error_pct: f64,
    pub sigma_pct: f64,
}

impl ErrorReport {
    /// `error±sigma%` with one decimal each.
    pub fn display(&self) -> String {
        format!("{:.1}±{:.1}%", self.error_pct, self.sigma_pct)
    }
}

/// `100 |m - p| / p` and `100 sqrt((sm / p)^2 + (m sp / p^2)^2)` for a prediction `p ± sp` and
/// observers `m ± sm`.
pub fn relative_error_values(
    pred_rate: f64,
    pred_std: f64,
    obs_mean: f64,
    obs_std: f64,
) -> Result<ErrorReport> {
    if !(pred_rate.is_finite() && pred_rate > 0.0) {
        return Err(Error::InvalidInput(format!(
            "predicted rate must be positive, got {pred_rate}"
        )));
    }
    if [pred_std, obs_mean, obs_std]
        .iter()
        .any(|v| !v.is_finite() || *v < 0.0)
    {
        return Err(Error::InvalidInput(
            "deviations and observer mean must be finite and non-negative".into(),
        ));
    }
    let p = pred_rate;
    let error_pct = 100.0 * (obs_mean - p).abs() / p;
    let sigma_pct = 100.0 * (obs_std / p).hypot(obs_mean * pred_std / (p * p));
    Ok(ErrorReport {
        error_pct,
        sigma_pct,
    })
}

/// `None` when the tracker produced no estimate (rendered as a dash).
pub fn relative_error(
    pred: &RespirationEstimate,
    obs_mean: f64,
    obs_std: f64,
) -> Result<Option<ErrorReport>> {
    match (pred.rate_bpm, pred.std_bpm) {
        (Some(rate), Some(std)) => relative_error_values(rate, std, obs_mean, obs_std).map(Some),
        _ => Ok(None),
    }
}
