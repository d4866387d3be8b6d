use serde::{Deserialize, Serialize};

use crate::domain::BreathState;
use crate::error::{Error, Result};

/// Binary confusion counts with Exhalation as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn accuracy(&self) -> f64 {
        (self.tp + self.tn) as f64 / self.total() as f64
    }
}

fn check_lengths(pred: &[BreathState], truth: &[BreathState]) -> Result<()> {
    if pred.len() != truth.len() {
        return Err(Error::InvalidInput(format!(
            "{} predictions for {} truth labels",
            pred.len(),
            truth.len()
        )));
    }
    Ok(())
}

pub fn confusion(pred: &[BreathState], truth: &[BreathState]) -> Result<ConfusionMatrix> {
    check_lengths(pred, truth)?;
    let mut m = ConfusionMatrix::default();
    for (p, t) in pred.iter().zip(truth) {
        match (p.is_exhalation(), t.is_exhalation()) {
            (true, true) => m.tp += 1,
            (true, false) => m.fp += 1,
            (false, false) => m.tn += 1,
            (false, true) => m.fn_ += 1,
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

/// Support-weighted averages over both classes plus plain accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedReport {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub exhalation: ClassMetrics,
    pub inhalation: ClassMetrics,
    pub confusion: ConfusionMatrix,
}

// Precision of a class that is never predicted (and F1 when both terms vanish) is taken as 0.
fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn class_metrics(tp: usize, fp: usize, fn_: usize) -> ClassMetrics {
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    ClassMetrics {
        precision,
        recall,
        f1,
        support: tp + fn_,
    }
}

pub fn weighted_report(pred: &[BreathState], truth: &[BreathState]) -> Result<WeightedReport> {
    let m = confusion(pred, truth)?;
    let positives = m.tp + m.fn_;
    let negatives = m.tn + m.fp;
    if positives == 0 || negatives == 0 {
        return Err(Error::DegenerateDataset(
            "truth labels must contain both classes".into(),
        ));
    }
    let exhalation = class_metrics(m.tp, m.fp, m.fn_);
    let inhalation = class_metrics(m.tn, m.fn_, m.fp);
    let total = m.total() as f64;
    let weigh = |a: f64, b: f64| (a * positives as f64 + b * negatives as f64) / total;
    Ok(WeightedReport {
        precision: weigh(exhalation.precision, inhalation.precision),
        recall: weigh(exhalation.recall, inhalation.recall),
        f1: weigh(exhalation.f1, inhalation.f1),
        accuracy: m.accuracy(),
        exhalation,
        inhalation,
        confusion: m,
    })
}
