//! Linear max-margin classifier trained by epoch-shuffled subgradient descent on the
//! L2-regularized hinge loss.

use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::features::FeatureVector;
use crate::domain::{split, BreathState};
use crate::error::{Error, Result};

/// Slack allowed above the running minimum of the per-epoch training loss.
pub const LOSS_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainParams {
    pub epochs: usize,
    pub learning_rate: f64,
    pub lambda: f64,
    pub seed: u64,
    /// Standardize features with the training-set mean and deviation. When false the identity
    /// transform is stored instead.
    #[serde(default = "default_true")]
    pub standardize: bool,
}

fn default_true() -> bool {
    true
}

impl Default for TrainParams {
    fn default() -> Self {
        Self {
            epochs: 50,
            learning_rate: 0.001,
            lambda: 1e-4,
            seed: 0,
            standardize: true,
        }
    }
}

impl TrainParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub feature_means: Vec<f64>,
    pub feature_stds: Vec<f64>,
    pub hyperparameters: TrainParams,
    pub trained_epochs: usize,
    /// Full-set training loss after each epoch.
    #[serde(default)]
    pub loss_history: Vec<f64>,
}

fn sign(label: BreathState) -> f64 {
    match label {
        BreathState::Exhalation => 1.0,
        BreathState::Inhalation => -1.0,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn objective(weights: &[f64], bias: f64, lambda: f64, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
    let hinge: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (1.0 - y * (dot(weights, x) + bias)).max(0.0))
        .sum();
    0.5 * lambda * dot(weights, weights) + hinge / xs.len() as f64
}

fn column_stats(rows: &[Vec<f64>], dim: usize) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let means: Vec<f64> = (0..dim)
        .map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n)
        .collect();
    let stds = (0..dim)
        .map(|j| {
            let var = rows.iter().map(|r| (r[j] - means[j]).powi(2)).sum::<f64>() / n;
            let sd = var.sqrt();
            if sd > 1e-12 {
                sd
            } else {
                1.0
            }
        })
        .collect();
    (means, stds)
}

/// Trains on raw feature rows of any (consistent) length.
pub fn train_linear_rows(
    rows: &[Vec<f64>],
    labels: &[BreathState],
    params: &TrainParams,
) -> Result<LinearModel> {
    if rows.is_empty() {
        return Err(Error::DegenerateDataset("dataset is empty".into()));
    }
    if rows.len() != labels.len() {
        return Err(Error::InvalidInput(format!(
            "{} feature rows but {} labels",
            rows.len(),
            labels.len()
        )));
    }
    let dim = rows[0].len();
    if let Some(r) = rows.iter().find(|r| r.len() != dim) {
        return Err(Error::InvalidInput(format!(
            "feature rows have inconsistent lengths ({dim} and {})",
            r.len()
        )));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("features must be finite".into()));
    }
    let positives = labels.iter().filter(|l| l.is_exhalation()).count();
    if positives == 0 || positives == labels.len() {
        return Err(Error::DegenerateDataset(
            "both Exhalation and Inhalation examples are required".into(),
        ));
    }
    if !(params.learning_rate > 0.0 && params.lambda > 0.0) {
        return Err(Error::InvalidInput(
            "learning rate and lambda must be positive".into(),
        ));
    }

    let (feature_means, feature_stds) = if params.standardize {
        column_stats(rows, dim)
    } else {
        (vec![0.0; dim], vec![1.0; dim])
    };
    let xs: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| standardize(r, &feature_means, &feature_stds))
        .collect();
    let ys: Vec<f64> = labels.iter().map(|&l| sign(l)).collect();

    let lr = params.learning_rate;
    let decay = 1.0 - lr * params.lambda;
    let mut rng = split(params.seed, 0);
    let mut order: Vec<usize> = (0..xs.len()).collect();

    let mut weights = vec![0.0; dim];
    let mut bias = 0.0;
    let mut best = objective(&weights, bias, params.lambda, &xs, &ys);
    let mut loss_history = Vec::with_capacity(params.epochs);

    for _ in 0..params.epochs {
        order.shuffle(&mut rng);
        let mut w = weights.clone();
        let mut b = bias;
        for &i in &order {
            let margin = ys[i] * (dot(&w, &xs[i]) + b);
            for wj in w.iter_mut() {
                *wj *= decay;
            }
            if margin < 1.0 {
                for (wj, xj) in w.iter_mut().zip(&xs[i]) {
                    *wj += lr * ys[i] * xj;
                }
                b += lr * ys[i];
            }
        }
        let loss = objective(&w, b, params.lambda, &xs, &ys);
        // An epoch that raises the full-set objective is discarded; the next epoch reshuffles.
        if loss <= best + LOSS_TOLERANCE {
            weights = w;
            bias = b;
            best = best.min(loss);
            loss_history.push(loss);
        } else {
            loss_history.push(*loss_history.last().unwrap_or(&best));
        }
    }

    Ok(LinearModel {
        weights,
        bias,
        feature_means,
        feature_stds,
        hyperparameters: *params,
        trained_epochs: params.epochs,
        loss_history,
    })
}

fn standardize(row: &[f64], means: &[f64], stds: &[f64]) -> Vec<f64> {
    row.iter()
        .zip(means.iter().zip(stds))
        .map(|(v, (m, s))| (v - m) / s)
        .collect()
}

pub fn train_linear(
    dataset: &[(FeatureVector, BreathState)],
    params: &TrainParams,
) -> Result<LinearModel> {
    let rows: Vec<Vec<f64>> = dataset.iter().map(|(f, _)| f.values().to_vec()).collect();
    let labels: Vec<BreathState> = dataset.iter().map(|(_, l)| *l).collect();
    train_linear_rows(&rows, &labels, params)
}

impl LinearModel {
    /// A model that applies `weights`/`bias` to unstandardized features.
    pub fn from_parts(weights: Vec<f64>, bias: f64) -> Self {
        let dim = weights.len();
        Self {
            weights,
            bias,
            feature_means: vec![0.0; dim],
            feature_stds: vec![1.0; dim],
            hyperparameters: TrainParams::default(),
            trained_epochs: 0,
            loss_history: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn standardize(&self, row: &[f64]) -> Vec<f64> {
        standardize(row, &self.feature_means, &self.feature_stds)
    }

    /// Decision score and label; the label is Exhalation iff the score is strictly positive.
    pub fn predict_row(&self, row: &[f64]) -> Result<(BreathState, f64)> {
        if row.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "model expects {} features, got {}",
                self.dim(),
                row.len()
            )));
        }
        let score = dot(&self.weights, &self.standardize(row)) + self.bias;
        Ok((BreathState::from_bool(score > 0.0), score))
    }

    pub fn predict(&self, features: &FeatureVector) -> Result<(BreathState, f64)> {
        self.predict_row(features.values())
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        if self.feature_means.len() != dim || self.feature_stds.len() != dim {
            return Err(Error::InvalidInput(
                "model transform length does not match weights".into(),
            ));
        }
        if self
            .weights
            .iter()
            .chain(&self.feature_means)
            .chain(std::iter::once(&self.bias))
            .any(|v| !v.is_finite())
            || self
                .feature_stds
                .iter()
                .any(|s| !(s.is_finite() && *s > 0.0))
        {
            return Err(Error::InvalidInput("model contains invalid numbers".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str, source_name: &str) -> Result<Self> {
        let model: LinearModel =
            serde_json::from_str(text).map_err(|e| Error::parse(source_name, e.line(), e))?;
        model.validate()?;
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text, &path.display().to_string())
    }
}

pub fn predict(model: &LinearModel, features: &FeatureVector) -> Result<(BreathState, f64)> {
    model.predict(features)
}
