//! Fixed 22-value frame encoding.
//!
//! Layout: `[mean, variance, hist_0..hist_15, edge_density, top_decile_fraction,
//! row_variance_mean, column_variance_mean]`. Bubbles are bright compact blobs, so they shift the
//! brightness, histogram and edge statistics while the global ones stay independent of where the
//! blobs sit.

use super::frame::Frame;

pub const HISTOGRAM_BINS: usize = 16;
pub const FEATURE_LEN: usize = 2 + HISTOGRAM_BINS + 4;

/// Gradient magnitude (forward differences) above which a pixel counts as an edge.
pub const EDGE_THRESHOLD: f64 = 0.25;
/// Pixels at or above this intensity fall in the top decile of the intensity range.
pub const TOP_DECILE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: [f64; FEATURE_LEN],
}

impl FeatureVector {
    pub fn from_values(values: [f64; FEATURE_LEN]) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values[0]
    }

    pub fn variance(&self) -> f64 {
        self.values[1]
    }

    pub fn histogram(&self) -> &[f64] {
        &self.values[2..2 + HISTOGRAM_BINS]
    }

    pub fn edge_density(&self) -> f64 {
        self.values[2 + HISTOGRAM_BINS]
    }

    pub fn top_decile_fraction(&self) -> f64 {
        self.values[3 + HISTOGRAM_BINS]
    }

    pub fn row_variance_mean(&self) -> f64 {
        self.values[4 + HISTOGRAM_BINS]
    }

    pub fn column_variance_mean(&self) -> f64 {
        self.values[5 + HISTOGRAM_BINS]
    }
}

fn mean_and_variance(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let (n, sum) = values
        .clone()
        .fold((0usize, 0.0), |(n, s), v| (n + 1, s + v));
    let mean = sum / n as f64;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
    (mean, var)
}

pub fn extract_features(frame: &Frame) -> FeatureVector {
    let (w, h) = (frame.width(), frame.height());
    let px = frame.pixels();
    let total = px.len() as f64;
    let mut values = [0.0; FEATURE_LEN];

    let (mean, variance) = mean_and_variance(px.iter().copied());
    values[0] = mean;
    values[1] = variance;

    let mut hist = [0usize; HISTOGRAM_BINS];
    for &v in px {
        let bin = ((v * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1);
        hist[bin] += 1;
    }
    for (slot, count) in values[2..2 + HISTOGRAM_BINS].iter_mut().zip(hist) {
        *slot = count as f64 / total;
    }

    let mut edges = 0usize;
    for y in 0..h {
        for x in 0..w {
            let v = frame.get(x, y);
            let dx = if x + 1 < w {
                frame.get(x + 1, y) - v
            } else {
                0.0
            };
            let dy = if y + 1 < h {
                frame.get(x, y + 1) - v
            } else {
                0.0
            };
            if dx.hypot(dy) > EDGE_THRESHOLD {
                edges += 1;
            }
        }
    }
    values[2 + HISTOGRAM_BINS] = edges as f64 / total;
    values[3 + HISTOGRAM_BINS] = px.iter().filter(|&&v| v >= TOP_DECILE).count() as f64 / total;

    values[4 + HISTOGRAM_BINS] = (0..h)
        .map(|y| mean_and_variance(frame.row(y).iter().copied()).1)
        .sum::<f64>()
        / h as f64;
    values[5 + HISTOGRAM_BINS] = (0..w)
        .map(|x| mean_and_variance((0..h).map(move |y| px[y * w + x])).1)
        .sum::<f64>()
        / w as f64;

    FeatureVector { values }
}
