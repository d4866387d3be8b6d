//! Inter-rater reliability over a raters × items grid of respiration-rate ratings.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ratings grid: one row per rater, one column per item. `None` marks a missing rating.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaterMatrix {
    items: Vec<String>,
    ratings: Vec<Vec<Option<f64>>>,
}

impl RaterMatrix {
    pub fn new(items: Vec<String>, ratings: Vec<Vec<Option<f64>>>) -> Result<Self> {
        if let Some((r, row)) = ratings
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != items.len())
        {
            return Err(Error::InvalidInput(format!(
                "rater {r} has {} ratings for {} items",
                row.len(),
                items.len()
            )));
        }
        if ratings.iter().flatten().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("ratings must be finite".into()));
        }
        Ok(Self { items, ratings })
    }

    /// Complete grid with generated item names.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_items = rows.first().map_or(0, Vec::len);
        let items = (1..=n_items).map(|i| format!("item{i}")).collect();
        Self::new(
            items,
            rows.into_iter()
                .map(|r| r.into_iter().map(Some).collect())
                .collect(),
        )
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn n_raters(&self) -> usize {
        self.ratings.len()
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    pub fn rows(&self) -> &[Vec<Option<f64>>] {
        &self.ratings
    }

    /// Non-missing ratings of one item.
    pub fn column(&self, item: usize) -> Vec<f64> {
        self.ratings.iter().filter_map(|row| row[item]).collect()
    }

    /// Mean and sample standard deviation of each item's ratings.
    pub fn item_stats(&self) -> Vec<(f64, f64)> {
        (0..self.n_items())
            .map(|j| {
                let col = self.column(j);
                let n = col.len() as f64;
                let mean = col.iter().sum::<f64>() / n;
                let sd = if col.len() > 1 {
                    (col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
                } else {
                    0.0
                };
                (mean, sd)
            })
            .collect()
    }

    /// CSV with a header row of item names; each following row is one rater. Blank cells are
    /// missing ratings.
    pub fn parse_csv<R: Read>(reader: R, source_name: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let items: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::parse(source_name, 1, e))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut ratings = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| {
                let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
                Error::parse(source_name, line, e)
            })?;
            let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
            let row = record
                .iter()
                .map(|cell| {
                    if cell.is_empty() {
                        Ok(None)
                    } else {
                        cell.parse::<f64>().map(Some).map_err(|e| {
                            Error::parse(source_name, line, format!("bad rating `{cell}`: {e}"))
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            ratings.push(row);
        }
        Self::new(items, ratings)
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::parse_csv(file, &path.display().to_string())
    }
}

/// Per item, the fraction of raters whose (integer-rounded) rating equals the most common one.
pub fn percent_agreement(ratings: &RaterMatrix) -> Result<Vec<f64>> {
    (0..ratings.n_items())
        .map(|j| {
            let col = ratings.column(j);
            if col.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "item `{}` has no ratings",
                    ratings.items()[j]
                )));
            }
            let mut counts: HashMap<i64, usize> = HashMap::new();
            for v in &col {
                *counts.entry(v.round() as i64).or_default() += 1;
            }
            let modal = counts.values().copied().max().unwrap_or(0);
            Ok(modal as f64 / col.len() as f64)
        })
        .collect()
}

/// Sum of squared differences over all ordered pairs of distinct positions.
fn pair_disagreement(values: &[f64]) -> f64 {
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    // sum_{i != j} (v_i - v_j)^2 = 2 m sum (v_i - mean)^2
    2.0 * m * values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
}

/// Krippendorff's alpha with the interval (squared difference) metric.
///
/// Items with fewer than two ratings are not pairable and are ignored. Returns
/// [`Error::UndefinedAlpha`] when the expected disagreement is zero.
pub fn krippendorff_alpha_interval(ratings: &RaterMatrix) -> Result<f64> {
    let units: Vec<Vec<f64>> = (0..ratings.n_items())
        .map(|j| ratings.column(j))
        .filter(|c| c.len() >= 2)
        .collect();
    let pooled: Vec<f64> = units.iter().flatten().copied().collect();
    let n = pooled.len();
    if n < 2 {
        return Err(Error::UndefinedAlpha(
            "fewer than two pairable values".into(),
        ));
    }
    let observed = units
        .iter()
        .map(|u| pair_disagreement(u) / (u.len() - 1) as f64)
        .sum::<f64>()
        / n as f64;
    let expected = pair_disagreement(&pooled) / (n * (n - 1)) as f64;
    if expected == 0.0 {
        return Err(Error::UndefinedAlpha(
            "all pairable ratings are identical (expected disagreement is zero)".into(),
        ));
    }
    Ok(1.0 - observed / expected)
}
