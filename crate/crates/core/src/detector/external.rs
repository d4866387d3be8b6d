//! JSON-lines predictions: `{"index": 0, "timestamp_s": 0.0, "label": 1, "score": 0.93}` with
//! `score` optional.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::domain::{validate_stream, BreathState, LabeledFrame};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prediction {
    pub index: u64,
    pub timestamp_s: f64,
    pub label: BreathState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
}

pub fn parse_predictions_jsonl<R: Read>(reader: R, source_name: &str) -> Result<Vec<LabeledFrame>> {
    let mut frames: Vec<LabeledFrame> = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::parse(source_name, line_no, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let p: Prediction =
            serde_json::from_str(&line).map_err(|e| Error::parse(source_name, line_no, e))?;
        if let Some(prev) = frames.last() {
            if p.index <= prev.index {
                return Err(Error::parse(
                    source_name,
                    line_no,
                    format!(
                        "index {} does not follow {} (duplicate or decreasing)",
                        p.index, prev.index
                    ),
                ));
            }
        }
        frames.push(LabeledFrame::new(p.index, p.timestamp_s, p.label));
    }
    validate_stream(&frames)?;
    Ok(frames)
}

pub fn load_external_predictions(path: &Path) -> Result<Vec<LabeledFrame>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_predictions_jsonl(file, &path.display().to_string())
}

pub fn render_predictions_jsonl(frames: &[LabeledFrame]) -> String {
    frames
        .iter()
        .map(|f| {
            let p = Prediction {
                index: f.index,
                timestamp_s: f.timestamp_s,
                label: f.label,
                score: None,
            };
            serde_json::to_string(&p).expect("prediction serializes") + "\n"
        })
        .collect()
}
