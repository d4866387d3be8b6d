use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary breath state, encoded as `0` (inhalation) / `1` (exhalation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BreathState {
    Inhalation,
    Exhalation,
}

impl BreathState {
    pub fn as_u8(self) -> u8 {
        match self {
            BreathState::Inhalation => 0,
            BreathState::Exhalation => 1,
        }
    }

    pub fn from_u8(value: u8) -> Option<Self> {
        match value {
            0 => Some(BreathState::Inhalation),
            1 => Some(BreathState::Exhalation),
            _ => None,
        }
    }

    pub fn from_bool(exhaling: bool) -> Self {
        if exhaling {
            BreathState::Exhalation
        } else {
            BreathState::Inhalation
        }
    }

    pub fn is_exhalation(self) -> bool {
        self == BreathState::Exhalation
    }

    pub fn flipped(self) -> Self {
        match self {
            BreathState::Inhalation => BreathState::Exhalation,
            BreathState::Exhalation => BreathState::Inhalation,
        }
    }
}

impl fmt::Display for BreathState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Serialize for BreathState {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for BreathState {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = u8::deserialize(deserializer)?;
        BreathState::from_u8(raw)
            .ok_or_else(|| serde::de::Error::custom(format!("label must be 0 or 1, got {raw}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabeledFrame {
    pub index: u64,
    pub timestamp_s: f64,
    pub label: BreathState,
}

impl LabeledFrame {
    pub fn new(index: u64, timestamp_s: f64, label: BreathState) -> Self {
        Self {
            index,
            timestamp_s,
            label,
        }
    }
}

/// Builds a constant-rate stream: frame `i` is stamped `i / fps`.
pub fn frames_from_labels(labels: &[BreathState], fps: f64) -> Vec<LabeledFrame> {
    labels
        .iter()
        .enumerate()
        .map(|(i, &label)| LabeledFrame::new(i as u64, i as f64 / fps, label))
        .collect()
}

pub fn states(frames: &[LabeledFrame]) -> Vec<BreathState> {
    frames.iter().map(|f| f.label).collect()
}

/// Checks that indices and timestamps are strictly increasing and timestamps are finite and
/// non-negative. Streams are never reordered.
pub fn validate_stream(frames: &[LabeledFrame]) -> Result<()> {
    for (pos, frame) in frames.iter().enumerate() {
        if !frame.timestamp_s.is_finite() || frame.timestamp_s < 0.0 {
            return Err(Error::InvalidStream(format!(
                "frame {} has invalid timestamp {}",
                frame.index, frame.timestamp_s
            )));
        }
        if pos > 0 {
            let prev = &frames[pos - 1];
            if frame.index <= prev.index {
                return Err(Error::InvalidStream(format!(
                    "index {} follows {} (indices must be strictly increasing)",
                    frame.index, prev.index
                )));
            }
            if frame.timestamp_s <= prev.timestamp_s {
                return Err(Error::InvalidStream(format!(
                    "timestamp {} at index {} does not exceed {} (timestamps must be strictly increasing)",
                    frame.timestamp_s, frame.index, prev.timestamp_s
                )));
            }
        }
    }
    Ok(())
}

/// Shortest round-trip decimal representation, padded to at least six fractional digits.
pub fn format_timestamp(t: f64) -> String {
    let mut s = format!("{t}");
    match s.find('.') {
        Some(dot) => {
            let decimals = s.len() - dot - 1;
            for _ in decimals..6 {
                s.push('0');
            }
        }
        None => s.push_str(".000000"),
    }
    s
}

pub const LABEL_CSV_HEADER: &str = "index,timestamp_s,label";

pub fn render_labels_csv(frames: &[LabeledFrame]) -> String {
    let mut out = String::with_capacity(24 * (frames.len() + 1));
    out.push_str(LABEL_CSV_HEADER);
    out.push('\n');
    for f in frames {
        out.push_str(&format!(
            "{},{},{}\n",
            f.index,
            format_timestamp(f.timestamp_s),
            f.label.as_u8()
        ));
    }
    out
}

pub fn write_labels_csv<W: Write>(mut writer: W, frames: &[LabeledFrame]) -> std::io::Result<()> {
    writer.write_all(render_labels_csv(frames).as_bytes())
}

pub fn parse_labels_csv<R: Read>(reader: R, source_name: &str) -> Result<Vec<LabeledFrame>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::None)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(source_name, 1, e))?
        .clone();
    let header_line: Vec<&str> = headers.iter().collect();
    if header_line != ["index", "timestamp_s", "label"] {
        return Err(Error::parse(
            source_name,
            1,
            format!(
                "expected header `{LABEL_CSV_HEADER}`, found `{}`",
                header_line.join(",")
            ),
        ));
    }

    let mut frames = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(source_name, line, e)
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != 3 {
            return Err(Error::parse(source_name, line, "expected 3 fields"));
        }
        let index: u64 = record[0].parse().map_err(|e| {
            Error::parse(
                source_name,
                line,
                format!("bad index `{}`: {e}", &record[0]),
            )
        })?;
        let timestamp_s: f64 = record[1].parse().map_err(|e| {
            Error::parse(
                source_name,
                line,
                format!("bad timestamp `{}`: {e}", &record[1]),
            )
        })?;
        let label = match &record[2] {
            "0" => BreathState::Inhalation,
            "1" => BreathState::Exhalation,
            other => {
                return Err(Error::parse(
                    source_name,
                    line,
                    format!("label must be 0 or 1, got `{other}`"),
                ))
            }
        };
        frames.push(LabeledFrame::new(index, timestamp_s, label));
    }
    validate_stream(&frames)?;
    Ok(frames)
}

pub fn read_labels_csv(path: &Path) -> Result<Vec<LabeledFrame>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_labels_csv(std::io::BufReader::new(file), &path.display().to_string())
}

pub fn save_labels_csv(path: &Path, frames: &[LabeledFrame]) -> Result<()> {
    std::fs::write(path, render_labels_csv(frames)).map_err(|e| Error::io(path, e))
}
