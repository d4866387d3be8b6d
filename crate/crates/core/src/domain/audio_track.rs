use crate::error::{Error, Result};

pub const DEFAULT_SAMPLE_RATE_HZ: u32 = 48_000;

/// Mono audio normalized to `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioTrack {
    sample_rate_hz: u32,
    samples: Vec<f64>,
}

impl AudioTrack {
    pub fn new(sample_rate_hz: u32, samples: Vec<f64>) -> Result<Self> {
        if sample_rate_hz == 0 {
            return Err(Error::InvalidInput("sample rate must be positive".into()));
        }
        if let Some((i, s)) = samples
            .iter()
            .enumerate()
            .find(|(_, s)| !s.is_finite() || s.abs() > 1.0)
        {
            return Err(Error::InvalidInput(format!(
                "sample {i} = {s} lies outside [-1, 1]"
            )));
        }
        Ok(Self {
            sample_rate_hz,
            samples,
        })
    }

    /// Builds a track by clamping every sample into `[-1, 1]`.
    pub fn clamped(sample_rate_hz: u32, mut samples: Vec<f64>) -> Result<Self> {
        for s in &mut samples {
            *s = s.clamp(-1.0, 1.0);
        }
        Self::new(sample_rate_hz, samples)
    }

    pub fn silent(sample_rate_hz: u32, len: usize) -> Self {
        Self {
            sample_rate_hz,
            samples: vec![0.0; len],
        }
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }

    pub fn nyquist_hz(&self) -> f64 {
        self.sample_rate_hz as f64 / 2.0
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}
