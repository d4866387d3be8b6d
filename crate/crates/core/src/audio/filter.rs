//! Linear-phase FIR bandpass (Hamming-windowed sinc) with group-delay compensation.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::domain::AudioTrack;
use crate::error::{Error, Result};

/// Default kernel length. Long enough for a -1 dB passband 25 Hz inside 325 Hz / 600 Hz edges at
/// 48 kHz with a Hamming window.
pub const DEFAULT_TAPS: usize = 2561;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandpassSpec {
    pub low_hz: f64,
    pub high_hz: f64,
    pub taps: usize,
}

impl Default for BandpassSpec {
    fn default() -> Self {
        Self::wide()
    }
}

impl BandpassSpec {
    /// 325-600 Hz respiration band.
    pub fn wide() -> Self {
        Self {
            low_hz: 325.0,
            high_hz: 600.0,
            taps: DEFAULT_TAPS,
        }
    }

    /// 400-600 Hz variant of the respiration band.
    pub fn narrow() -> Self {
        Self {
            low_hz: 400.0,
            high_hz: 600.0,
            taps: DEFAULT_TAPS,
        }
    }

    pub fn validate(&self, sample_rate_hz: u32) -> Result<()> {
        let nyquist = sample_rate_hz as f64 / 2.0;
        if !(self.low_hz.is_finite() && self.high_hz.is_finite()) {
            return Err(Error::InvalidSpec("band edges must be finite".into()));
        }
        if !(0.0 < self.low_hz && self.low_hz < self.high_hz && self.high_hz < nyquist) {
            return Err(Error::InvalidSpec(format!(
                "band edges must satisfy 0 < low ({}) < high ({}) < nyquist ({nyquist})",
                self.low_hz, self.high_hz
            )));
        }
        if self.taps == 0 || self.taps.is_multiple_of(2) {
            return Err(Error::InvalidSpec(format!(
                "taps must be odd and positive, got {}",
                self.taps
            )));
        }
        Ok(())
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

fn hamming(n: usize, len: usize) -> f64 {
    if len == 1 {
        return 1.0;
    }
    0.54 - 0.46 * (2.0 * PI * n as f64 / (len - 1) as f64).cos()
}

/// Symmetric bandpass kernel: difference of two windowed-sinc lowpass prototypes.
pub fn design_kernel(spec: &BandpassSpec, sample_rate_hz: u32) -> Result<Vec<f64>> {
    spec.validate(sample_rate_hz)?;
    let fs = sample_rate_hz as f64;
    let lo = spec.low_hz / fs;
    let hi = spec.high_hz / fs;
    let center = (spec.taps - 1) as f64 / 2.0;
    Ok((0..spec.taps)
        .map(|n| {
            let x = n as f64 - center;
            let ideal = 2.0 * hi * sinc(2.0 * hi * x) - 2.0 * lo * sinc(2.0 * lo * x);
            ideal * hamming(n, spec.taps)
        })
        .collect())
}

/// Magnitude of the kernel's discrete-time Fourier transform at `freq_hz`.
pub fn magnitude_response(kernel: &[f64], freq_hz: f64, sample_rate_hz: u32) -> f64 {
    let omega = 2.0 * PI * freq_hz / sample_rate_hz as f64;
    let (re, im) = kernel
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (n, &h)| {
            let phase = omega * n as f64;
            (re + h * phase.cos(), im - h * phase.sin())
        });
    re.hypot(im)
}

pub struct BandpassFilter {
    spec: BandpassSpec,
    sample_rate_hz: u32,
    kernel: Vec<f64>,
    fft_len: usize,
    kernel_spectrum: Vec<Complex<f64>>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for BandpassFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BandpassFilter")
            .field("spec", &self.spec)
            .field("sample_rate_hz", &self.sample_rate_hz)
            .field("fft_len", &self.fft_len)
            .finish()
    }
}

impl BandpassFilter {
    pub fn new(spec: BandpassSpec, sample_rate_hz: u32) -> Result<Self> {
        let kernel = design_kernel(&spec, sample_rate_hz)?;
        let fft_len = (4 * spec.taps).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(fft_len);
        let inverse = planner.plan_fft_inverse(fft_len);
        let mut kernel_spectrum: Vec<Complex<f64>> = kernel
            .iter()
            .map(|&h| Complex::new(h, 0.0))
            .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
            .take(fft_len)
            .collect();
        forward.process(&mut kernel_spectrum);
        Ok(Self {
            spec,
            sample_rate_hz,
            kernel,
            fft_len,
            kernel_spectrum,
            forward,
            inverse,
        })
    }

    pub fn spec(&self) -> &BandpassSpec {
        &self.spec
    }

    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }

    pub fn group_delay(&self) -> usize {
        (self.spec.taps - 1) / 2
    }

    pub fn magnitude_at(&self, freq_hz: f64) -> f64 {
        magnitude_response(&self.kernel, freq_hz, self.sample_rate_hz)
    }

    /// Filters `input` (zero-padded outside its bounds). The result has the same length and is
    /// shifted back by the group delay so that it stays time-aligned with the input.
    pub fn apply(&self, input: &[f64]) -> Vec<f64> {
        let n = input.len();
        if n == 0 {
            return Vec::new();
        }
        let taps = self.kernel.len();
        let block = self.fft_len - taps + 1;
        let mut full = vec![0.0; n + taps - 1];
        let scale = 1.0 / self.fft_len as f64;
        let mut buf = vec![Complex::new(0.0, 0.0); self.fft_len];

        for start in (0..n).step_by(block) {
            let end = (start + block).min(n);
            for (slot, value) in buf.iter_mut().zip(
                input[start..end]
                    .iter()
                    .copied()
                    .chain(std::iter::repeat(0.0)),
            ) {
                *slot = Complex::new(value, 0.0);
            }
            self.forward.process(&mut buf);
            for (b, h) in buf.iter_mut().zip(&self.kernel_spectrum) {
                *b *= h;
            }
            self.inverse.process(&mut buf);
            let produced = (end - start + taps - 1).min(full.len() - start);
            for (acc, value) in full[start..start + produced].iter_mut().zip(&buf) {
                *acc += value.re * scale;
            }
        }

        let delay = self.group_delay();
        full[delay..delay + n].to_vec()
    }

    pub fn apply_track(&self, track: &AudioTrack) -> Result<AudioTrack> {
        if track.sample_rate_hz() != self.sample_rate_hz {
            return Err(Error::InvalidSpec(format!(
                "filter designed for {} Hz applied to {} Hz audio",
                self.sample_rate_hz,
                track.sample_rate_hz()
            )));
        }
        AudioTrack::clamped(self.sample_rate_hz, self.apply(track.samples()))
    }
}

/// Bandpass-filters a track. Output has identical length and sample rate and is time-aligned with
/// the input (group delay removed, edges zero-padded).
///
/// Contract for the default kernel length: magnitude response at least -1 dB across
/// `[low_hz + 25, high_hz - 25]`, and at most -40 dB below `low_hz / 2` and above `2 * high_hz`.
pub fn bandpass_filter(track: &AudioTrack, spec: &BandpassSpec) -> Result<AudioTrack> {
    BandpassFilter::new(*spec, track.sample_rate_hz())?.apply_track(track)
}
