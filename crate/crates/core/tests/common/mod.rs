//! Independent oracles shared by the integration tests. Nothing here calls the code under test
//! for the quantity it checks.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use breathline::audio::BandpassFilter;
use breathline::{BreathState, LabeledFrame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

/// Krippendorff's interval alpha from an explicit coincidence matrix over the distinct values.
/// `rows` holds one vector per rater, `None` for missing ratings. Returns `None` when undefined.
pub fn alpha_coincidence_oracle(rows: &[Vec<Option<f64>>]) -> Option<f64> {
    let n_items = rows.first().map_or(0, Vec::len);
    // Values are keyed by their bit pattern so equal ratings share a matrix row.
    let mut coincidence: BTreeMap<(u64, u64), f64> = BTreeMap::new();
    for j in 0..n_items {
        let unit: Vec<f64> = rows.iter().filter_map(|r| r[j]).collect();
        let m = unit.len();
        if m < 2 {
            continue;
        }
        for (a, &va) in unit.iter().enumerate() {
            for (b, &vb) in unit.iter().enumerate() {
                if a != b {
                    *coincidence.entry((va.to_bits(), vb.to_bits())).or_default() +=
                        1.0 / (m - 1) as f64;
                }
            }
        }
    }
    let mut marginals: BTreeMap<u64, f64> = BTreeMap::new();
    for (&(c, _), &o) in &coincidence {
        *marginals.entry(c).or_default() += o;
    }
    let n: f64 = marginals.values().sum();
    if n < 2.0 {
        return None;
    }
    let delta = |c: u64, k: u64| (f64::from_bits(c) - f64::from_bits(k)).powi(2);
    let observed: f64 = coincidence
        .iter()
        .map(|(&(c, k), &o)| o * delta(c, k))
        .sum();
    let mut expected = 0.0;
    for (&c, &nc) in &marginals {
        for (&k, &nk) in &marginals {
            expected += nc * nk * delta(c, k);
        }
    }
    if expected == 0.0 {
        return None;
    }
    Some(1.0 - (n - 1.0) * observed / expected)
}

/// DTFT magnitude of a real kernel, evaluated with complex exponentials.
pub fn dft_magnitude(kernel: &[f64], freq_hz: f64, sample_rate_hz: f64) -> f64 {
    let w = 2.0 * PI * freq_hz / sample_rate_hz;
    let mut re = 0.0;
    let mut im = 0.0;
    for (n, &h) in kernel.iter().enumerate() {
        let (s, c) = (w * n as f64).sin_cos();
        re += h * c;
        im -= h * s;
    }
    (re * re + im * im).sqrt()
}

/// Gain measured by filtering a pure tone and comparing RMS away from the edges.
pub fn tone_gain(filter: &BandpassFilter, freq_hz: f64, sample_rate_hz: f64) -> f64 {
    let len = 4 * filter.kernel().len() + 9600;
    let tone: Vec<f64> = (0..len)
        .map(|n| 0.5 * (2.0 * PI * freq_hz * n as f64 / sample_rate_hz).sin())
        .collect();
    let out = filter.apply(&tone);
    let skip = filter.kernel().len();
    let rms = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt();
    rms(&out[skip..len - skip]) / rms(&tone[skip..len - skip])
}

pub fn db(gain: f64) -> f64 {
    20.0 * gain.log10()
}

/// Random label stream with runs of random length and a random frame rate.
pub fn random_stream(seed: u64) -> Vec<LabeledFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fps = rng.random_range(2.0..60.0);
    let len = rng.random_range(0..600);
    let mut label = BreathState::from_bool(rng.random_bool(0.5));
    let mut run_left = 0usize;
    (0..len)
        .map(|i| {
            if run_left == 0 {
                run_left = rng.random_range(1..40);
                label = label.flipped();
            }
            run_left -= 1;
            LabeledFrame::new(i as u64, i as f64 / fps, label)
        })
        .collect()
}

/// Percentage of positions where the two label sequences agree.
pub fn agreement(a: &[BreathState], b: &[BreathState]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x == y).count() as f64 / a.len() as f64
}
