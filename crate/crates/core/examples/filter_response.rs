//! Prints the magnitude response of the two bandpass presets at a few probe frequencies.
//!
//! Run: `cargo run --example filter_response`

use breathline::audio::{BandpassFilter, BandpassSpec};
use breathline::domain::DEFAULT_SAMPLE_RATE_HZ;

fn main() -> breathline::Result<()> {
    let probes = [
        50.0, 150.0, 300.0, 350.0, 450.0, 575.0, 650.0, 1200.0, 5000.0,
    ];
    for spec in [BandpassSpec::wide(), BandpassSpec::narrow()] {
        let filter = BandpassFilter::new(spec, DEFAULT_SAMPLE_RATE_HZ)?;
        println!(
            "{}-{} Hz, {} taps (group delay {} samples)",
            spec.low_hz,
            spec.high_hz,
            spec.taps,
            filter.group_delay()
        );
        for f in probes {
            let gain = filter.magnitude_at(f);
            println!(
                "  {f:>7.0} Hz  gain {gain:.5}  ({:>7.2} dB)",
                20.0 * gain.log10()
            );
        }
    }
    Ok(())
}
