//! Mono WAV input/output. PCM16 and IEEE float32 are accepted; everything else is rejected.

use std::io::{Read, Seek, Write};
use std::path::Path;

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};

use crate::domain::AudioTrack;
use crate::error::{Error, Result};

fn unsupported(e: hound::Error) -> Error {
    Error::UnsupportedAudio(e.to_string())
}

pub fn decode_wav<R: Read>(reader: R) -> Result<AudioTrack> {
    let mut wav = WavReader::new(reader).map_err(unsupported)?;
    let spec = wav.spec();
    if spec.channels != 1 {
        return Err(Error::UnsupportedAudio(format!(
            "expected mono audio, found {} channels",
            spec.channels
        )));
    }
    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Int, 16) => wav
            .samples::<i16>()
            .map(|s| s.map(|v| v as f64 / 32768.0))
            .collect::<std::result::Result<_, _>>()
            .map_err(unsupported)?,
        (SampleFormat::Float, 32) => wav
            .samples::<f32>()
            .map(|s| s.map(|v| v as f64))
            .collect::<std::result::Result<_, _>>()
            .map_err(unsupported)?,
        (format, bits) => {
            return Err(Error::UnsupportedAudio(format!(
            "unsupported encoding {format:?} with {bits} bits per sample (need PCM16 or float32)"
        )))
        }
    };
    AudioTrack::new(spec.sample_rate, samples)
}

pub fn read_wav(path: &Path) -> Result<AudioTrack> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    decode_wav(std::io::BufReader::new(file)).map_err(|e| match e {
        Error::UnsupportedAudio(msg) => {
            Error::UnsupportedAudio(format!("{}: {msg}", path.display()))
        }
        other => other,
    })
}

/// Writes float32 samples, which keeps every simulator value exactly representable after the
/// f64 -> f32 cast that reading performs.
pub fn encode_wav_f32<W: Write + Seek>(writer: W, track: &AudioTrack) -> Result<()> {
    let spec = WavSpec {
        channels: 1,
        sample_rate: track.sample_rate_hz(),
        bits_per_sample: 32,
        sample_format: SampleFormat::Float,
    };
    let mut w = WavWriter::new(writer, spec).map_err(unsupported)?;
    for &s in track.samples() {
        w.write_sample(s as f32).map_err(unsupported)?;
    }
    w.finalize().map_err(unsupported)
}

pub fn write_wav_f32(path: &Path, track: &AudioTrack) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    encode_wav_f32(std::io::BufWriter::new(file), track)
}

/// Round-trips a track through float32 precision so in-memory results match what a WAV reader
/// will see.
pub fn quantize_f32(track: &AudioTrack) -> AudioTrack {
    AudioTrack::new(
        track.sample_rate_hz(),
        track.samples().iter().map(|&s| s as f32 as f64).collect(),
    )
    .expect("f32 rounding keeps samples within [-1, 1]")
}
