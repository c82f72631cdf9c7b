//! RIFF/WAVE input.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use engage_core::signal::AudioClip;
use hound::{SampleFormat, WavReader};

use crate::error::{CoreContext, Error, Result};

/// Decodes a mono 16- or 32-bit integer PCM file to samples in `[-1, 1]`.
pub fn load_wav(path: &Path) -> Result<AudioClip> {
    let file = File::open(path).map_err(|e| Error::read(path, e))?;
    let reader = WavReader::new(BufReader::new(file)).map_err(|e| header_error(path, e))?;
    let spec = reader.spec();
    if spec.channels != 1 {
        return Err(Error::UnsupportedChannels {
            path: path.to_path_buf(),
            channels: spec.channels,
        });
    }
    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Int, 16) => reader
            .into_samples::<i16>()
            .map(|s| s.map(|v| v as f64 / 32_768.0))
            .collect::<std::result::Result<_, _>>(),
        (SampleFormat::Int, 32) => reader
            .into_samples::<i32>()
            .map(|s| s.map(|v| v as f64 / 2_147_483_648.0))
            .collect::<std::result::Result<_, _>>(),
        (format, bits) => {
            return Err(Error::UnsupportedEncoding {
                path: path.to_path_buf(),
                detail: format!("{bits}-bit {format:?}; expected 16- or 32-bit integer PCM"),
            })
        }
    }
    .map_err(|e| Error::MalformedHeader {
        path: path.to_path_buf(),
        reason: format!("sample data unreadable: {e}"),
    })?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    AudioClip::new(samples, spec.sample_rate, id).data(|| path.display().to_string())
}

fn header_error(path: &Path, e: hound::Error) -> Error {
    match e {
        hound::Error::Unsupported | hound::Error::InvalidSampleFormat => {
            Error::UnsupportedEncoding {
                path: path.to_path_buf(),
                detail: e.to_string(),
            }
        }
        other => Error::MalformedHeader {
            path: path.to_path_buf(),
            reason: other.to_string(),
        },
    }
}
