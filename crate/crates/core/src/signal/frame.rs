use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::AudioClip;
use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Window {
    Rectangular,
    Hann,
    Hamming,
}

impl Window {
    /// Symmetric window coefficients of length `n`.
    pub fn coefficients(self, n: usize) -> Vec<f64> {
        if n <= 1 {
            return vec![1.0; n];
        }
        let denom = (n - 1) as f64;
        (0..n)
            .map(|i| {
                let phase = 2.0 * PI * i as f64 / denom;
                match self {
                    Window::Rectangular => 1.0,
                    Window::Hann => 0.5 - 0.5 * math::cos(phase),
                    Window::Hamming => 0.54 - 0.46 * math::cos(phase),
                }
            })
            .collect()
    }
}

/// Fixed-length, evenly hopped analysis frames over one clip.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameTrack {
    pub frames: Vec<Vec<f64>>,
    pub frame_len_ms: f64,
    pub hop_ms: f64,
    pub start_times_s: Vec<f64>,
    pub sample_rate_hz: u32,
    /// Frame length and hop in samples, after rounding the millisecond values.
    pub frame_len: usize,
    pub hop: usize,
}

impl FrameTrack {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn hop_s(&self) -> f64 {
        self.hop as f64 / self.sample_rate_hz as f64
    }

    pub fn frame_start(&self, index: usize) -> usize {
        index * self.hop
    }
}

fn ms_to_samples(ms: f64, rate: u32) -> usize {
    math::round(ms * rate as f64 / 1000.0) as usize
}

pub fn frame_signal(
    clip: &AudioClip,
    frame_len_ms: f64,
    hop_ms: f64,
    window: Window,
) -> Result<FrameTrack> {
    if !(frame_len_ms > 0.0) || !(hop_ms > 0.0) {
        return Err(Error::InvalidParameter(
            "frame length and hop must be positive".into(),
        ));
    }
    let rate = clip.sample_rate_hz();
    let frame_len = ms_to_samples(frame_len_ms, rate).max(1);
    let hop = ms_to_samples(hop_ms, rate).max(1);
    let n = clip.len();
    if n < frame_len {
        return Err(Error::ClipTooShort {
            needed: frame_len,
            got: n,
        });
    }
    let count = (n - frame_len) / hop + 1;
    let coeffs = window.coefficients(frame_len);
    let samples = clip.samples();
    let frames = (0..count)
        .map(|i| {
            let start = i * hop;
            samples[start..start + frame_len]
                .iter()
                .zip(&coeffs)
                .map(|(s, w)| s * w)
                .collect()
        })
        .collect();
    let start_times_s = (0..count).map(|i| (i * hop) as f64 / rate as f64).collect();
    Ok(FrameTrack {
        frames,
        frame_len_ms,
        hop_ms,
        start_times_s,
        sample_rate_hz: rate,
        frame_len,
        hop,
    })
}

/// Per-frame RMS energy.
pub fn energy_contour(track: &FrameTrack) -> Vec<f64> {
    track
        .frames
        .iter()
        .map(|f| {
            if f.is_empty() {
                0.0
            } else {
                math::sqrt(f.iter().map(|s| s * s).sum::<f64>() / f.len() as f64)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clip(n: usize, rate: u32) -> AudioClip {
        AudioClip::new(vec![0.25; n], rate, "t").unwrap()
    }

    #[test]
    fn one_second_forty_ms_frames_ten_ms_hop_gives_97() {
        let t = frame_signal(&clip(16_000, 16_000), 40.0, 10.0, Window::Rectangular).unwrap();
        assert_eq!(t.len(), 97);
        assert_eq!(t.start_times_s[1], 0.01);
    }

    #[test]
    fn exactly_one_frame() {
        let t = frame_signal(&clip(640, 16_000), 40.0, 10.0, Window::Hann).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn too_short() {
        let err = frame_signal(&clip(639, 16_000), 40.0, 10.0, Window::Hann).unwrap_err();
        assert!(matches!(err, Error::ClipTooShort { .. }));
    }

    #[test]
    fn hann_on_constant_one_is_the_window() {
        let c = AudioClip::new(vec![1.0; 400], 16_000, "t").unwrap();
        let t = frame_signal(&c, 25.0, 10.0, Window::Hann).unwrap();
        assert_eq!(t.frames[0], Window::Hann.coefficients(400));
    }

    #[test]
    fn energy_of_constant_and_zero() {
        let t = frame_signal(&clip(1600, 16_000), 40.0, 10.0, Window::Rectangular).unwrap();
        assert!(energy_contour(&t).iter().all(|e| (e - 0.25).abs() < 1e-15));
        let z = AudioClip::new(vec![0.0; 1600], 16_000, "z").unwrap();
        let t = frame_signal(&z, 40.0, 10.0, Window::Rectangular).unwrap();
        assert!(energy_contour(&t).iter().all(|e| *e == 0.0));
    }

    #[test]
    fn energy_is_linear_in_amplitude() {
        let samples: Vec<f64> = (0..3200)
            .map(|i| math::sin(i as f64 * 0.37) * 0.3)
            .collect();
        let a = AudioClip::new(samples, 16_000, "a").unwrap();
        let b = a.scaled(2.0);
        let ea = energy_contour(&frame_signal(&a, 40.0, 10.0, Window::Rectangular).unwrap());
        let eb = energy_contour(&frame_signal(&b, 40.0, 10.0, Window::Rectangular).unwrap());
        for (x, y) in ea.iter().zip(&eb) {
            assert_eq!(2.0 * x, *y);
        }
    }
}
