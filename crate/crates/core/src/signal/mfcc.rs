use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

pub fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * math::log10(1.0 + hz / 700.0)
}

pub fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (math::powf(10.0, mel / 2595.0) - 1.0)
}

/// Triangular filters spaced evenly on the mel scale from 0 Hz to Nyquist.
#[derive(Debug, Clone, PartialEq)]
pub struct MelFilterbank {
    /// `n_mels` rows of `n_fft / 2 + 1` weights.
    weights: Vec<Vec<f64>>,
    edges_hz: Vec<f64>,
}

impl MelFilterbank {
    pub fn new(n_mels: usize, n_fft: usize, sample_rate_hz: u32) -> Self {
        let nyquist = sample_rate_hz as f64 / 2.0;
        let top = hz_to_mel(nyquist);
        let edges_hz: Vec<f64> = (0..n_mels + 2)
            .map(|i| mel_to_hz(top * i as f64 / (n_mels + 1) as f64))
            .collect();
        let bins = n_fft / 2 + 1;
        let weights = (1..=n_mels)
            .map(|b| {
                let (lo, centre, hi) = (edges_hz[b - 1], edges_hz[b], edges_hz[b + 1]);
                (0..bins)
                    .map(|k| {
                        let f = k as f64 * sample_rate_hz as f64 / n_fft as f64;
                        if f >= lo && f <= centre {
                            (f - lo) / (centre - lo)
                        } else if f > centre && f <= hi {
                            (hi - f) / (hi - centre)
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        Self { weights, edges_hz }
    }

    pub fn n_mels(&self) -> usize {
        self.weights.len()
    }

    /// Centre frequency of band `band` (0-based).
    pub fn centre_hz(&self, band: usize) -> f64 {
        self.edges_hz[band + 1]
    }

    pub fn apply(&self, power: &[f64]) -> Vec<f64> {
        self.weights
            .iter()
            .map(|w| w.iter().zip(power).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Reusable MFCC pipeline for one frame length and sample rate.
#[derive(Debug, Clone)]
pub struct MfccExtractor {
    frame_len: usize,
    n_fft: usize,
    twiddles: Vec<Complex64>,
    filterbank: MelFilterbank,
    dct: Vec<Vec<f64>>,
    floor: f64,
}

impl MfccExtractor {
    pub fn new(
        frame_len: usize,
        sample_rate_hz: u32,
        n_mels: usize,
        n_mfcc: usize,
        floor: f64,
    ) -> Result<Self> {
        if frame_len == 0 || n_mels == 0 || n_mfcc == 0 || n_mfcc > n_mels {
            return Err(Error::InvalidParameter(
                "need frame_len > 0 and 0 < n_mfcc <= n_mels".into(),
            ));
        }
        if !(floor > 0.0) {
            return Err(Error::InvalidParameter("mel floor must be positive".into()));
        }
        let n_fft = frame_len.next_power_of_two().max(2);
        let twiddles = (0..n_fft / 2)
            .map(|k| {
                let a = -2.0 * PI * k as f64 / n_fft as f64;
                Complex64::new(math::cos(a), math::sin(a))
            })
            .collect();
        let m = n_mels as f64;
        let dct = (0..n_mfcc)
            .map(|n| {
                let scale = if n == 0 {
                    math::sqrt(1.0 / m)
                } else {
                    math::sqrt(2.0 / m)
                };
                (0..n_mels)
                    .map(|j| scale * math::cos(PI * n as f64 * (j as f64 + 0.5) / m))
                    .collect()
            })
            .collect();
        Ok(Self {
            frame_len,
            n_fft,
            twiddles,
            filterbank: MelFilterbank::new(n_mels, n_fft, sample_rate_hz),
            dct,
            floor,
        })
    }

    pub fn n_fft(&self) -> usize {
        self.n_fft
    }

    pub fn filterbank(&self) -> &MelFilterbank {
        &self.filterbank
    }

    /// `|X_k|^2` for `k = 0..=n_fft/2`, the frame zero-padded to `n_fft`.
    pub fn power_spectrum(&self, frame: &[f64]) -> Result<Vec<f64>> {
        if frame.len() != self.frame_len {
            return Err(Error::DimensionMismatch {
                expected: self.frame_len,
                found: frame.len(),
            });
        }
        let mut buf: Vec<Complex64> = frame.iter().map(|&s| Complex64::new(s, 0.0)).collect();
        buf.resize(self.n_fft, Complex64::new(0.0, 0.0));
        fft_in_place(&mut buf, &self.twiddles);
        Ok(buf[..=self.n_fft / 2]
            .iter()
            .map(|c| c.norm_sqr())
            .collect())
    }

    /// Floored natural-log mel energies, before the DCT.
    pub fn log_mel(&self, frame: &[f64]) -> Result<Vec<f64>> {
        let power = self.power_spectrum(frame)?;
        Ok(self
            .filterbank
            .apply(&power)
            .into_iter()
            .map(|e| math::ln(e.max(self.floor)))
            .collect())
    }

    pub fn compute(&self, frame: &[f64]) -> Result<Vec<f64>> {
        let log_mel = self.log_mel(frame)?;
        Ok(self
            .dct
            .iter()
            .map(|row| row.iter().zip(&log_mel).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// Mel-frequency cepstral coefficients of one frame: power spectrum, triangular
/// mel filterbank, log with floor 1e-10, orthonormal type-II DCT.
pub fn mfcc(frame: &[f64], sample_rate_hz: u32, n_mels: usize, n_mfcc: usize) -> Result<Vec<f64>> {
    MfccExtractor::new(frame.len(), sample_rate_hz, n_mels, n_mfcc, 1e-10)?.compute(frame)
}

fn fft_in_place(buf: &mut [Complex64], twiddles: &[Complex64]) {
    let n = buf.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = twiddles[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + len / 2] * w;
                buf[start + k] = a + b;
                buf[start + k + len / 2] = a - b;
            }
        }
        len <<= 1;
    }
}
