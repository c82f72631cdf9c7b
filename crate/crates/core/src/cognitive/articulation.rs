use alloc::vec::Vec;
use core::f64::consts::PI;

use super::analysis::SpeechAnalysis;
use crate::error::{Error, Result};
use crate::math;
use crate::signal::{formants, lpc, Window};

/// First/second formant statistics over voiced frames (f_ar).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ArticulationFeatures {
    pub f1_mean_hz: f64,
    pub f1_std_hz: f64,
    pub f2_mean_hz: f64,
    pub f2_std_hz: f64,
    pub f2_f1_ratio_mean: f64,
    /// Area of the one-standard-deviation F1-F2 ellipse, Hz^2.
    pub vowel_space_proxy: f64,
}

impl ArticulationFeatures {
    pub const NAMES: [&'static str; 6] = [
        "ar_f1_mean_hz",
        "ar_f1_std_hz",
        "ar_f2_mean_hz",
        "ar_f2_std_hz",
        "ar_f2_f1_ratio_mean",
        "ar_vowel_space_proxy",
    ];

    pub fn to_vec(&self) -> Vec<f64> {
        alloc::vec![
            self.f1_mean_hz,
            self.f1_std_hz,
            self.f2_mean_hz,
            self.f2_std_hz,
            self.f2_f1_ratio_mean,
            self.vowel_space_proxy,
        ]
    }
}

/// Per voiced frame `(F1, F2)`; frames without two formants are skipped.
pub(crate) fn formant_pairs(analysis: &SpeechAnalysis<'_>) -> Vec<(f64, f64)> {
    let cfg = analysis.config;
    let rate = analysis.clip.sample_rate_hz();
    let order = cfg.lpc_order_for(rate);
    let window = Window::Hamming.coefficients(analysis.frames.frame_len);
    (0..analysis.frames.len())
        .filter(|&i| analysis.is_voiced(i))
        .filter_map(|i| {
            let raw = analysis.frame_samples(i);
            let shaped: Vec<f64> = (0..raw.len())
                .map(|t| {
                    let prev = if t > 0 { raw[t - 1] } else { 0.0 };
                    (raw[t] - cfg.pre_emphasis * prev) * window[t]
                })
                .collect();
            let coeffs = lpc(&shaped, order).ok()?;
            let f = formants(&coeffs, rate, cfg.max_formant_bandwidth_hz);
            (f.len() >= 2).then(|| (f[0], f[1]))
        })
        .collect()
}

pub(crate) fn articulation(analysis: &SpeechAnalysis<'_>) -> Result<ArticulationFeatures> {
    let pairs = formant_pairs(analysis);
    if pairs.is_empty() {
        return Err(Error::NoVoicedFrames);
    }
    let f1: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let f2: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let ratios: Vec<f64> = pairs.iter().map(|p| p.1 / p.0).collect();
    let f1_std_hz = math::std_dev(&f1);
    let f2_std_hz = math::std_dev(&f2);
    Ok(ArticulationFeatures {
        f1_mean_hz: math::mean(&f1),
        f1_std_hz,
        f2_mean_hz: math::mean(&f2),
        f2_std_hz,
        f2_f1_ratio_mean: math::mean(&ratios),
        vowel_space_proxy: PI * f1_std_hz * f2_std_hz,
    })
}
