use alloc::vec::Vec;

use super::analysis::SpeechAnalysis;
use crate::math;
use crate::signal::{lpc, lpc_residual};

/// Voice-source quality proxies (f_g).
///
/// These are inverse-filtering and harmonicity proxies, not electroglottographic
/// measurements: HNR from the mean voiced autocorrelation peak, the LPC residual
/// energy ratio, and the share of each pitch period spent below the median
/// residual magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GlottalFeatures {
    pub hnr_db: f64,
    pub nacf_peak_mean: f64,
    pub quasi_open_quotient: f64,
    pub residual_energy_ratio: f64,
}

impl GlottalFeatures {
    pub const NAMES: [&'static str; 4] = [
        "g_hnr_db",
        "g_nacf_peak_mean",
        "g_quasi_open_quotient",
        "g_residual_energy_ratio",
    ];

    pub fn to_vec(&self) -> Vec<f64> {
        alloc::vec![
            self.hnr_db,
            self.nacf_peak_mean,
            self.quasi_open_quotient,
            self.residual_energy_ratio
        ]
    }
}

pub(crate) fn glottal(analysis: &SpeechAnalysis<'_>) -> GlottalFeatures {
    let voiced: Vec<usize> = (0..analysis.frames.len())
        .filter(|&i| analysis.is_voiced(i))
        .collect();
    if voiced.is_empty() {
        return GlottalFeatures::default();
    }
    let strengths: Vec<f64> = voiced
        .iter()
        .map(|&i| analysis.pitch.frames[i].strength)
        .collect();
    let nacf_peak_mean = math::mean(&strengths);
    let r = nacf_peak_mean.clamp(0.001, 0.999);
    let hnr_db = 10.0 * math::log10(r / (1.0 - r));

    let rate = analysis.sample_rate();
    let order = analysis
        .config
        .lpc_order_for(analysis.clip.sample_rate_hz());
    let mut ratios = Vec::new();
    let mut open = Vec::new();
    for &i in &voiced {
        let raw = analysis.frame_samples(i);
        let mean = math::mean(raw);
        let frame: Vec<f64> = raw.iter().map(|x| x - mean).collect();
        let Ok(coeffs) = lpc(&frame, order) else {
            continue;
        };
        // Skip the start-up transient where the predictor lacks history.
        let residual = &lpc_residual(&frame, &coeffs)[order..];
        let body = &frame[order..];
        let energy: f64 = body.iter().map(|x| x * x).sum();
        if energy > 0.0 {
            ratios.push(residual.iter().map(|x| x * x).sum::<f64>() / energy);
        }
        let magnitude: Vec<f64> = residual.iter().map(|x| x.abs()).collect();
        let median = math::median(&magnitude);
        let f0 = analysis.pitch.frames[i].f0_hz.expect("voiced");
        let period = (math::round(rate / f0) as usize).max(1);
        for cycle in magnitude.chunks_exact(period) {
            open.push(cycle.iter().filter(|m| **m < median).count() as f64 / period as f64);
        }
    }
    GlottalFeatures {
        hnr_db,
        nacf_peak_mean,
        quasi_open_quotient: math::mean(&open),
        residual_energy_ratio: math::mean(&ratios),
    }
}
