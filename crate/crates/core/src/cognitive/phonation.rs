use alloc::vec::Vec;

use super::analysis::{detect_pulses, SpeechAnalysis};
use crate::math;

/// Voice perturbation measures (f_ph).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhonationFeatures {
    pub jitter_local: f64,
    pub shimmer_local: f64,
    pub apq5: f64,
    pub ppq5: f64,
    pub degree_unvoiced: f64,
}

impl PhonationFeatures {
    pub const NAMES: [&'static str; 5] = [
        "ph_jitter_local",
        "ph_shimmer_local",
        "ph_apq5",
        "ph_ppq5",
        "ph_degree_unvoiced",
    ];

    pub fn to_vec(&self) -> Vec<f64> {
        alloc::vec![
            self.jitter_local,
            self.shimmer_local,
            self.apq5,
            self.ppq5,
            self.degree_unvoiced
        ]
    }
}

pub(crate) fn phonation(analysis: &SpeechAnalysis<'_>) -> PhonationFeatures {
    let degree_unvoiced = 1.0 - analysis.pitch.voicing_fraction;
    let pulses = detect_pulses(analysis);
    let periods: Vec<Vec<f64>> = pulses.iter().map(|r| r.periods()).collect();
    // Amplitudes paired with the periods they open, so both series share run structure.
    let amplitudes: Vec<Vec<f64>> = pulses.iter().map(|r| r.amplitudes.clone()).collect();
    PhonationFeatures {
        jitter_local: local_perturbation(&periods),
        shimmer_local: local_perturbation(&amplitudes),
        apq5: quotient5(&amplitudes),
        ppq5: quotient5(&periods),
        degree_unvoiced,
    }
}

/// Mean absolute difference of consecutive values (within runs) over the mean value.
pub(crate) fn local_perturbation(runs: &[Vec<f64>]) -> f64 {
    let diffs: Vec<f64> = runs
        .iter()
        .flat_map(|r| r.windows(2).map(|w| (w[1] - w[0]).abs()))
        .collect();
    let all: Vec<f64> = runs.iter().flatten().copied().collect();
    let m = math::mean(&all);
    if diffs.is_empty() || !(m > 0.0) {
        return 0.0;
    }
    math::mean(&diffs) / m
}

/// Five-point perturbation quotient: mean |x_i - mean(x_{i-2..=i+2})| over the
/// mean value. Only runs with at least five values contribute.
pub(crate) fn quotient5(runs: &[Vec<f64>]) -> f64 {
    let mut devs = Vec::new();
    let mut values = Vec::new();
    for r in runs.iter().filter(|r| r.len() >= 5) {
        values.extend_from_slice(r);
        for i in 2..r.len() - 2 {
            let local = r[i - 2..=i + 2].iter().sum::<f64>() / 5.0;
            devs.push((r[i] - local).abs());
        }
    }
    let m = math::mean(&values);
    if devs.is_empty() || !(m > 0.0) {
        return 0.0;
    }
    math::mean(&devs) / m
}
