use alloc::vec::Vec;

use super::analysis::{runs, SpeechAnalysis};
use crate::math;

/// Intonation, loudness and timing statistics (f_pr).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProsodyFeatures {
    pub f0_mean_hz: f64,
    pub f0_std_hz: f64,
    pub f0_range_hz: f64,
    pub energy_mean: f64,
    pub energy_std: f64,
    /// Non-pause segments per second.
    pub voiced_segment_rate: f64,
    pub pause_fraction: f64,
    pub mean_voiced_run_s: f64,
    pub mean_pause_run_s: f64,
}

impl ProsodyFeatures {
    pub const NAMES: [&'static str; 9] = [
        "pr_f0_mean_hz",
        "pr_f0_std_hz",
        "pr_f0_range_hz",
        "pr_energy_mean",
        "pr_energy_std",
        "pr_voiced_segment_rate",
        "pr_pause_fraction",
        "pr_mean_voiced_run_s",
        "pr_mean_pause_run_s",
    ];

    pub fn to_vec(&self) -> Vec<f64> {
        alloc::vec![
            self.f0_mean_hz,
            self.f0_std_hz,
            self.f0_range_hz,
            self.energy_mean,
            self.energy_std,
            self.voiced_segment_rate,
            self.pause_fraction,
            self.mean_voiced_run_s,
            self.mean_pause_run_s,
        ]
    }
}

pub(crate) fn prosody(analysis: &SpeechAnalysis<'_>) -> ProsodyFeatures {
    let f0 = analysis.pitch.voiced_f0();
    let (f0_min, f0_max) = f0
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &f| {
            (lo.min(f), hi.max(f))
        });
    let f0_range_hz = if f0.is_empty() { 0.0 } else { f0_max - f0_min };

    let pause = analysis.pause_mask();
    let total = pause.len().max(1) as f64;
    let hop_s = analysis.frames.hop_s();
    let segments = runs(&pause);
    let lengths = |is_pause: bool| -> Vec<f64> {
        segments
            .iter()
            .filter(|s| s.2 == is_pause)
            .map(|s| (s.1 - s.0 + 1) as f64 * hop_s)
            .collect()
    };
    let speech_runs = lengths(false);
    let pause_runs = lengths(true);

    ProsodyFeatures {
        f0_mean_hz: math::mean(&f0),
        f0_std_hz: math::std_dev(&f0),
        f0_range_hz,
        energy_mean: math::mean(&analysis.energy),
        energy_std: math::std_dev(&analysis.energy),
        voiced_segment_rate: speech_runs.len() as f64 / analysis.clip.duration_s(),
        pause_fraction: pause.iter().filter(|p| **p).count() as f64 / total,
        mean_voiced_run_s: math::mean(&speech_runs),
        mean_pause_run_s: math::mean(&pause_runs),
    }
}
