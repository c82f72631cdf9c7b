//! Audio clips and the DSP primitives the speech features are built from.

mod audio;
mod frame;
mod lpc;
mod mfcc;
pub use mfcc::{hz_to_mel, mel_to_hz, mfcc, MelFilterbank, MfccExtractor};
mod pitch;

pub use audio::AudioClip;
pub use frame::{energy_contour, frame_signal, FrameTrack, Window};
pub use lpc::{find_roots, formants, formants_with_bandwidths, lpc, lpc_residual, Formant};

pub use pitch::{pitch_track, PitchFrame, PitchTrack};

/// Analysis parameters shared by every speech feature extractor.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SignalConfig {
    pub pitch_frame_ms: f64,
    pub pitch_hop_ms: f64,
    pub mfcc_frame_ms: f64,
    pub mfcc_hop_ms: f64,
    pub fmin_hz: f64,
    pub fmax_hz: f64,
    pub voicing_threshold: f64,
    /// `None` selects `2 + sample_rate_hz / 1000`.
    pub lpc_order: Option<usize>,
    pub pre_emphasis: f64,
    pub max_formant_bandwidth_hz: f64,
    pub mel_floor: f64,
    pub n_mels: usize,
    pub n_mfcc: usize,
    /// Pause threshold as a fraction of the median voiced-frame energy.
    pub pause_energy_ratio: f64,
}

impl Default for SignalConfig {
    fn default() -> Self {
        Self {
            pitch_frame_ms: 40.0,
            pitch_hop_ms: 10.0,
            mfcc_frame_ms: 25.0,
            mfcc_hop_ms: 10.0,
            fmin_hz: 60.0,
            fmax_hz: 400.0,
            voicing_threshold: 0.45,
            lpc_order: None,
            pre_emphasis: 0.97,
            max_formant_bandwidth_hz: 400.0,
            mel_floor: 1e-10,
            n_mels: 26,
            n_mfcc: 13,
            pause_energy_ratio: 0.1,
        }
    }
}

impl SignalConfig {
    pub fn lpc_order_for(&self, sample_rate_hz: u32) -> usize {
        self.lpc_order
            .unwrap_or_else(|| 2 + crate::math::round(sample_rate_hz as f64 / 1000.0) as usize)
    }
}
