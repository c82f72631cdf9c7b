use alloc::vec::Vec;

use crate::error::Result;
use crate::math;
use crate::signal::{
    energy_contour, frame_signal, pitch_track, AudioClip, FrameTrack, PitchTrack, SignalConfig,
    Window,
};

/// Minimum clip duration accepted by the speech feature extractors.
pub const MIN_CLIP_S: f64 = 0.5;

/// Pitch and energy tracks shared by all speech feature families.
#[derive(Debug, Clone)]
pub struct SpeechAnalysis<'a> {
    pub clip: &'a AudioClip,
    pub config: &'a SignalConfig,
    /// Rectangular pitch-analysis frames.
    pub frames: FrameTrack,
    pub pitch: PitchTrack,
    /// Full-frame RMS.
    pub energy: Vec<f64>,
    /// RMS of the hop-length slice centred in each frame.
    pub centre_energy: Vec<f64>,
}

impl<'a> SpeechAnalysis<'a> {
    pub fn new(clip: &'a AudioClip, config: &'a SignalConfig) -> Result<Self> {
        clip.require_speech(MIN_CLIP_S)?;
        let frames = frame_signal(
            clip,
            config.pitch_frame_ms,
            config.pitch_hop_ms,
            Window::Rectangular,
        )?;
        let pitch = pitch_track(
            &frames,
            config.fmin_hz,
            config.fmax_hz,
            config.voicing_threshold,
        )?;
        let energy = energy_contour(&frames);
        let offset = (frames.frame_len - frames.hop.min(frames.frame_len)) / 2;
        let width = frames.hop.min(frames.frame_len);
        let samples = clip.samples();
        let centre_energy = (0..frames.len())
            .map(|i| {
                let s = &samples
                    [frames.frame_start(i) + offset..frames.frame_start(i) + offset + width];
                math::sqrt(s.iter().map(|x| x * x).sum::<f64>() / width as f64)
            })
            .collect();
        Ok(Self {
            clip,
            config,
            frames,
            pitch,
            energy,
            centre_energy,
        })
    }

    pub fn sample_rate(&self) -> f64 {
        self.clip.sample_rate_hz() as f64
    }

    pub fn is_voiced(&self, frame: usize) -> bool {
        self.pitch.frames[frame].is_voiced()
    }

    /// Maximal runs `[first, last]` of consecutive voiced frames.
    pub fn voiced_runs(&self) -> Vec<(usize, usize)> {
        runs(
            &self
                .pitch
                .frames
                .iter()
                .map(|f| f.is_voiced())
                .collect::<Vec<_>>(),
        )
        .into_iter()
        .filter(|r| r.2)
        .map(|r| (r.0, r.1))
        .collect()
    }

    /// Raw (unwindowed) samples of pitch frame `index`.
    pub fn frame_samples(&self, index: usize) -> &'a [f64] {
        let start = self.frames.frame_start(index);
        &self.clip.samples()[start..start + self.frames.frame_len]
    }

    /// Pause frames: unvoiced, and the centre slice is quieter than the
    /// configured fraction of the median voiced centre energy.
    pub fn pause_mask(&self) -> Vec<bool> {
        let voiced: Vec<f64> = (0..self.frames.len())
            .filter(|&i| self.is_voiced(i))
            .map(|i| self.centre_energy[i])
            .collect();
        let reference = if voiced.is_empty() {
            math::median(&self.centre_energy)
        } else {
            math::median(&voiced)
        };
        let threshold = self.config.pause_energy_ratio * reference;
        (0..self.frames.len())
            .map(|i| !self.is_voiced(i) && self.centre_energy[i] <= threshold)
            .collect()
    }
}

/// Maximal runs of equal values as `(first, last, value)`.
pub(crate) fn runs(mask: &[bool]) -> Vec<(usize, usize, bool)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=mask.len() {
        if i == mask.len() || mask[i] != mask[start] {
            if start < mask.len() {
                out.push((start, i - 1, mask[start]));
            }
            start = i;
        }
    }
    out
}

/// Cycle-level glottal pulses detected inside one voiced run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseRun {
    pub times_s: Vec<f64>,
    pub amplitudes: Vec<f64>,
}

impl PulseRun {
    pub fn periods(&self) -> Vec<f64> {
        self.times_s.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Locates one pulse per pitch period in every voiced run.
///
/// Tracking starts at the largest extremum of the run and steps forward and
/// backward; each next pulse is the extremum within 0.7..1.3 local periods of
/// its neighbour, refined to sub-sample position and height. Polarity is
/// taken from the larger signed extremum of the run.
pub fn detect_pulses(analysis: &SpeechAnalysis<'_>) -> Vec<PulseRun> {
    let rate = analysis.sample_rate();
    let samples = analysis.clip.samples();
    let frames = &analysis.frames;
    analysis
        .voiced_runs()
        .into_iter()
        .filter_map(|(first, last)| {
            let begin = frames.frame_start(first);
            let end = frames.frame_start(last) + frames.frame_len;
            let seg = &samples[begin..end];
            let mean = math::mean(seg);
            let max_pos = seg.iter().fold(f64::MIN, |m, &x| m.max(x - mean));
            let max_neg = seg.iter().fold(f64::MIN, |m, &x| m.max(mean - x));
            let sign = if max_pos >= max_neg { 1.0 } else { -1.0 };
            let signal: Vec<f64> = seg.iter().map(|&x| sign * x).collect();

            // Local period (in samples) from the voiced frame centred nearest `pos`.
            let period_at = |pos: f64| -> f64 {
                let centre0 = (frames.frame_len as f64) / 2.0;
                let idx = math::round((begin as f64 + pos - centre0) / frames.hop as f64);
                let idx = (idx.max(first as f64) as usize).min(last);
                let f0 = analysis.pitch.frames[idx]
                    .f0_hz
                    .expect("frame inside a voiced run");
                rate / f0
            };

            let anchor = (0..signal.len())
                .max_by(|&a, &b| signal[a].total_cmp(&signal[b]))
                .unwrap();
            let anchor = refine_peak(&signal, anchor);
            let track = |direction: f64| -> Vec<(f64, f64)> {
                let mut found = Vec::new();
                let mut pos = anchor.0;
                loop {
                    let period = period_at(pos);
                    let a = pos + direction * 0.7 * period;
                    let b = pos + direction * 1.3 * period;
                    let (lo, hi) = (a.min(b), a.max(b));
                    if lo < 0.0 || hi >= signal.len() as f64 {
                        break;
                    }
                    let (lo, hi) = (math::ceil(lo) as usize, math::floor(hi) as usize);
                    let peak = (lo..=hi)
                        .max_by(|&x, &y| signal[x].total_cmp(&signal[y]))
                        .unwrap();
                    let next = refine_peak(&signal, peak);
                    if (next.0 - pos) * direction <= 0.0 {
                        break;
                    }
                    found.push(next);
                    pos = next.0;
                }
                found
            };
            let mut pulses = track(-1.0);
            pulses.reverse();
            pulses.push(anchor);
            pulses.extend(track(1.0));
            let run = PulseRun {
                times_s: pulses.iter().map(|p| (begin as f64 + p.0) / rate).collect(),
                amplitudes: pulses.iter().map(|p| p.1).collect(),
            };
            (run.times_s.len() >= 2).then_some(run)
        })
        .collect()
}

/// Sub-sample peak position and height. Log-parabolic (exact for Gaussian
/// pulses) when the three samples are positive, plain parabolic otherwise.
fn refine_peak(signal: &[f64], i: usize) -> (f64, f64) {
    if i == 0 || i + 1 >= signal.len() {
        return (i as f64, signal[i]);
    }
    let (ym, y0, yp) = (signal[i - 1], signal[i], signal[i + 1]);
    if ym > 0.0 && y0 > 0.0 && yp > 0.0 {
        let (lm, l0, lp) = (math::ln(ym), math::ln(y0), math::ln(yp));
        let curvature = lm - 2.0 * l0 + lp;
        if curvature < 0.0 {
            let delta = (0.5 * (lm - lp) / curvature).clamp(-0.5, 0.5);
            return (i as f64 + delta, math::exp(l0 - 0.25 * (lm - lp) * delta));
        }
    }
    let curvature = ym - 2.0 * y0 + yp;
    if curvature >= 0.0 {
        return (i as f64, y0);
    }
    let delta = (0.5 * (ym - yp) / curvature).clamp(-0.5, 0.5);
    (i as f64 + delta, y0 - 0.25 * (ym - yp) * delta)
}
