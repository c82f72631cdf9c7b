use alloc::vec::Vec;

use super::FrameTrack;
use crate::error::{Error, Result};
use crate::math;

/// Pitch decision for one analysis frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PitchFrame {
    /// Fundamental frequency when voiced.
    pub f0_hz: Option<f64>,
    /// Height of the normalized-autocorrelation peak, in `[0, 1]`.
    pub strength: f64,
}

impl PitchFrame {
    pub const UNVOICED: PitchFrame = PitchFrame {
        f0_hz: None,
        strength: 0.0,
    };

    pub fn is_voiced(&self) -> bool {
        self.f0_hz.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PitchTrack {
    pub frames: Vec<PitchFrame>,
    pub voicing_fraction: f64,
    pub fmin_hz: f64,
    pub fmax_hz: f64,
}

impl PitchTrack {
    pub fn voiced_f0(&self) -> Vec<f64> {
        self.frames.iter().filter_map(|f| f.f0_hz).collect()
    }
}

/// Normalized autocorrelation pitch tracker.
///
/// Each frame is mean-removed, then the lag in `[rate/fmax, rate/fmin]`
/// maximizing the normalized cross-correlation between the frame and its
/// lagged copy is refined by parabolic interpolation. Frames whose peak is
/// below `voicing_threshold` (or that have no interior peak) are unvoiced.
pub fn pitch_track(
    track: &FrameTrack,
    fmin_hz: f64,
    fmax_hz: f64,
    voicing_threshold: f64,
) -> Result<PitchTrack> {
    let rate = track.sample_rate_hz as f64;
    if !(fmin_hz > 0.0 && fmin_hz < fmax_hz && fmax_hz < rate / 2.0) {
        return Err(Error::InvalidParameter(
            "need 0 < fmin < fmax < rate/2".into(),
        ));
    }
    let frames: Vec<PitchFrame> = track
        .frames
        .iter()
        .map(|f| frame_pitch(f, rate, fmin_hz, fmax_hz, voicing_threshold))
        .collect();
    let voiced = frames.iter().filter(|f| f.is_voiced()).count();
    let voicing_fraction = if frames.is_empty() {
        0.0
    } else {
        voiced as f64 / frames.len() as f64
    };
    Ok(PitchTrack {
        frames,
        voicing_fraction,
        fmin_hz,
        fmax_hz,
    })
}

/// Peaks within this fraction of the global maximum compete; the shortest lag wins.
const OCTAVE_TOLERANCE: f64 = 0.95;

fn frame_pitch(frame: &[f64], rate: f64, fmin: f64, fmax: f64, threshold: f64) -> PitchFrame {
    let n = frame.len();
    let mean = math::mean(frame);
    let x: Vec<f64> = frame.iter().map(|s| s - mean).collect();
    let energy: f64 = x.iter().map(|s| s * s).sum();
    if !(energy > 1e-20 * n as f64) {
        return PitchFrame::UNVOICED;
    }
    let min_lag = (math::floor(rate / fmax) as usize).max(2);
    let max_lag = (math::ceil(rate / fmin) as usize).min(n.saturating_sub(2));
    if min_lag + 2 > max_lag {
        return PitchFrame::UNVOICED;
    }

    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for s in &x {
        acc += s * s;
        prefix.push(acc);
    }
    let lo = min_lag - 1;
    let hi = max_lag + 1;
    let nccf: Vec<f64> = (lo..=hi)
        .map(|lag| {
            let m = n - lag;
            let dot: f64 = x[..m].iter().zip(&x[lag..]).map(|(a, b)| a * b).sum();
            let e0 = prefix[m];
            let e1 = prefix[n] - prefix[lag];
            let denom = math::sqrt(e0 * e1);
            if denom > 0.0 {
                dot / denom
            } else {
                0.0
            }
        })
        .collect();

    // Interior local maxima only; index i in `nccf` is lag `lo + i`.
    let peaks: Vec<usize> = (1..nccf.len() - 1)
        .filter(|&i| nccf[i] > nccf[i - 1] && nccf[i] >= nccf[i + 1])
        .collect();
    let best = match peaks.iter().map(|&i| nccf[i]).max_by(f64::total_cmp) {
        Some(v) if v > 0.0 => v,
        _ => return PitchFrame::UNVOICED,
    };
    let i = peaks
        .into_iter()
        .find(|&i| nccf[i] >= OCTAVE_TOLERANCE * best)
        .expect("the maximum itself qualifies");

    let (ym, y0, yp) = (nccf[i - 1], nccf[i], nccf[i + 1]);
    let curvature = ym - 2.0 * y0 + yp;
    let delta = if curvature < 0.0 {
        (0.5 * (ym - yp) / curvature).clamp(-0.5, 0.5)
    } else {
        0.0
    };
    let strength = (y0 - 0.25 * (ym - yp) * delta).clamp(0.0, 1.0);
    let lag = (lo + i) as f64 + delta;
    let f0 = rate / lag;
    if strength < threshold || f0 < fmin || f0 > fmax {
        return PitchFrame {
            f0_hz: None,
            strength,
        };
    }
    PitchFrame {
        f0_hz: Some(f0),
        strength,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{frame_signal, AudioClip, Window};
    use alloc::vec;
    use core::f64::consts::PI;
    use rand::{Rng, SeedableRng};

    fn sine(freq: f64, secs: f64, rate: u32, amp: f64, dc: f64) -> AudioClip {
        let n = (secs * rate as f64) as usize;
        let s = (0..n)
            .map(|i| dc + amp * math::sin(2.0 * PI * freq * i as f64 / rate as f64))
            .collect();
        AudioClip::new(s, rate, "sine").unwrap()
    }

    fn track(clip: &AudioClip) -> PitchTrack {
        let t = frame_signal(clip, 40.0, 10.0, Window::Rectangular).unwrap();
        pitch_track(&t, 60.0, 400.0, 0.45).unwrap()
    }

    #[test]
    fn hundred_hz_sine_is_voiced_at_100() {
        let p = track(&sine(100.0, 1.0, 16_000, 0.5, 0.0));
        assert_eq!(p.voicing_fraction, 1.0);
        for f in p.voiced_f0() {
            assert!((f - 100.0).abs() < 2.0, "{f}");
        }
    }

    #[test]
    fn silence_is_unvoiced() {
        let c = AudioClip::new(vec![0.0; 16_000], 16_000, "s").unwrap();
        let p = track(&c);
        assert_eq!(p.voicing_fraction, 0.0);
        assert!(p.frames.iter().all(|f| !f.is_voiced()));
    }

    #[test]
    fn white_noise_is_mostly_unvoiced() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let s = (0..16_000).map(|_| rng.random_range(-0.5..0.5)).collect();
        let c = AudioClip::new(s, 16_000, "n").unwrap();
        let p = track(&c);
        assert!(p.voicing_fraction < 0.2, "{}", p.voicing_fraction);
    }

    #[test]
    fn dc_offset_does_not_move_f0() {
        for (freq, dc) in [(120.0, 0.1), (210.0, -0.08), (95.0, 0.05)] {
            let a = track(&sine(freq, 0.5, 16_000, 0.6, 0.0)).voiced_f0();
            let b = track(&sine(freq, 0.5, 16_000, 0.6, dc)).voiced_f0();
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1.0);
            }
        }
    }

    #[test]
    fn rejects_bad_range() {
        let t = frame_signal(
            &sine(100.0, 0.2, 16_000, 0.5, 0.0),
            40.0,
            10.0,
            Window::Rectangular,
        )
        .unwrap();
        assert!(pitch_track(&t, 400.0, 60.0, 0.45).is_err());
        assert!(pitch_track(&t, 60.0, 9000.0, 0.45).is_err());
    }
}
