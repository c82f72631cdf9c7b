//! Synthetic speech-like signals with known parameters.
#![allow(dead_code)]

use std::f64::consts::PI;

use engage_core::signal::AudioClip;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub const RATE: u32 = 16_000;

pub fn clip(samples: Vec<f64>) -> AudioClip {
    AudioClip::new(samples, RATE, "synthetic").unwrap()
}

pub fn tone(freq: f64, secs: f64, amp: f64) -> Vec<f64> {
    let n = (secs * RATE as f64).round() as usize;
    (0..n)
        .map(|i| amp * (2.0 * PI * freq * i as f64 / RATE as f64).sin())
        .collect()
}

pub fn silence(secs: f64) -> Vec<f64> {
    vec![0.0; (secs * RATE as f64).round() as usize]
}

pub fn noise(n: usize, sd: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            sd * z
        })
        .collect()
}

/// Gaussian pulses (width `sigma_s`) whose onsets are separated by `periods`
/// (seconds); pulse k has height `amps[k % amps.len()]`.
pub fn pulse_train(periods: &[f64], amps: &[f64], sigma_s: f64, secs: f64) -> Vec<f64> {
    let n = (secs * RATE as f64).round() as usize;
    let mut out = vec![0.0; n];
    let mut t = 0.01;
    let reach = (6.0 * sigma_s * RATE as f64).ceil() as isize;
    for (k, p) in periods.iter().enumerate() {
        if t >= secs {
            break;
        }
        let centre = t * RATE as f64;
        let c = centre.round() as isize;
        for i in (c - reach).max(0)..(c + reach + 1).min(n as isize) {
            let d = (i as f64 - centre) / RATE as f64;
            out[i as usize] += amps[k % amps.len()] * (-d * d / (2.0 * sigma_s * sigma_s)).exp();
        }
        t += p;
    }
    out
}

/// `count` periods around `1/f0` whose local jitter is exactly `jitter`.
pub fn jittered_periods(f0: f64, jitter: f64, count: usize, seed: u64) -> Vec<f64> {
    let base = 1.0 / f0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<f64> = (0..count)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    let raw: Vec<f64> = u.iter().map(|x| base * (1.0 + 0.01 * x)).collect();
    let measured = local_jitter(&raw);
    // Rescale deviations from the base period so the sequence hits the target.
    let scale = jitter / measured;
    let scaled: Vec<f64> = raw.iter().map(|p| base + (p - base) * scale).collect();
    let check = local_jitter(&scaled);
    let fine = jitter / check;
    scaled.iter().map(|p| base + (p - base) * fine).collect()
}

/// Reference local jitter of a period sequence.
pub fn local_jitter(periods: &[f64]) -> f64 {
    let d: f64 =
        periods.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (periods.len() - 1) as f64;
    d / (periods.iter().sum::<f64>() / periods.len() as f64)
}

/// All-pole filter with one resonance per `(centre_hz, bandwidth_hz)`.
pub fn resonate(excitation: &[f64], poles: &[(f64, f64)]) -> Vec<f64> {
    let rate = RATE as f64;
    let mut y = excitation.to_vec();
    for &(f, bw) in poles {
        let r = (-PI * bw / rate).exp();
        let a1 = 2.0 * r * (2.0 * PI * f / rate).cos();
        let a2 = -r * r;
        let input = y.clone();
        for t in 0..y.len() {
            let mut v = input[t];
            if t >= 1 {
                v += a1 * y[t - 1];
            }
            if t >= 2 {
                v += a2 * y[t - 2];
            }
            y[t] = v;
        }
    }
    normalize(&mut y, 0.8);
    y
}

pub fn normalize(x: &mut [f64], peak: f64) {
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m > 0.0 {
        for v in x.iter_mut() {
            *v *= peak / m;
        }
    }
}

/// A steady vowel: 120 Hz pulse excitation through two formant resonators.
pub fn vowel(f1: f64, f2: f64, secs: f64) -> Vec<f64> {
    let periods = vec![1.0 / 120.0; (secs * 130.0) as usize];
    let src = pulse_train(&periods, &[1.0], 0.00005, secs);
    resonate(&src, &[(f1, 80.0), (f2, 100.0)])
}
