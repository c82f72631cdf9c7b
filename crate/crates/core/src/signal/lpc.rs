use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Linear-prediction coefficients `a_1..a_order` of the all-pole model
/// `x[t] = sum_k a_k x[t-k] + e[t]`, by the autocorrelation method and
/// Levinson-Durbin recursion.
pub fn lpc(frame: &[f64], order: usize) -> Result<Vec<f64>> {
    if order == 0 || order >= frame.len() {
        return Err(Error::InvalidParameter(
            "LPC order must be in 1..frame length".into(),
        ));
    }
    let r: Vec<f64> = (0..=order)
        .map(|lag| {
            frame[..frame.len() - lag]
                .iter()
                .zip(&frame[lag..])
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    if !(r[0] > f64::MIN_POSITIVE) {
        return Err(Error::SingularAutocorrelation);
    }
    let mut a = vec![0.0; order + 1];
    let mut prev = vec![0.0; order + 1];
    let mut err = r[0];
    for i in 1..=order {
        // A perfectly predictable frame: higher orders add nothing.
        if err <= r[0] * 1e-12 {
            break;
        }
        let acc = r[i] - (1..i).map(|j| a[j] * r[i - j]).sum::<f64>();
        let k = acc / err;
        prev[..i].copy_from_slice(&a[..i]);
        a[i] = k;
        for j in 1..i {
            a[j] = prev[j] - k * prev[i - j];
        }
        err *= 1.0 - k * k;
    }
    a.remove(0);
    Ok(a)
}

/// Prediction residual `e[t] = x[t] - sum_k a_k x[t-k]` (zero history before the frame).
pub fn lpc_residual(frame: &[f64], coeffs: &[f64]) -> Vec<f64> {
    (0..frame.len())
        .map(|t| {
            let pred: f64 = coeffs
                .iter()
                .enumerate()
                .take_while(|(k, _)| *k < t)
                .map(|(k, a)| a * frame[t - k - 1])
                .sum();
            frame[t] - pred
        })
        .collect()
}

/// Roots of the monic polynomial `z^n + c[0] z^(n-1) + ... + c[n-1]`
/// by Aberth-Ehrlich iteration.
pub fn find_roots(monic_tail: &[f64]) -> Vec<Complex64> {
    let n = monic_tail.len();
    if n == 0 {
        return Vec::new();
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    coeffs.extend_from_slice(monic_tail);

    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in &coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };

    // Cauchy bound on root magnitude.
    let bound = 1.0 + monic_tail.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let radius = bound.clamp(0.5, 2.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64 + 0.4;
            Complex64::new(radius * math::cos(theta), radius * math::sin(theta))
        })
        .collect();

    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 {
                ratio
            } else {
                ratio / denom
            };
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// One resonance of the LPC polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Formant {
    pub frequency_hz: f64,
    pub bandwidth_hz: f64,
}

/// Roots closer than this to DC or Nyquist are not formants.
const EDGE_GUARD_HZ: f64 = 50.0;

pub fn formants_with_bandwidths(
    coeffs: &[f64],
    sample_rate_hz: u32,
    max_bandwidth_hz: f64,
) -> Vec<Formant> {
    let rate = sample_rate_hz as f64;
    let tail: Vec<f64> = coeffs.iter().map(|a| -a).collect();
    let mut out: Vec<Formant> = find_roots(&tail)
        .into_iter()
        .filter(|r| r.im > 1e-12 && r.is_finite())
        .map(|r| Formant {
            frequency_hz: math::atan2(r.im, r.re) * rate / (2.0 * PI),
            bandwidth_hz: -math::ln(r.norm()) * rate / PI,
        })
        .filter(|f| {
            f.bandwidth_hz <= max_bandwidth_hz
                && f.frequency_hz > EDGE_GUARD_HZ
                && f.frequency_hz < rate / 2.0 - EDGE_GUARD_HZ
        })
        .collect();
    out.sort_by(|a, b| a.frequency_hz.total_cmp(&b.frequency_hz));
    out
}

/// Formant frequencies (ascending) from LPC coefficients; may be empty.
pub fn formants(coeffs: &[f64], sample_rate_hz: u32, max_bandwidth_hz: f64) -> Vec<f64> {
    formants_with_bandwidths(coeffs, sample_rate_hz, max_bandwidth_hz)
        .into_iter()
        .map(|f| f.frequency_hz)
        .collect()
}
