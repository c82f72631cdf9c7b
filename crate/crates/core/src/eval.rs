//! Metrics, session aggregation, correlation analysis, ablation masking and
//! a synthetic fused-feature dataset.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::cognitive::COGNITIVE_DIM;
use crate::error::{Error, Result};
use crate::fusion::{Sample, Task};
use crate::math;
use crate::ssgan::{self, SSGanConfig, TrainRun};

/// Root mean squared error, invariant to the order of the pairs.
pub fn rmse(preds: &[f64], truths: &[f64]) -> Result<f64> {
    if preds.len() != truths.len() {
        return Err(Error::LengthMismatch {
            left: preds.len(),
            right: truths.len(),
        });
    }
    if preds.is_empty() {
        return Err(Error::Empty);
    }
    let mut sq: Vec<f64> = preds
        .iter()
        .zip(truths)
        .map(|(p, t)| (p - t) * (p - t))
        .collect();
    Ok(math::sqrt(math::sorted_sum(&mut sq) / preds.len() as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Aggregation {
    #[default]
    Median,
    Mean,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SessionScore {
    pub session_id: String,
    pub clip_scores: Vec<f64>,
    pub external_score: Option<f64>,
}

/// Session-level score from clip scores; even-count medians average the middle two.
pub fn aggregate_session(scores: &SessionScore, method: Aggregation) -> Result<f64> {
    if scores.clip_scores.is_empty() {
        return Err(Error::Empty);
    }
    Ok(match method {
        Aggregation::Median => math::median(&scores.clip_scores),
        Aggregation::Mean => {
            scores.clip_scores.iter().sum::<f64>() / scores.clip_scores.len() as f64
        }
    })
}

/// Pearson correlation coefficient, clamped to `[-1, 1]`.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 3 {
        return Err(Error::InvalidParameter(
            "correlation needs at least 3 points".into(),
        ));
    }
    let (ma, mb) = (math::mean(a), math::mean(b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok((sab / math::sqrt(saa * sbb)).clamp(-1.0, 1.0))
}

/// Symmetric 2x2 Pearson matrix with unit diagonal.
pub fn correlation_matrix(a: &[f64], b: &[f64]) -> Result<[[f64; 2]; 2]> {
    let r = pearson(a, b)?;
    Ok([[1.0, r], [r, 1.0]])
}

/// Which parts of h_T are visible to the discriminator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AblationMode {
    /// Affective state only.
    A,
    /// Cognitive state only.
    C,
    /// Both.
    AC,
}

impl AblationMode {
    pub const ALL: [AblationMode; 3] = [AblationMode::A, AblationMode::C, AblationMode::AC];

    pub fn name(self) -> &'static str {
        match self {
            AblationMode::A => "A",
            AblationMode::C => "C",
            AblationMode::AC => "AC",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(AblationMode::A),
            "C" | "c" => Ok(AblationMode::C),
            "AC" | "ac" | "A&C" => Ok(AblationMode::AC),
            other => Err(Error::InvalidParameter(format!(
                "unknown ablation mode {other:?}"
            ))),
        }
    }

    /// Zeroes the hidden segment in place; h_C occupies the first
    /// `COGNITIVE_DIM` entries.
    pub fn mask(self, features: &mut [f64]) {
        let split = COGNITIVE_DIM.min(features.len());
        match self {
            AblationMode::A => features[..split].iter_mut().for_each(|v| *v = 0.0),
            AblationMode::C => features[split..].iter_mut().for_each(|v| *v = 0.0),
            AblationMode::AC => {}
        }
    }

    pub fn mask_samples(self, samples: &[Sample]) -> Vec<Sample> {
        samples
            .iter()
            .map(|s| {
                let mut s = s.clone();
                self.mask(&mut s.features);
                s
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AblationResult {
    pub mode: AblationMode,
    pub seed: u64,
    pub val_rmse: f64,
}

/// Trains one masked run and reports its final-epoch validation RMSE.
pub fn run_ablation_case(
    labeled: &[Sample],
    unlabeled: &[Sample],
    validation: &[Sample],
    config: &SSGanConfig,
    mode: AblationMode,
    seed: u64,
) -> Result<(AblationResult, TrainRun)> {
    let cfg = SSGanConfig {
        seed,
        ..config.clone()
    };
    let val = mode.mask_samples(validation);
    let run = ssgan::train(
        &mode.mask_samples(labeled),
        &mode.mask_samples(unlabeled),
        &val,
        &cfg,
    )?;
    let val_rmse = validation_rmse(&run, &val)?;
    Ok((
        AblationResult {
            mode,
            seed,
            val_rmse,
        },
        run,
    ))
}

/// Every (mode, seed) combination, modes outermost.
pub fn run_ablation(
    labeled: &[Sample],
    unlabeled: &[Sample],
    validation: &[Sample],
    config: &SSGanConfig,
    modes: &[AblationMode],
    seeds: &[u64],
) -> Result<Vec<AblationResult>> {
    let mut out = Vec::with_capacity(modes.len() * seeds.len());
    for &mode in modes {
        for &seed in seeds {
            out.push(run_ablation_case(labeled, unlabeled, validation, config, mode, seed)?.0);
        }
    }
    Ok(out)
}

/// RMSE of the final model over the labeled validation samples.
pub fn validation_rmse(run: &TrainRun, validation: &[Sample]) -> Result<f64> {
    let val: Vec<Sample> = validation
        .iter()
        .filter(|s| s.is_labeled())
        .cloned()
        .collect();
    if val.is_empty() {
        return Err(Error::Empty);
    }
    let pred = run.final_model.predict_samples(&val)?;
    let truth = ssgan::target_matrix(&val, run.config.task)?;
    rmse(pred.as_slice(), truth.as_slice())
}

/// Which fused dimensions drive the synthetic target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Dependence {
    #[default]
    All,
    CognitiveOnly,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SynthConfig {
    pub n_labeled: usize,
    pub n_unlabeled: usize,
    pub n_val: usize,
    pub noise_sd: f64,
    pub seed: u64,
    pub dim: usize,
    pub components: usize,
    /// Spread of the component means relative to the unit within-component sd.
    pub separation: f64,
    /// Standard deviation of the logit `w·h + b` over the population.
    pub logit_sd: f64,
    pub dependence: Dependence,
    pub task: Task,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_labeled: 100,
            n_unlabeled: 2000,
            n_val: 500,
            noise_sd: 0.0,
            seed: 0,
            dim: crate::cognitive::COGNITIVE_DIM
                + crate::affect::AUDIO_AFFECT_DIM
                + crate::affect::VIDEO_AFFECT_DIM
                + crate::affect::DEFAULT_TEXT_AFFECT_DIM,
            components: 4,
            separation: 2.0,
            logit_sd: 1.5,
            dependence: Dependence::All,
            task: Task::Engagement,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SynthDataset {
    pub labeled: Vec<Sample>,
    pub unlabeled: Vec<Sample>,
    pub validation: Vec<Sample>,
}

/// Default-shaped synthetic dataset.
pub fn synth_dataset(
    n_labeled: usize,
    n_unlabeled: usize,
    n_val: usize,
    noise_sd: f64,
    seed: u64,
) -> Result<SynthDataset> {
    synth_dataset_with(&SynthConfig {
        n_labeled,
        n_unlabeled,
        n_val,
        noise_sd,
        seed,
        ..SynthConfig::default()
    })
}

/// Features from an equal-weight Gaussian mixture; each target is
/// `sigmoid(w·h + b) + N(0, noise_sd)` clamped to `[0, 1]`, with `(w, b)`
/// fixed by the seed. Unlabeled samples carry no targets.
pub fn synth_dataset_with(cfg: &SynthConfig) -> Result<SynthDataset> {
    if cfg.n_labeled == 0 || cfg.n_unlabeled == 0 || cfg.n_val == 0 {
        return Err(Error::InvalidParameter(
            "synthetic set sizes must be at least 1".into(),
        ));
    }
    if cfg.dim == 0 || cfg.components == 0 || !(cfg.noise_sd >= 0.0) {
        return Err(Error::InvalidParameter(
            "invalid synthetic dataset shape".into(),
        ));
    }
    let active = match cfg.dependence {
        Dependence::All => cfg.dim,
        Dependence::CognitiveOnly => COGNITIVE_DIM.min(cfg.dim),
    };
    let k = cfg.task.output_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let means: Vec<Vec<f64>> = (0..cfg.components)
        .map(|_| {
            (0..cfg.dim)
                .map(|_| cfg.separation * gauss(&mut rng))
                .collect()
        })
        .collect();
    // Per-dimension population variance: unit within-component plus spread of the means.
    let pop_var: Vec<f64> = (0..cfg.dim)
        .map(|j| {
            let col: Vec<f64> = means.iter().map(|m| m[j]).collect();
            let s = math::std_dev(&col);
            1.0 + s * s
        })
        .collect();
    let mut heads = Vec::with_capacity(k);
    for _ in 0..k {
        let mut w: Vec<f64> = (0..cfg.dim)
            .map(|j| if j < active { gauss(&mut rng) } else { 0.0 })
            .collect();
        let var: f64 = w.iter().zip(&pop_var).map(|(w, v)| w * w * v).sum();
        let scale = if var > 0.0 {
            cfg.logit_sd / math::sqrt(var)
        } else {
            0.0
        };
        w.iter_mut().for_each(|v| *v *= scale);
        let centre: f64 = (0..cfg.dim)
            .map(|j| w[j] * means.iter().map(|m| m[j]).sum::<f64>() / cfg.components as f64)
            .sum();
        heads.push((w, -centre));
    }
    let noise = Normal::new(0.0, cfg.noise_sd.max(f64::MIN_POSITIVE))
        .map_err(|_| Error::InvalidParameter("noise_sd".into()))?;

    let draw = |set: &str, n: usize, labeled: bool, rng: &mut ChaCha8Rng| -> Vec<Sample> {
        (0..n)
            .map(|i| {
                let c = rng.random_range(0..cfg.components);
                let features: Vec<f64> = means[c].iter().map(|m| m + gauss(rng)).collect();
                let targets: Vec<f64> = heads
                    .iter()
                    .map(|(w, b)| {
                        let logit = w.iter().zip(&features).map(|(a, x)| a * x).sum::<f64>() + b;
                        let eps = if cfg.noise_sd > 0.0 {
                            noise.sample(rng)
                        } else {
                            0.0
                        };
                        (math::sigmoid(logit) + eps).clamp(0.0, 1.0)
                    })
                    .collect();
                Sample {
                    features,
                    targets: labeled.then_some(targets),
                    clip_id: format!("{set}-{i:05}"),
                    session_id: format!("{set}-session-{:03}", i / 10),
                    speaker_id: format!("{set}-speaker-{:03}", i / 20),
                }
            })
            .collect()
    };
    let labeled = draw("lab", cfg.n_labeled, true, &mut rng);
    let unlabeled = draw("unl", cfg.n_unlabeled, false, &mut rng);
    let validation = draw("val", cfg.n_val, true, &mut rng);
    Ok(SynthDataset {
        labeled,
        unlabeled,
        validation,
    })
}

fn gauss<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Reference ablation RMSEs reported for the engagement task, for documentation only.
pub const REFERENCE_ENGAGEMENT_ABLATION: [(AblationMode, f64); 3] = [
    (AblationMode::A, 0.24),
    (AblationMode::C, 0.3),
    (AblationMode::AC, 0.10),
];
