use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::losses::{
    batch_mean, fake_loss, generator_loss, interpolate, labeled_loss, unlabeled_loss,
};
use crate::error::{Error, Result};
use crate::fusion::{Sample, Task};
use crate::math;
use crate::nn::{
    optimizer_step, penalty_parameter_gradients, penalty_value, Activation, Algorithm, Gradients,
    Matrix, Network, OptimizerState,
};

/// Weights of the five training losses.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct LossWeights {
    pub lab: f64,
    pub un: f64,
    pub fake: f64,
    pub gp: f64,
    pub gen: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        Self {
            lab: 1.0,
            un: 1.0,
            fake: 1.0,
            gp: 10.0,
            gen: 1.0,
        }
    }
}

impl LossWeights {
    /// Only the supervised term active.
    pub fn labeled_only() -> Self {
        Self {
            lab: 1.0,
            un: 0.0,
            fake: 0.0,
            gp: 0.0,
            gen: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SSGanConfig {
    pub task: Task,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub noise_dim: usize,
    pub loss_weights: LossWeights,
    pub target_norm: f64,
    pub seed: u64,
    pub discriminator_hidden: Vec<usize>,
    pub generator_hidden: Vec<usize>,
    pub leaky_alpha: f64,
    pub optimizer: Algorithm,
}

impl Default for SSGanConfig {
    fn default() -> Self {
        Self {
            task: Task::Engagement,
            batch_size: 512,
            learning_rate: 1e-4,
            epochs: 50,
            noise_dim: 32,
            loss_weights: LossWeights::default(),
            target_norm: 1.0,
            seed: 0,
            discriminator_hidden: vec![128, 64],
            generator_hidden: vec![64, 128],
            leaky_alpha: 0.2,
            optimizer: Algorithm::default(),
        }
    }
}

impl SSGanConfig {
    pub fn validate(&self) -> Result<()> {
        let w = &self.loss_weights;
        let fail = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if [w.lab, w.un, w.fake, w.gp, w.gen]
            .iter()
            .any(|v| !(*v >= 0.0 && v.is_finite()))
        {
            return fail("loss weights must be finite and non-negative");
        }
        if self.batch_size < 2 {
            return fail("batch_size must be at least 2");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return fail("learning_rate must be positive");
        }
        if self.noise_dim == 0 {
            return fail("noise_dim must be positive");
        }
        if self.discriminator_hidden.is_empty() || self.discriminator_hidden.contains(&0) {
            return fail("discriminator needs at least one non-empty hidden layer");
        }
        if self.generator_hidden.contains(&0) {
            return fail("generator hidden widths must be positive");
        }
        if !(self.target_norm >= 0.0 && self.target_norm.is_finite()) {
            return fail("target_norm must be non-negative");
        }
        Ok(())
    }

    /// Discriminator with Glorot weights; its feature layer is the last hidden layer.
    pub fn build_discriminator<R: Rng + ?Sized>(
        &self,
        input_dim: usize,
        rng: &mut R,
    ) -> Result<Network> {
        let mut widths = vec![input_dim];
        widths.extend_from_slice(&self.discriminator_hidden);
        widths.push(self.task.output_dim());
        let mut acts = vec![
            Activation::LeakyRelu {
                alpha: self.leaky_alpha
            };
            self.discriminator_hidden.len()
        ];
        acts.push(Activation::Sigmoid);
        Network::glorot(&widths, &acts, self.discriminator_hidden.len() - 1, rng)
    }

    /// Generator mapping noise to fused features through an identity output layer.
    pub fn build_generator<R: Rng + ?Sized>(
        &self,
        output_dim: usize,
        rng: &mut R,
    ) -> Result<Network> {
        let mut widths = vec![self.noise_dim];
        widths.extend_from_slice(&self.generator_hidden);
        widths.push(output_dim);
        let mut acts = vec![
            Activation::LeakyRelu {
                alpha: self.leaky_alpha
            };
            self.generator_hidden.len()
        ];
        acts.push(Activation::Identity);
        Network::glorot(&widths, &acts, self.generator_hidden.len(), rng)
    }

    fn optimizer(&self) -> Result<OptimizerState> {
        OptimizerState::new(self.optimizer, self.learning_rate)
    }
}

/// Per-dimension affine standardization fitted on training features.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    /// Zero-variance dimensions keep unit scale.
    pub fn fit(features: &Matrix) -> Result<Self> {
        if features.rows() == 0 {
            return Err(Error::EmptyBatch);
        }
        let mut mean = Vec::with_capacity(features.cols());
        let mut scale = Vec::with_capacity(features.cols());
        let mut column = Vec::with_capacity(features.rows());
        for c in 0..features.cols() {
            column.clear();
            column.extend(features.iter_rows().map(|r| r[c]));
            mean.push(math::mean(&column));
            let s = math::std_dev(&column);
            scale.push(if s > 0.0 { s } else { 1.0 });
        }
        Ok(Self { mean, scale })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mean: vec![0.0; dim],
            scale: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn apply(&self, features: &Matrix) -> Result<Matrix> {
        if features.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: features.cols(),
            });
        }
        let mut out = features.clone();
        for r in 0..out.rows() {
            for ((v, m), s) in out.row_mut(r).iter_mut().zip(&self.mean).zip(&self.scale) {
                *v = (*v - m) / s;
            }
        }
        Ok(out)
    }
}

/// One value per loss, in training order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LossRecord {
    pub lab: f64,
    pub un: f64,
    pub fake: f64,
    pub gen: f64,
    pub grad: f64,
}

impl LossRecord {
    fn accumulate(&mut self, other: &LossRecord, scale: f64) {
        self.lab += scale * other.lab;
        self.un += scale * other.un;
        self.fake += scale * other.fake;
        self.gen += scale * other.gen;
        self.grad += scale * other.grad;
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EpochRecord {
    /// 1-based epoch number.
    pub epoch: usize,
    /// Mean of the step losses over the epoch.
    pub losses: LossRecord,
    pub val_rmse: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptimizerPair {
    pub discriminator: OptimizerState,
    pub generator: OptimizerState,
}

impl OptimizerPair {
    pub fn new(config: &SSGanConfig) -> Result<Self> {
        Ok(Self {
            discriminator: config.optimizer()?,
            generator: config.optimizer()?,
        })
    }
}

/// Fake fused features from `n` standard-normal noise rows.
pub fn generate<R: Rng + ?Sized>(gen: &Network, n: usize, rng: &mut R) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::EmptyBatch);
    }
    Ok(gen.forward(&noise(n, gen.input_dim(), rng))?.output)
}

/// `n` rows of standard-normal noise.
pub fn noise<R: Rng + ?Sized>(n: usize, dim: usize, rng: &mut R) -> Matrix {
    let data = (0..n * dim).map(|_| StandardNormal.sample(rng)).collect();
    Matrix::new(n, dim, data).expect("sized above")
}

/// Feature upstreams for a mean-difference loss, given `dL/d(mean_a − mean_b)`.
fn mean_upstreams(grad: &[f64], rows_a: usize, rows_b: usize) -> (Matrix, Matrix) {
    let mut a = Matrix::zeros(rows_a, grad.len());
    let mut b = Matrix::zeros(rows_b, grad.len());
    for r in 0..rows_a {
        for (v, g) in a.row_mut(r).iter_mut().zip(grad) {
            *v = g / rows_a as f64;
        }
    }
    for r in 0..rows_b {
        for (v, g) in b.row_mut(r).iter_mut().zip(grad) {
            *v = -g / rows_b as f64;
        }
    }
    (a, b)
}

fn mean_diff(a: &Matrix, b: &Matrix) -> Result<Vec<f64>> {
    Ok(batch_mean(a)?
        .iter()
        .zip(batch_mean(b)?)
        .map(|(x, y)| x - y)
        .collect())
}

/// Inputs of one discriminator update, already standardized.
#[derive(Debug, Clone, Copy)]
pub struct DiscriminatorBatch<'a> {
    pub x_labeled: &'a Matrix,
    pub y_labeled: &'a Matrix,
    pub x_unlabeled: &'a Matrix,
    pub x_fake: &'a Matrix,
    /// Interpolated points for the gradient penalty.
    pub x_hat: &'a Matrix,
}

/// Loss values and parameter gradients of
/// `w_lab·L_lab + w_un·L_un + w_fake·L_fake + w_gp·L_grad`.
///
/// The returned record leaves `gen` at zero. Gradient work for terms with
/// zero weight is skipped.
pub fn discriminator_objective(
    disc: &Network,
    batch: &DiscriminatorBatch<'_>,
    config: &SSGanConfig,
) -> Result<(LossRecord, Gradients)> {
    let DiscriminatorBatch {
        x_labeled,
        y_labeled,
        x_unlabeled,
        x_fake,
        x_hat,
    } = *batch;
    if x_labeled.rows() == 0 || x_unlabeled.rows() == 0 || x_fake.rows() == 0 {
        return Err(Error::EmptyBatch);
    }
    let w = config.loss_weights;
    let (n_l, n_u, n_f) = (x_labeled.rows(), x_unlabeled.rows(), x_fake.rows());

    let fwd_l = disc.forward(x_labeled)?;
    let fwd_u = disc.forward(x_unlabeled)?;
    let fwd_f = disc.forward(x_fake)?;
    let mut record = LossRecord {
        lab: labeled_loss(&fwd_l.output, y_labeled)?,
        un: unlabeled_loss(&fwd_l.features, &fwd_u.features)?,
        fake: fake_loss(&fwd_f.features, &fwd_u.features)?,
        ..LossRecord::default()
    };

    let mut grads = Gradients::zeros_like(disc);
    if w.gp > 0.0 {
        let (value, g) = penalty_parameter_gradients(disc, x_hat, config.target_norm)?;
        record.grad = value;
        grads.add_scaled(&g, w.gp)?;
    } else {
        record.grad = penalty_value(disc, x_hat, config.target_norm)?;
    }

    let k = y_labeled.cols() as f64;
    let out_l = fwd_l
        .output
        .zip_map(y_labeled, |p, y| w.lab * 2.0 * (p - y) / (n_l as f64 * k))?;
    let mut feat_l = Matrix::zeros(n_l, disc.feature_dim());
    let mut feat_u = Matrix::zeros(n_u, disc.feature_dim());
    let mut feat_f = Matrix::zeros(n_f, disc.feature_dim());
    if w.un > 0.0 {
        let d = mean_diff(&fwd_l.features, &fwd_u.features)?;
        let g: Vec<f64> = d.iter().map(|v| w.un * 2.0 * v).collect();
        let (a, b) = mean_upstreams(&g, n_l, n_u);
        feat_l.add_assign(&a)?;
        feat_u.add_assign(&b)?;
    }
    if w.fake > 0.0 {
        let d = mean_diff(&fwd_f.features, &fwd_u.features)?;
        let g: Vec<f64> = d
            .iter()
            .map(|v| -w.fake * signum(*v) / (v.abs() + 1.0))
            .collect();
        let (a, b) = mean_upstreams(&g, n_f, n_u);
        feat_f.add_assign(&a)?;
        feat_u.add_assign(&b)?;
    }
    if w.lab > 0.0 || w.un > 0.0 {
        grads.add_scaled(
            &disc.backward_params(&fwd_l.tape, Some(&out_l), Some(&feat_l))?,
            1.0,
        )?;
    }
    if w.un > 0.0 || w.fake > 0.0 {
        grads.add_scaled(
            &disc.backward_params(&fwd_u.tape, None, Some(&feat_u))?,
            1.0,
        )?;
    }
    if w.fake > 0.0 {
        grads.add_scaled(
            &disc.backward_params(&fwd_f.tape, None, Some(&feat_f))?,
            1.0,
        )?;
    }
    Ok((record, grads))
}

fn signum(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `L_gen` for fakes generated from `noise`, and `w_gen·∇L_gen` w.r.t. the
/// generator parameters (None when `w_gen` is zero).
pub fn generator_objective(
    disc: &Network,
    gen: &Network,
    noise: &Matrix,
    x_unlabeled: &Matrix,
    config: &SSGanConfig,
) -> Result<(f64, Option<Gradients>)> {
    let gen_fwd = gen.forward(noise)?;
    let fwd_u = disc.forward(x_unlabeled)?;
    let fwd_f = disc.forward(&gen_fwd.output)?;
    let value = generator_loss(&fwd_f.features, &fwd_u.features)?;
    let w_gen = config.loss_weights.gen;
    if w_gen == 0.0 {
        return Ok((value, None));
    }
    let d = mean_diff(&fwd_f.features, &fwd_u.features)?;
    let g: Vec<f64> = d.iter().map(|v| w_gen * 2.0 * v).collect();
    let (feat, _) = mean_upstreams(&g, noise.rows(), x_unlabeled.rows());
    let (_, x_grad) = disc.backward_full(&fwd_f.tape, None, Some(&feat))?;
    Ok((value, Some(gen.backward(&gen_fwd.tape, &x_grad)?)))
}

/// One discriminator update followed by one generator update, with a fake
/// batch as large as the unlabeled batch. All five losses are recorded;
/// `L_gen` is measured after the discriminator update.
#[allow(clippy::too_many_arguments)]
pub fn train_step<R: Rng + ?Sized>(
    disc: &mut Network,
    gen: &mut Network,
    x_labeled: &Matrix,
    y_labeled: &Matrix,
    x_unlabeled: &Matrix,
    config: &SSGanConfig,
    rng: &mut R,
    optimizers: &mut OptimizerPair,
) -> Result<LossRecord> {
    if x_labeled.rows() == 0 || x_unlabeled.rows() == 0 {
        return Err(Error::EmptyBatch);
    }
    let z = noise(x_unlabeled.rows(), gen.input_dim(), rng);
    let x_fake = gen.forward(&z)?.output;
    let x_hat = interpolate(x_unlabeled, &x_fake, rng, None)?;
    let batch = DiscriminatorBatch {
        x_labeled,
        y_labeled,
        x_unlabeled,
        x_fake: &x_fake,
        x_hat: &x_hat,
    };
    let (mut record, grads) = discriminator_objective(disc, &batch, config)?;
    optimizer_step(disc, &grads, &mut optimizers.discriminator)?;

    let (gen_loss, gen_grads) = generator_objective(disc, gen, &z, x_unlabeled, config)?;
    record.gen = gen_loss;
    if let Some(g) = gen_grads {
        optimizer_step(gen, &g, &mut optimizers.generator)?;
    }
    Ok(record)
}

/// Discriminator outputs, bounded strictly inside `(0, 1)`.
pub fn predict(disc: &Network, features: &Matrix) -> Result<Matrix> {
    const HI: f64 = 1.0 - f64::EPSILON / 2.0;
    Ok(disc
        .forward(features)?
        .output
        .map(|v| v.clamp(f64::MIN_POSITIVE, HI)))
}

/// Root mean squared error over all entries.
pub(crate) fn matrix_rmse(pred: &Matrix, truth: &Matrix) -> Result<f64> {
    Ok(math::sqrt(labeled_loss(pred, truth)?))
}

/// Trained discriminator with its input standardization.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Regressor {
    pub task: Task,
    pub standardizer: Standardizer,
    pub discriminator: Network,
}

impl Regressor {
    /// Predictions for raw (unstandardized) fused features.
    pub fn predict(&self, features: &Matrix) -> Result<Matrix> {
        predict(&self.discriminator, &self.standardizer.apply(features)?)
    }

    pub fn predict_samples(&self, samples: &[Sample]) -> Result<Matrix> {
        self.predict(&feature_matrix(samples, self.standardizer.dim())?)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainRun {
    pub config: SSGanConfig,
    pub history: Vec<EpochRecord>,
    pub final_model: Regressor,
    pub generator: Network,
    /// Lowest validation RMSE model; equals the final model without validation data.
    pub best_model: Regressor,
    pub best_epoch: Option<usize>,
}

impl TrainRun {
    pub fn final_val_rmse(&self) -> Option<f64> {
        self.history.last().and_then(|e| e.val_rmse)
    }
}

/// Stacks sample features, requiring every row to have width `dim`.
pub fn feature_matrix(samples: &[Sample], dim: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(samples.len() * dim);
    for s in samples {
        if s.features.len() != dim {
            return Err(Error::InconsistentFeatureDim {
                expected: dim,
                found: s.features.len(),
            });
        }
        data.extend_from_slice(&s.features);
    }
    Matrix::new(samples.len(), dim, data)
}

/// Stacks targets of labeled samples; unlabeled samples are an error.
pub fn target_matrix(samples: &[Sample], task: Task) -> Result<Matrix> {
    let k = task.output_dim();
    let mut data = Vec::with_capacity(samples.len() * k);
    for s in samples {
        let t = s.targets.as_ref().ok_or_else(|| {
            Error::InvalidParameter(alloc::format!("sample {} has no targets", s.clip_id))
        })?;
        if t.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: t.len(),
            });
        }
        data.extend_from_slice(t);
    }
    Matrix::new(samples.len(), k, data)
}

/// Full training loop: `epochs * ceil(|unlabeled| / batch_size)` steps, a
/// fresh labeled subset of `min(batch_size, |labeled|)` rows per step, and
/// validation RMSE after every epoch.
pub fn train(
    labeled: &[Sample],
    unlabeled: &[Sample],
    validation: &[Sample],
    config: &SSGanConfig,
) -> Result<TrainRun> {
    config.validate()?;
    if labeled.is_empty() || unlabeled.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let dim = labeled[0].features.len();
    let x_l = feature_matrix(labeled, dim)?;
    let y_l = target_matrix(labeled, config.task)?;
    let x_u = feature_matrix(unlabeled, dim)?;
    let val: Vec<Sample> = validation
        .iter()
        .filter(|s| s.is_labeled())
        .cloned()
        .collect();
    let x_v = feature_matrix(validation, dim).map(|_| feature_matrix(&val, dim))??;
    let y_v = target_matrix(&val, config.task)?;

    let standardizer = Standardizer::fit(&x_l.vstack(&x_u)?)?;
    let x_l = standardizer.apply(&x_l)?;
    let x_u = standardizer.apply(&x_u)?;
    let x_v = standardizer.apply(&x_v)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut disc = config.build_discriminator(dim, &mut rng)?;
    let mut gen = config.build_generator(dim, &mut rng)?;
    let mut optimizers = OptimizerPair::new(config)?;

    let mut history = Vec::with_capacity(config.epochs);
    let mut best: Option<(usize, f64, Network)> = None;
    let mut order: Vec<usize> = (0..x_u.rows()).collect();
    let lab_batch = config.batch_size.min(x_l.rows());
    for epoch in 1..=config.epochs {
        order.shuffle(&mut rng);
        let mut totals = LossRecord::default();
        let chunks: Vec<&[usize]> = order.chunks(config.batch_size).collect();
        let steps = chunks.len() as f64;
        for chunk in chunks {
            let xu = x_u.select_rows(chunk);
            let picked = rand::seq::index::sample(&mut rng, x_l.rows(), lab_batch).into_vec();
            let xl = x_l.select_rows(&picked);
            let yl = y_l.select_rows(&picked);
            let rec = train_step(
                &mut disc,
                &mut gen,
                &xl,
                &yl,
                &xu,
                config,
                &mut rng,
                &mut optimizers,
            )?;
            totals.accumulate(&rec, 1.0 / steps);
        }
        let val_rmse = if x_v.rows() > 0 {
            Some(matrix_rmse(&predict(&disc, &x_v)?, &y_v)?)
        } else {
            None
        };
        if let Some(v) = val_rmse {
            if best.as_ref().is_none_or(|b| v < b.1) {
                best = Some((epoch, v, disc.clone()));
            }
        }
        history.push(EpochRecord {
            epoch,
            losses: totals,
            val_rmse,
        });
    }

    let final_model = Regressor {
        task: config.task,
        standardizer,
        discriminator: disc,
    };
    let (best_epoch, best_model) = match best {
        Some((epoch, _, net)) => (
            Some(epoch),
            Regressor {
                discriminator: net,
                ..final_model.clone()
            },
        ),
        None => (None, final_model.clone()),
    };
    Ok(TrainRun {
        config: config.clone(),
        history,
        final_model,
        generator: gen,
        best_model,
        best_epoch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::Layer;

    fn linear(w: f64, b: f64) -> Network {
        Network::new(
            vec![Layer {
                weights: Matrix::new(1, 1, vec![w]).unwrap(),
                biases: vec![b],
                activation: Activation::Identity,
            }],
            0,
        )
        .unwrap()
    }

    fn sgd_config(weights: LossWeights) -> SSGanConfig {
        SSGanConfig {
            loss_weights: weights,
            learning_rate: 0.1,
            optimizer: Algorithm::Sgd,
            noise_dim: 1,
            ..SSGanConfig::default()
        }
    }

    #[test]
    fn labeled_only_step_is_plain_regression() {
        // L = (w x + b − y)² at w = 1, b = 0, x = 2, y = 1: dL/dw = 4, dL/db = 2.
        let mut disc = linear(1.0, 0.0);
        let mut gen = linear(0.0, 0.0);
        let cfg = sgd_config(LossWeights::labeled_only());
        let mut opt = OptimizerPair::new(&cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let x = Matrix::new(1, 1, vec![2.0]).unwrap();
        let y = Matrix::new(1, 1, vec![1.0]).unwrap();
        let rec = train_step(&mut disc, &mut gen, &x, &y, &x, &cfg, &mut rng, &mut opt).unwrap();
        assert_eq!(rec.lab, 1.0);
        assert!((disc.layers()[0].weights[(0, 0)] - 0.6).abs() < 1e-15);
        assert!((disc.layers()[0].biases[0] + 0.2).abs() < 1e-15);
        assert_eq!(gen, linear(0.0, 0.0));
    }

    #[test]
    fn zero_weights_leave_parameters() {
        let cfg = SSGanConfig {
            loss_weights: LossWeights {
                lab: 0.0,
                un: 0.0,
                fake: 0.0,
                gp: 0.0,
                gen: 0.0,
            },
            discriminator_hidden: vec![3, 2],
            generator_hidden: vec![3],
            noise_dim: 2,
            ..SSGanConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut disc = cfg.build_discriminator(4, &mut rng).unwrap();
        let mut gen = cfg.build_generator(4, &mut rng).unwrap();
        let (d0, g0) = (disc.clone(), gen.clone());
        let mut opt = OptimizerPair::new(&cfg).unwrap();
        let x = Matrix::filled(3, 4, 0.3);
        let y = Matrix::filled(3, 1, 0.5);
        train_step(&mut disc, &mut gen, &x, &y, &x, &cfg, &mut rng, &mut opt).unwrap();
        assert_eq!(disc.layers(), d0.layers());
        assert_eq!(gen.layers(), g0.layers());
    }

    #[test]
    fn generate_shapes_and_zero_generator() {
        let cfg = SSGanConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let gen = cfg.build_generator(302, &mut rng).unwrap();
        let a = generate(&gen, 5, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        let b = generate(&gen, 5, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(a.shape(), (5, 302));
        assert_eq!(a, b);
        let zero = Network::zeros(
            &[32, 8, 302],
            &[Activation::LeakyRelu { alpha: 0.2 }, Activation::Identity],
            1,
        )
        .unwrap();
        assert!(generate(&zero, 3, &mut rng)
            .unwrap()
            .as_slice()
            .iter()
            .all(|v| *v == 0.0));
    }

    #[test]
    fn predict_width_and_zero_disc() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (task, k) in [(Task::Engagement, 1), (Task::ValenceArousal, 2)] {
            let cfg = SSGanConfig {
                task,
                ..SSGanConfig::default()
            };
            let disc = cfg.build_discriminator(10, &mut rng).unwrap();
            assert_eq!(
                predict(&disc, &Matrix::zeros(4, 10)).unwrap().shape(),
                (4, k)
            );
        }
        let zero = Network::zeros(
            &[3, 2, 1],
            &[Activation::LeakyRelu { alpha: 0.2 }, Activation::Sigmoid],
            0,
        )
        .unwrap();
        assert!(predict(&zero, &Matrix::filled(2, 3, 9.0))
            .unwrap()
            .as_slice()
            .iter()
            .all(|v| *v == 0.5));
        let huge = linear(1e6, 0.0);
        let mut sat = huge.clone();
        sat.layers_mut()[0].activation = Activation::Sigmoid;
        let out = predict(&sat, &Matrix::new(2, 1, vec![1.0, -1.0]).unwrap()).unwrap();
        assert!(out.as_slice().iter().all(|v| *v > 0.0 && *v < 1.0));
    }

    #[test]
    fn standardizer_handles_constant_columns() {
        let x = Matrix::from_rows(&[[1.0, 5.0], [3.0, 5.0]]).unwrap();
        let s = Standardizer::fit(&x).unwrap();
        assert_eq!(
            s.apply(&x).unwrap(),
            Matrix::from_rows(&[[-1.0, 0.0], [1.0, 0.0]]).unwrap()
        );
    }
}
