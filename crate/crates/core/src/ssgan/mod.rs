//! Semi-supervised GAN regression over fused features.

mod losses;
mod train;

pub use losses::{
    fake_loss, generator_loss, gradient_penalty, gradient_penalty_at, interpolate, labeled_loss,
    unlabeled_loss,
};
pub use train::{
    discriminator_objective, feature_matrix, generate, generator_objective, noise, predict,
    target_matrix, train, train_step, DiscriminatorBatch, EpochRecord, LossRecord, LossWeights,
    OptimizerPair, Regressor, SSGanConfig, Standardizer, TrainRun,
};
