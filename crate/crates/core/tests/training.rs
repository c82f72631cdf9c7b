use engage_core::eval::{synth_dataset, synth_dataset_with, validation_rmse, SynthConfig};
use engage_core::fusion::Task;
use engage_core::ssgan::{train, LossWeights, SSGanConfig};
use engage_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small(dim: usize, seed: u64) -> engage_core::eval::SynthDataset {
    synth_dataset_with(&SynthConfig {
        n_labeled: 40,
        n_unlabeled: 120,
        n_val: 30,
        noise_sd: 0.02,
        seed,
        dim,
        ..SynthConfig::default()
    })
    .unwrap()
}

fn small_config() -> SSGanConfig {
    SSGanConfig {
        batch_size: 32,
        epochs: 3,
        noise_dim: 4,
        discriminator_hidden: vec![16, 8],
        generator_hidden: vec![8, 16],
        ..SSGanConfig::default()
    }
}

#[test]
fn zero_epochs_returns_initial_weights() {
    let d = small(12, 1);
    let cfg = SSGanConfig {
        epochs: 0,
        ..small_config()
    };
    let run = train(&d.labeled, &d.unlabeled, &d.validation, &cfg).unwrap();
    assert!(run.history.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let disc = cfg.build_discriminator(12, &mut rng).unwrap();
    let gen = cfg.build_generator(12, &mut rng).unwrap();
    assert_eq!(run.final_model.discriminator.layers(), disc.layers());
    assert_eq!(run.generator.layers(), gen.layers());
    assert_eq!(run.best_epoch, None);
}

#[test]
fn training_is_deterministic() {
    let d = small(12, 2);
    let a = train(&d.labeled, &d.unlabeled, &d.validation, &small_config()).unwrap();
    let b = train(&d.labeled, &d.unlabeled, &d.validation, &small_config()).unwrap();
    assert_eq!(a.history.len(), 3);
    assert_eq!(a, b);
    let other = SSGanConfig {
        seed: 9,
        ..small_config()
    };
    assert_ne!(
        a.history,
        train(&d.labeled, &d.unlabeled, &d.validation, &other)
            .unwrap()
            .history
    );
}

#[test]
fn best_checkpoint_has_lowest_validation_error() {
    let d = small(12, 3);
    let cfg = SSGanConfig {
        epochs: 6,
        ..small_config()
    };
    let run = train(&d.labeled, &d.unlabeled, &d.validation, &cfg).unwrap();
    let best = run.best_epoch.unwrap();
    let lowest = run
        .history
        .iter()
        .map(|h| h.val_rmse.unwrap())
        .fold(f64::INFINITY, f64::min);
    assert_eq!(run.history[best - 1].val_rmse.unwrap(), lowest);
    let mut best_run = run.clone();
    best_run.final_model = run.best_model.clone();
    assert!((validation_rmse(&best_run, &d.validation).unwrap() - lowest).abs() < 1e-12);
    assert!(
        (validation_rmse(&run, &d.validation).unwrap() - run.final_val_rmse().unwrap()).abs()
            < 1e-12
    );
}

#[test]
fn labeled_only_loss_decreases_early() {
    let d = synth_dataset_with(&SynthConfig {
        n_labeled: 200,
        n_unlabeled: 400,
        n_val: 50,
        dim: 30,
        seed: 4,
        ..SynthConfig::default()
    })
    .unwrap();
    let cfg = SSGanConfig {
        batch_size: 64,
        epochs: 5,
        loss_weights: LossWeights::labeled_only(),
        discriminator_hidden: vec![32, 16],
        ..SSGanConfig::default()
    };
    let run = train(&d.labeled, &d.unlabeled, &d.validation, &cfg).unwrap();
    let lab: Vec<f64> = run.history.iter().map(|h| h.losses.lab).collect();
    assert!(lab.windows(2).all(|w| w[1] <= w[0]), "{lab:?}");
    assert!(run
        .history
        .iter()
        .all(|h| h.losses.un >= 0.0 && h.losses.fake <= 0.0 && h.losses.grad >= 0.0));
}

#[test]
fn mixed_feature_widths_rejected() {
    let mut d = small(12, 5);
    d.unlabeled[3].features.push(0.0);
    assert_eq!(
        train(&d.labeled, &d.unlabeled, &d.validation, &small_config()),
        Err(Error::InconsistentFeatureDim {
            expected: 12,
            found: 13
        })
    );
    assert_eq!(
        train(&[], &d.unlabeled, &d.validation, &small_config()),
        Err(Error::EmptyBatch)
    );
}

#[test]
fn valence_arousal_head_has_two_outputs() {
    let d = synth_dataset_with(&SynthConfig {
        task: Task::ValenceArousal,
        ..SynthConfig {
            n_labeled: 20,
            n_unlabeled: 40,
            n_val: 10,
            dim: 8,
            ..SynthConfig::default()
        }
    })
    .unwrap();
    let cfg = SSGanConfig {
        task: Task::ValenceArousal,
        epochs: 1,
        ..small_config()
    };
    let run = train(&d.labeled, &d.unlabeled, &d.validation, &cfg).unwrap();
    let pred = run.final_model.predict_samples(&d.validation).unwrap();
    assert_eq!(pred.shape(), (10, 2));
    assert!(pred.as_slice().iter().all(|v| *v > 0.0 && *v < 1.0));
}

#[test]
fn noise_free_synthetic_task_is_learnable() {
    let d = synth_dataset(4000, 4000, 500, 0.0, 7).unwrap();
    let cfg = SSGanConfig {
        batch_size: 64,
        epochs: 15,
        learning_rate: 1e-3,
        loss_weights: LossWeights::labeled_only(),
        discriminator_hidden: vec![256, 64],
        ..SSGanConfig::default()
    };
    let run = train(&d.labeled, &d.unlabeled, &d.validation, &cfg).unwrap();
    let v = run.final_val_rmse().unwrap();
    assert!(v < 0.05, "validation RMSE {v}");
}
