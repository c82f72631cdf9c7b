use engage_core::nn::{Matrix, Network};
use engage_core::ssgan::{
    discriminator_objective, generator_objective, interpolate, noise, DiscriminatorBatch,
    LossRecord, LossWeights, SSGanConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H: f64 = 1e-5;

fn config() -> SSGanConfig {
    SSGanConfig {
        noise_dim: 3,
        discriminator_hidden: vec![7, 5],
        generator_hidden: vec![6],
        loss_weights: LossWeights {
            lab: 1.0,
            un: 0.7,
            fake: 1.3,
            gp: 2.0,
            gen: 1.5,
        },
        ..SSGanConfig::default()
    }
}

fn batch(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::new(
        rows,
        cols,
        (0..rows * cols)
            .map(|_| rng.random_range(-1.5..1.5))
            .collect(),
    )
    .unwrap()
}

fn weighted(r: &LossRecord, w: &LossWeights) -> f64 {
    w.lab * r.lab + w.un * r.un + w.fake * r.fake + w.gp * r.grad
}

fn perturbed(net: &Network, index: usize, delta: f64) -> Network {
    let mut p = net.clone();
    let mut k = index;
    for layer in p.layers_mut() {
        let n_w = layer.weights.as_slice().len();
        if k < n_w {
            layer.weights.as_mut_slice()[k] += delta;
            return p;
        }
        k -= n_w;
        if k < layer.biases.len() {
            layer.biases[k] += delta;
            return p;
        }
        k -= layer.biases.len();
    }
    unreachable!()
}

fn compare(analytic: &[f64], numeric: &[f64], tol: f64) {
    let scale = analytic.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (i, (a, n)) in analytic.iter().zip(numeric).enumerate() {
        let err = (a - n).abs() / a.abs().max(n.abs()).max(1e-3 * scale);
        assert!(err < tol, "parameter {i}: analytic {a} numeric {n}");
    }
}

#[test]
fn discriminator_objective_matches_finite_differences() {
    let cfg = config();
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let disc = cfg.build_discriminator(4, &mut rng).unwrap();
        let xl = batch(&mut rng, 3, 4);
        let yl = Matrix::new(3, 1, vec![0.2, 0.9, 0.5]).unwrap();
        let xu = batch(&mut rng, 5, 4);
        let xf = batch(&mut rng, 5, 4).map(|v| 0.5 * v + 0.3);
        let xh = interpolate(&xu, &xf, &mut rng, None).unwrap();
        let b = DiscriminatorBatch {
            x_labeled: &xl,
            y_labeled: &yl,
            x_unlabeled: &xu,
            x_fake: &xf,
            x_hat: &xh,
        };
        let (_, grads) = discriminator_objective(&disc, &b, &cfg).unwrap();
        let analytic = grads.flatten();
        let numeric: Vec<f64> = (0..analytic.len())
            .map(|i| {
                let f = |d: f64| {
                    weighted(
                        &discriminator_objective(&perturbed(&disc, i, d), &b, &cfg)
                            .unwrap()
                            .0,
                        &cfg.loss_weights,
                    )
                };
                (f(H) - f(-H)) / (2.0 * H)
            })
            .collect();
        compare(&analytic, &numeric, 1e-4);
    }
}

#[test]
fn generator_objective_matches_finite_differences() {
    let cfg = config();
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let disc = cfg.build_discriminator(4, &mut rng).unwrap();
        let gen = cfg.build_generator(4, &mut rng).unwrap();
        let z = noise(6, 3, &mut rng);
        let xu = batch(&mut rng, 6, 4);
        let (_, grads) = generator_objective(&disc, &gen, &z, &xu, &cfg).unwrap();
        let analytic = grads.unwrap().flatten();
        let numeric: Vec<f64> = (0..analytic.len())
            .map(|i| {
                let f = |d: f64| {
                    cfg.loss_weights.gen
                        * generator_objective(&disc, &perturbed(&gen, i, d), &z, &xu, &cfg)
                            .unwrap()
                            .0
                };
                (f(H) - f(-H)) / (2.0 * H)
            })
            .collect();
        compare(&analytic, &numeric, 1e-4);
    }
}

#[test]
fn zero_weight_generator_objective_has_no_gradient() {
    let cfg = SSGanConfig {
        loss_weights: LossWeights::labeled_only(),
        ..config()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let disc = cfg.build_discriminator(4, &mut rng).unwrap();
    let gen = cfg.build_generator(4, &mut rng).unwrap();
    let (value, grads) = generator_objective(
        &disc,
        &gen,
        &noise(4, 3, &mut rng),
        &batch(&mut rng, 4, 4),
        &cfg,
    )
    .unwrap();
    assert!(value >= 0.0);
    assert!(grads.is_none());
}
