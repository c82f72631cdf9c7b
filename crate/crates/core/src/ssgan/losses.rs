use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math;
use crate::nn::{penalty_value, Matrix, Network};

/// Per-column means, invariant to row order.
pub(crate) fn batch_mean(m: &Matrix) -> Result<Vec<f64>> {
    if m.rows() == 0 {
        return Err(Error::EmptyBatch);
    }
    let n = m.rows() as f64;
    let mut column = Vec::with_capacity(m.rows());
    Ok((0..m.cols())
        .map(|c| {
            column.clear();
            column.extend(m.iter_rows().map(|r| r[c]));
            math::sorted_sum(&mut column) / n
        })
        .collect())
}

fn mean_difference(a: &Matrix, b: &Matrix) -> Result<Vec<f64>> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: b.cols(),
        });
    }
    let ma = batch_mean(a)?;
    let mb = batch_mean(b)?;
    Ok(ma.iter().zip(&mb).map(|(x, y)| x - y).collect())
}

fn squared_norm(v: &[f64]) -> f64 {
    let mut sq: Vec<f64> = v.iter().map(|x| x * x).collect();
    math::sorted_sum(&mut sq)
}

/// Mean squared error over all entries.
pub fn labeled_loss(pred: &Matrix, truth: &Matrix) -> Result<f64> {
    if pred.shape() != truth.shape() {
        return Err(Error::DimensionMismatch {
            expected: truth.rows() * truth.cols(),
            found: pred.rows() * pred.cols(),
        });
    }
    if pred.rows() == 0 {
        return Err(Error::EmptyBatch);
    }
    let mut sq: Vec<f64> = pred
        .as_slice()
        .iter()
        .zip(truth.as_slice())
        .map(|(p, t)| (p - t) * (p - t))
        .collect();
    let n = sq.len() as f64;
    Ok(math::sorted_sum(&mut sq) / n)
}

/// `‖mean f(x_lab) − mean f(x_un)‖²`.
pub fn unlabeled_loss(f_labeled: &Matrix, f_unlabeled: &Matrix) -> Result<f64> {
    Ok(squared_norm(&mean_difference(f_labeled, f_unlabeled)?))
}

/// `−‖ln(|mean f(x_fake) − mean f(x_un)| + 1)‖₁`.
pub fn fake_loss(f_fake: &Matrix, f_unlabeled: &Matrix) -> Result<f64> {
    let diff = mean_difference(f_fake, f_unlabeled)?;
    let mut logs: Vec<f64> = diff.iter().map(|d| math::ln(d.abs() + 1.0)).collect();
    Ok(-math::sorted_sum(&mut logs))
}

/// `‖mean f(x_fake) − mean f(x_un)‖²`.
pub fn generator_loss(f_fake: &Matrix, f_unlabeled: &Matrix) -> Result<f64> {
    Ok(squared_norm(&mean_difference(f_fake, f_unlabeled)?))
}

/// Pairs the rows of `a` and `b`; the shorter batch is resampled with
/// replacement up to the length of the longer one.
pub(crate) fn pair_rows<R: Rng + ?Sized>(
    a: &Matrix,
    b: &Matrix,
    rng: &mut R,
) -> Result<(Matrix, Matrix)> {
    if a.rows() == 0 || b.rows() == 0 {
        return Err(Error::EmptyBatch);
    }
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: b.cols(),
        });
    }
    let resample = |m: &Matrix, n: usize, rng: &mut R| {
        let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..m.rows())).collect();
        m.select_rows(&idx)
    };
    Ok(match a.rows().cmp(&b.rows()) {
        core::cmp::Ordering::Equal => (a.clone(), b.clone()),
        core::cmp::Ordering::Less => (resample(a, b.rows(), rng), b.clone()),
        core::cmp::Ordering::Greater => {
            let b = resample(b, a.rows(), rng);
            (a.clone(), b)
        }
    })
}

/// Random points `ε·x_un + (1−ε)·x_fake`, one `ε ~ U[0,1]` per row pair.
/// `epsilon` overrides the draw for every row.
pub fn interpolate<R: Rng + ?Sized>(
    x_unlabeled: &Matrix,
    x_fake: &Matrix,
    rng: &mut R,
    epsilon: Option<f64>,
) -> Result<Matrix> {
    let (u, f) = pair_rows(x_unlabeled, x_fake, rng)?;
    let mut out = Matrix::zeros(u.rows(), u.cols());
    for r in 0..u.rows() {
        let e = epsilon.unwrap_or_else(|| rng.random::<f64>());
        for ((o, a), b) in out.row_mut(r).iter_mut().zip(u.row(r)).zip(f.row(r)) {
            *o = e * a + (1.0 - e) * b;
        }
    }
    Ok(out)
}

/// Mean over interpolated points of `(‖∇ s(x̂)‖ − target_norm)²`, with `s`
/// the summed discriminator output.
pub fn gradient_penalty<R: Rng + ?Sized>(
    disc: &Network,
    x_unlabeled: &Matrix,
    x_fake: &Matrix,
    target_norm: f64,
    rng: &mut R,
) -> Result<f64> {
    gradient_penalty_at(disc, x_unlabeled, x_fake, target_norm, rng, None)
}

/// [`gradient_penalty`] with an optional fixed interpolation weight.
pub fn gradient_penalty_at<R: Rng + ?Sized>(
    disc: &Network,
    x_unlabeled: &Matrix,
    x_fake: &Matrix,
    target_norm: f64,
    rng: &mut R,
    epsilon: Option<f64>,
) -> Result<f64> {
    let x_hat = interpolate(x_unlabeled, x_fake, rng, epsilon)?;
    penalty_value(disc, &x_hat, target_norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{Activation, Layer};
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn labeled_examples() {
        let y = m(&[&[0.25], &[0.75]]);
        assert_eq!(labeled_loss(&y, &y).unwrap(), 0.0);
        assert_eq!(labeled_loss(&y.map(|v| v + 0.5), &y).unwrap(), 0.25);
        assert_eq!(
            labeled_loss(&m(&[&[0.0, 1.0]]), &m(&[&[1.0, 0.0]])).unwrap(),
            1.0
        );
        assert!(labeled_loss(&y, &m(&[&[0.0]])).is_err());
    }

    #[test]
    fn feature_matching_examples() {
        let a = m(&[&[1.0, 2.0]]);
        let b = m(&[&[4.0, 6.0]]);
        assert_eq!(unlabeled_loss(&a, &b).unwrap(), 25.0);
        assert_eq!(
            unlabeled_loss(&m(&[&[1.0, 0.0]]), &m(&[&[0.0, 0.0]])).unwrap(),
            1.0
        );
        assert_eq!(
            generator_loss(&m(&[&[3.0, 4.0]]), &m(&[&[0.0, 0.0]])).unwrap(),
            25.0
        );
        let e1 = core::f64::consts::E - 1.0;
        let zero = m(&[&[0.0, 0.0]]);
        assert!((fake_loss(&m(&[&[e1, 0.0]]), &zero).unwrap() + 1.0).abs() < 1e-15);
        assert!((fake_loss(&m(&[&[e1, e1]]), &zero).unwrap() + 2.0).abs() < 1e-15);
        assert_eq!(fake_loss(&a, &a).unwrap(), 0.0);
        let empty = Matrix::zeros(0, 2);
        assert_eq!(unlabeled_loss(&empty, &a), Err(Error::EmptyBatch));
    }

    #[test]
    fn penalty_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = m(&[&[1.0, 2.0], &[0.0, -1.0]]);
        let f = m(&[&[5.0, 5.0]]);
        let zero = Network::zeros(
            &[2, 3, 1],
            &[Activation::LeakyRelu { alpha: 0.2 }, Activation::Sigmoid],
            0,
        )
        .unwrap();
        assert_eq!(gradient_penalty(&zero, &u, &f, 1.0, &mut rng).unwrap(), 1.0);
        let unit = Network::new(
            vec![Layer {
                weights: m(&[&[0.6], &[-0.8]]),
                biases: vec![1.0],
                activation: Activation::Identity,
            }],
            0,
        )
        .unwrap();
        assert!(gradient_penalty(&unit, &u, &f, 1.0, &mut rng).unwrap() < 1e-30);
        assert_eq!(interpolate(&u, &f, &mut rng, Some(1.0)).unwrap(), u);
        assert_eq!(
            interpolate(&u, &f, &mut rng, Some(0.0)).unwrap(),
            m(&[&[5.0, 5.0], &[5.0, 5.0]])
        );
    }
}
