use alloc::vec::Vec;

use super::{Gradients, Network};
use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Algorithm {
    Sgd,
    Adam {
        beta1: f64,
        beta2: f64,
        epsilon: f64,
    },
}

impl Default for Algorithm {
    fn default() -> Self {
        Algorithm::Adam {
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Optimizer hyperparameters plus per-parameter moment buffers.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptimizerState {
    pub algorithm: Algorithm,
    pub learning_rate: f64,
    pub step: u64,
    first_moment: Vec<f64>,
    second_moment: Vec<f64>,
}

impl OptimizerState {
    pub fn new(algorithm: Algorithm, learning_rate: f64) -> Result<Self> {
        if !(learning_rate > 0.0 && learning_rate.is_finite()) {
            return Err(Error::InvalidParameter(
                "learning rate must be positive".into(),
            ));
        }
        Ok(Self {
            algorithm,
            learning_rate,
            step: 0,
            first_moment: Vec::new(),
            second_moment: Vec::new(),
        })
    }

    pub fn sgd(learning_rate: f64) -> Result<Self> {
        Self::new(Algorithm::Sgd, learning_rate)
    }

    pub fn adam(learning_rate: f64) -> Result<Self> {
        Self::new(Algorithm::default(), learning_rate)
    }
}

/// Applies one update to `net` in place; parameter order follows
/// [`Gradients::flatten`].
pub fn optimizer_step(
    net: &mut Network,
    grads: &Gradients,
    state: &mut OptimizerState,
) -> Result<()> {
    if !grads.matches(net) {
        return Err(Error::DimensionMismatch {
            expected: net.parameter_count(),
            found: grads.flatten().len(),
        });
    }
    let g = grads.flatten();
    let lr = state.learning_rate;
    let update: Vec<f64> = match state.algorithm {
        Algorithm::Sgd => g.iter().map(|v| -lr * v).collect(),
        Algorithm::Adam {
            beta1,
            beta2,
            epsilon,
        } => {
            if state.first_moment.len() != g.len() {
                if state.step != 0 {
                    return Err(Error::DimensionMismatch {
                        expected: state.first_moment.len(),
                        found: g.len(),
                    });
                }
                state.first_moment = alloc::vec![0.0; g.len()];
                state.second_moment = alloc::vec![0.0; g.len()];
            }
            let t = (state.step + 1) as i32;
            let c1 = 1.0 - math::powf(beta1, t as f64);
            let c2 = 1.0 - math::powf(beta2, t as f64);
            g.iter()
                .zip(
                    state
                        .first_moment
                        .iter_mut()
                        .zip(state.second_moment.iter_mut()),
                )
                .map(|(&gi, (m, v))| {
                    *m = beta1 * *m + (1.0 - beta1) * gi;
                    *v = beta2 * *v + (1.0 - beta2) * gi * gi;
                    let m_hat = *m / c1;
                    let v_hat = *v / c2;
                    -lr * m_hat / (math::sqrt(v_hat) + epsilon)
                })
                .collect()
        }
    };
    state.step += 1;
    let mut k = 0;
    for layer in net.layers_mut_unversioned() {
        for w in layer.weights.as_mut_slice() {
            *w += update[k];
            k += 1;
        }
        for b in &mut layer.biases {
            *b += update[k];
            k += 1;
        }
    }
    net.bump_version();
    Ok(())
}
