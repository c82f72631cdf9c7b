use alloc::vec::Vec;

use rand::Rng;

use super::Matrix;
use crate::error::{Error, Result};
use crate::math;

/// Elementwise activation. Leaky ReLU uses slope `alpha` at and below zero.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Activation {
    LeakyRelu { alpha: f64 },
    Sigmoid,
    Identity,
}

impl Activation {
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Activation::LeakyRelu { alpha } => {
                if z > 0.0 {
                    z
                } else {
                    alpha * z
                }
            }
            Activation::Sigmoid => math::sigmoid(z),
            Activation::Identity => z,
        }
    }

    /// First derivative, given pre-activation `z` and output `a`.
    pub fn derivative(self, z: f64, a: f64) -> f64 {
        match self {
            Activation::LeakyRelu { alpha } => {
                if z > 0.0 {
                    1.0
                } else {
                    alpha
                }
            }
            Activation::Sigmoid => a * (1.0 - a),
            Activation::Identity => 1.0,
        }
    }

    /// Second derivative; zero almost everywhere for the piecewise-linear cases.
    pub fn second_derivative(self, _z: f64, a: f64) -> f64 {
        match self {
            Activation::Sigmoid => a * (1.0 - a) * (1.0 - 2.0 * a),
            Activation::LeakyRelu { .. } | Activation::Identity => 0.0,
        }
    }
}

/// One affine map followed by an activation. `weights` is `input x output`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Layer {
    pub weights: Matrix,
    pub biases: Vec<f64>,
    pub activation: Activation,
}

impl Layer {
    pub fn input_dim(&self) -> usize {
        self.weights.rows()
    }

    pub fn output_dim(&self) -> usize {
        self.weights.cols()
    }
}

/// Dense feed-forward network; `feature_layer_index` marks the layer whose
/// activations serve as the feature representation f(x).
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Network {
    layers: Vec<Layer>,
    feature_layer_index: usize,
    /// Bumped on every parameter mutation so stale tapes can be detected.
    #[cfg_attr(feature = "serde", serde(skip))]
    version: u64,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.layers == other.layers && self.feature_layer_index == other.feature_layer_index
    }
}

impl Network {
    pub fn new(layers: Vec<Layer>, feature_layer_index: usize) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidParameter(
                "network needs at least one layer".into(),
            ));
        }
        if feature_layer_index >= layers.len() {
            return Err(Error::InvalidParameter(
                "feature layer index out of range".into(),
            ));
        }
        for l in &layers {
            if l.biases.len() != l.output_dim() {
                return Err(Error::DimensionMismatch {
                    expected: l.output_dim(),
                    found: l.biases.len(),
                });
            }
        }
        for pair in layers.windows(2) {
            if pair[0].output_dim() != pair[1].input_dim() {
                return Err(Error::DimensionMismatch {
                    expected: pair[0].output_dim(),
                    found: pair[1].input_dim(),
                });
            }
        }
        Ok(Self {
            layers,
            feature_layer_index,
            version: 0,
        })
    }

    /// All-zero parameters for the given widths; `activations[i]` follows layer `i`.
    pub fn zeros(
        widths: &[usize],
        activations: &[Activation],
        feature_layer_index: usize,
    ) -> Result<Self> {
        Self::build(widths, activations, feature_layer_index, |_, _| 0.0)
    }

    /// Glorot-uniform weights, zero biases.
    pub fn glorot<R: Rng + ?Sized>(
        widths: &[usize],
        activations: &[Activation],
        feature_layer_index: usize,
        rng: &mut R,
    ) -> Result<Self> {
        Self::build(
            widths,
            activations,
            feature_layer_index,
            |fan_in, fan_out| {
                let limit = math::sqrt(6.0 / (fan_in + fan_out) as f64);
                rng.random_range(-limit..limit)
            },
        )
    }

    fn build(
        widths: &[usize],
        activations: &[Activation],
        feature_layer_index: usize,
        mut weight: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        if widths.len() < 2 || activations.len() != widths.len() - 1 {
            return Err(Error::InvalidParameter(
                "need one activation per layer".into(),
            ));
        }
        let layers = widths
            .windows(2)
            .zip(activations)
            .map(|(w, &activation)| {
                let data = (0..w[0] * w[1]).map(|_| weight(w[0], w[1])).collect();
                Layer {
                    weights: Matrix::new(w[0], w[1], data).expect("sized above"),
                    biases: alloc::vec![0.0; w[1]],
                    activation,
                }
            })
            .collect();
        Self::new(layers, feature_layer_index)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Mutable parameter access; invalidates outstanding tapes.
    pub fn layers_mut(&mut self) -> &mut [Layer] {
        self.version += 1;
        &mut self.layers
    }

    pub fn feature_layer_index(&self) -> usize {
        self.feature_layer_index
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].output_dim()
    }

    pub fn feature_dim(&self) -> usize {
        self.layers[self.feature_layer_index].output_dim()
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn parameter_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weights.as_slice().len() + l.biases.len())
            .sum()
    }

    pub fn forward(&self, batch: &Matrix) -> Result<Forward> {
        if batch.cols() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                found: batch.cols(),
            });
        }
        let mut inputs = Vec::with_capacity(self.layers.len());
        let mut pre = Vec::with_capacity(self.layers.len());
        let mut post: Vec<Matrix> = Vec::with_capacity(self.layers.len());
        let mut current = batch.clone();
        for layer in &self.layers {
            let mut z = current.matmul(&layer.weights)?;
            z.add_row_vector(&layer.biases)?;
            let a = z.map(|v| layer.activation.apply(v));
            inputs.push(current);
            pre.push(z);
            current = a.clone();
            post.push(a);
        }
        Ok(Forward {
            output: post.last().expect("non-empty").clone(),
            features: post[self.feature_layer_index].clone(),
            tape: Tape {
                version: self.version,
                inputs,
                pre,
                post,
            },
        })
    }

    /// Reverse-mode gradients of `sum(upstream * output)` w.r.t. all parameters.
    pub fn backward(&self, tape: &Tape, upstream: &Matrix) -> Result<Gradients> {
        self.backward_params(tape, Some(upstream), None)
    }

    /// Like [`Network::backward_full`] without the input gradient.
    pub fn backward_params(
        &self,
        tape: &Tape,
        output_upstream: Option<&Matrix>,
        feature_upstream: Option<&Matrix>,
    ) -> Result<Gradients> {
        Ok(self
            .backward_impl(tape, output_upstream, feature_upstream, false)?
            .0)
    }

    /// Gradients of `sum(out_up * output) + sum(feat_up * features)` w.r.t.
    /// the parameters and w.r.t. the input batch.
    pub fn backward_full(
        &self,
        tape: &Tape,
        output_upstream: Option<&Matrix>,
        feature_upstream: Option<&Matrix>,
    ) -> Result<(Gradients, Matrix)> {
        let (g, x) = self.backward_impl(tape, output_upstream, feature_upstream, true)?;
        Ok((g, x.expect("input gradient requested")))
    }

    fn backward_impl(
        &self,
        tape: &Tape,
        output_upstream: Option<&Matrix>,
        feature_upstream: Option<&Matrix>,
        input_gradient: bool,
    ) -> Result<(Gradients, Option<Matrix>)> {
        if tape.version != self.version || tape.pre.len() != self.layers.len() {
            return Err(Error::StaleTape);
        }
        let last = self.layers.len() - 1;
        let rows = tape.inputs[0].rows();
        let check = |m: &Matrix, cols: usize| -> Result<()> {
            if m.shape() != (rows, cols) {
                return Err(Error::DimensionMismatch {
                    expected: rows * cols,
                    found: m.rows() * m.cols(),
                });
            }
            Ok(())
        };
        let mut grad_a = match output_upstream {
            Some(u) => {
                check(u, self.output_dim())?;
                u.clone()
            }
            None => Matrix::zeros(rows, self.output_dim()),
        };
        if let Some(f) = feature_upstream {
            check(f, self.feature_dim())?;
        }
        let mut grads = Vec::with_capacity(self.layers.len());
        for l in (0..=last).rev() {
            if l == self.feature_layer_index {
                if let Some(f) = feature_upstream {
                    grad_a.add_assign(f)?;
                }
            }
            let layer = &self.layers[l];
            let act = layer.activation;
            let grad_z = tape.pre[l].zip_map(&tape.post[l], |z, a| act.derivative(z, a))?;
            let grad_z = grad_z.zip_map(&grad_a, |d, g| d * g)?;
            grads.push(LayerGradient {
                weights: tape.inputs[l].t_matmul(&grad_z)?,
                biases: grad_z.column_sums(),
            });
            if l > 0 || input_gradient {
                grad_a = grad_z.matmul_t(&layer.weights)?;
            }
        }
        grads.reverse();
        Ok((
            Gradients { layers: grads },
            input_gradient.then_some(grad_a),
        ))
    }

    pub(crate) fn bump_version(&mut self) {
        self.version += 1;
    }

    pub(crate) fn layers_mut_unversioned(&mut self) -> &mut [Layer] {
        &mut self.layers
    }
}

/// Activations recorded by [`Network::forward`] for a later backward pass.
#[derive(Debug, Clone)]
pub struct Tape {
    version: u64,
    /// Input to each layer.
    pub(crate) inputs: Vec<Matrix>,
    /// Pre-activation of each layer.
    pub(crate) pre: Vec<Matrix>,
    /// Post-activation of each layer.
    pub(crate) post: Vec<Matrix>,
}

#[derive(Debug, Clone)]
pub struct Forward {
    pub output: Matrix,
    pub features: Matrix,
    pub tape: Tape,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerGradient {
    pub weights: Matrix,
    pub biases: Vec<f64>,
}

/// Parameter gradients with exactly the shapes of a [`Network`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub layers: Vec<LayerGradient>,
}

impl Gradients {
    pub fn zeros_like(net: &Network) -> Self {
        Self {
            layers: net
                .layers()
                .iter()
                .map(|l| LayerGradient {
                    weights: Matrix::zeros(l.input_dim(), l.output_dim()),
                    biases: alloc::vec![0.0; l.output_dim()],
                })
                .collect(),
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Gradients, scale: f64) -> Result<()> {
        if self.layers.len() != other.layers.len() {
            return Err(Error::DimensionMismatch {
                expected: self.layers.len(),
                found: other.layers.len(),
            });
        }
        for (a, b) in self.layers.iter_mut().zip(&other.layers) {
            a.weights.add_scaled(&b.weights, scale)?;
            if a.biases.len() != b.biases.len() {
                return Err(Error::DimensionMismatch {
                    expected: a.biases.len(),
                    found: b.biases.len(),
                });
            }
            for (x, y) in a.biases.iter_mut().zip(&b.biases) {
                *x += scale * y;
            }
        }
        Ok(())
    }

    pub fn matches(&self, net: &Network) -> bool {
        self.layers.len() == net.layers().len()
            && self.layers.iter().zip(net.layers()).all(|(g, l)| {
                g.weights.shape() == l.weights.shape() && g.biases.len() == l.biases.len()
            })
    }

    /// Flattened values, layer by layer (weights then biases).
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for l in &self.layers {
            out.extend_from_slice(l.weights.as_slice());
            out.extend_from_slice(&l.biases);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.flatten().iter().all(|g| *g == 0.0)
    }
}

/// Per-row gradient of `output . weights` w.r.t. the input rows.
pub fn input_gradient(net: &Network, x: &Matrix, output_weights: &[f64]) -> Result<Matrix> {
    if output_weights.len() != net.output_dim() {
        return Err(Error::DimensionMismatch {
            expected: net.output_dim(),
            found: output_weights.len(),
        });
    }
    let fwd = net.forward(x)?;
    let mut upstream = Matrix::zeros(x.rows(), net.output_dim());
    for r in 0..x.rows() {
        upstream.row_mut(r).copy_from_slice(output_weights);
    }
    Ok(net.backward_full(&fwd.tape, Some(&upstream), None)?.1)
}
