use alloc::vec;
use alloc::vec::Vec;

use super::{Gradients, LayerGradient, Matrix, Network};
use crate::error::{Error, Result};
use crate::math;

/// Value and parameter gradients of the input-gradient-norm penalty
/// `mean_r (‖∇_x s(x_r)‖ − target_norm)²`, where `s` is the summed output.
///
/// The input gradient is itself a reverse pass; its parameter gradients are
/// obtained by differentiating that pass in reverse a second time.
pub fn penalty_parameter_gradients(
    net: &Network,
    x_hat: &Matrix,
    target_norm: f64,
) -> Result<(f64, Gradients)> {
    let n = x_hat.rows();
    if n == 0 {
        return Err(Error::EmptyBatch);
    }
    let fwd = net.forward(x_hat)?;
    let tape = &fwd.tape;
    let layers = net.layers();
    let depth = layers.len();

    // Reverse pass: e[l] is the gradient w.r.t. the input of layer l,
    // d[l] the gradient w.r.t. its pre-activation.
    let slopes: Vec<Matrix> = (0..depth)
        .map(|l| {
            let act = layers[l].activation;
            tape.pre[l].zip_map(&tape.post[l], |z, a| act.derivative(z, a))
        })
        .collect::<Result<_>>()?;
    let mut e: Vec<Matrix> = vec![Matrix::zeros(0, 0); depth + 1];
    let mut d: Vec<Matrix> = vec![Matrix::zeros(0, 0); depth];
    e[depth] = Matrix::filled(n, net.output_dim(), 1.0);
    for l in (0..depth).rev() {
        d[l] = e[l + 1].zip_map(&slopes[l], |g, s| g * s)?;
        e[l] = d[l].matmul_t(&layers[l].weights)?;
    }

    let mut per_row = Vec::with_capacity(n);
    let mut e_bar = Matrix::zeros(n, net.input_dim());
    for r in 0..n {
        let u = e[0].row(r);
        let norm = math::sqrt(u.iter().map(|v| v * v).sum());
        let gap = norm - target_norm;
        per_row.push(gap * gap);
        if norm > 0.0 {
            let coeff = 2.0 * gap / (norm * n as f64);
            for (b, v) in e_bar.row_mut(r).iter_mut().zip(u) {
                *b = coeff * v;
            }
        }
    }
    let value = math::sorted_sum(&mut per_row) / n as f64;

    // Adjoint of the reverse pass, walking from the input side outwards.
    let mut grads = Gradients::zeros_like(net);
    let mut z_bar: Vec<Matrix> = Vec::with_capacity(depth);
    for l in 0..depth {
        let act = layers[l].activation;
        grads.layers[l]
            .weights
            .add_assign(&e_bar.t_matmul(&d[l])?)?;
        let d_bar = e_bar.matmul(&layers[l].weights)?;
        let curvature = tape.pre[l].zip_map(&tape.post[l], |z, a| act.second_derivative(z, a))?;
        let mut zb = d_bar.zip_map(&e[l + 1], |db, ev| db * ev)?;
        zb = zb.zip_map(&curvature, |v, c| v * c)?;
        z_bar.push(zb);
        e_bar = d_bar.zip_map(&slopes[l], |db, s| db * s)?;
    }

    // Second-order terms flow back through the forward graph.
    let mut grad_a = Matrix::zeros(n, net.output_dim());
    for l in (0..depth).rev() {
        let mut grad_z = grad_a.zip_map(&slopes[l], |g, s| g * s)?;
        grad_z.add_assign(&z_bar[l])?;
        let lg: &mut LayerGradient = &mut grads.layers[l];
        lg.weights.add_assign(&tape.inputs[l].t_matmul(&grad_z)?)?;
        for (b, s) in lg.biases.iter_mut().zip(grad_z.column_sums()) {
            *b += s;
        }
        if l > 0 {
            grad_a = grad_z.matmul_t(&layers[l].weights)?;
        }
    }
    Ok((value, grads))
}

/// Penalty value only.
pub fn penalty_value(net: &Network, x_hat: &Matrix, target_norm: f64) -> Result<f64> {
    let g = super::input_gradient(net, x_hat, &vec![1.0; net.output_dim()])?;
    if g.rows() == 0 {
        return Err(Error::EmptyBatch);
    }
    let mut per_row: Vec<f64> = g
        .iter_rows()
        .map(|r| {
            let gap = math::sqrt(r.iter().map(|v| v * v).sum()) - target_norm;
            gap * gap
        })
        .collect();
    Ok(math::sorted_sum(&mut per_row) / g.rows() as f64)
}
