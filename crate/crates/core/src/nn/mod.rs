//! Dense feed-forward networks with exact first- and second-order reverse mode.

mod matrix;
mod network;
mod optim;
mod penalty;

pub use matrix::Matrix;
pub use network::{
    input_gradient, Activation, Forward, Gradients, Layer, LayerGradient, Network, Tape,
};
pub use optim::{optimizer_step, Algorithm, OptimizerState};
pub use penalty::{penalty_parameter_gradients, penalty_value};
