//! The extended neuron: activation functions, the slow internal-state update
//! and control-signal gating.

use rand::Rng;

use super::Activation;
use crate::error::{Error, Result};

/// Steepness of the `tanh` used for sigmoid neurons.
pub const SIGMOID_STEEPNESS: f64 = 4.0;

/// Applies the activation function `kind` to the weighted input sum `x`.
///
/// Control neurons use the threshold function. Random neurons ignore `x` and
/// draw uniformly from `[-1, 1]`.
#[inline]
pub fn activation_function<R: Rng + ?Sized>(kind: Activation, x: f64, rng: &mut R) -> f64 {
    match kind {
        Activation::Identity => x,
        Activation::Sigmoid => (SIGMOID_STEEPNESS * x).tanh(),
        Activation::Threshold | Activation::Control => {
            if x > 0.0 {
                1.0
            } else {
                0.0
            }
        }
        Activation::Random => rng.random_range(-1.0..=1.0),
    }
}

/// Moves the internal state `1/speed` of the way towards the activation `a`.
/// The returned value is both the new internal state and the neuron output.
#[inline]
pub fn update_internal_state(ins_prev: f64, a: f64, adaptation_speed: u32) -> f64 {
    ins_prev + (a - ins_prev) / f64::from(adaptation_speed)
}

/// Whether a neuron fires given its incoming control connections.
///
/// A neuron without control inputs has stimulation 0 and is active whenever
/// `threshold <= 0`.
pub fn control_activation(
    control_weights: &[f64],
    control_signals: &[f64],
    threshold: f64,
) -> Result<bool> {
    if control_weights.len() != control_signals.len() {
        return Err(Error::LengthMismatch {
            expected: control_weights.len(),
            actual: control_signals.len(),
        });
    }
    let stimulation: f64 = control_weights
        .iter()
        .zip(control_signals)
        .map(|(w, cs)| w * cs)
        .sum();
    Ok(stimulation >= threshold)
}
