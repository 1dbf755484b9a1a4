//! Episodic benchmark tasks behind one agent-environment interface.

mod double_pole;
mod function_approx;
mod mountain_car;
mod multiplexer;
mod normalize;
mod trace;

use rand::RngCore;

use crate::error::Result;

pub use double_pole::{
    DEFAULT_MAX_STEPS as DOUBLE_POLE_MAX_STEPS,
    derivatives, rk4_step, DoublePole, DoublePoleState, FAILURE_ANGLE, FORCE_MAG, TAU, TRACK_LIMIT,
};
pub use function_approx::{target as function_target, FunctionApprox};
pub use mountain_car::{MountainCar, MountainCarState};
pub use multiplexer::{multiplexer_trial, Multiplexer, MultiplexerCase};
pub use normalize::{
    action_from_unit, action_to_unit, denormalize_observation, normalize_observation, Normalized,
};
pub use trace::record_trajectory;

/// Outcome of one environment step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub reward: f64,
    pub done: bool,
}

pub trait Environment {
    fn observation_count(&self) -> usize;
    fn action_count(&self) -> usize;
    /// Declared range of each observation, used by [`Normalized`].
    fn observation_ranges(&self) -> Vec<(f64, f64)>;
    /// Declared range of each action, used by [`Normalized`].
    fn action_ranges(&self) -> Vec<(f64, f64)>;
    fn max_steps(&self) -> usize;
    /// Starts a new trial.
    fn reset(&mut self, rng: &mut dyn RngCore);
    /// Writes the current observation into `out`.
    fn observe(&self, out: &mut [f64]);
    /// Applies `action`. Fails with `EpisodeFinished` after the trial ended.
    fn step(&mut self, action: &[f64]) -> Result<Transition>;
}

impl<E: Environment + ?Sized> Environment for Box<E> {
    fn observation_count(&self) -> usize {
        (**self).observation_count()
    }
    fn action_count(&self) -> usize {
        (**self).action_count()
    }
    fn observation_ranges(&self) -> Vec<(f64, f64)> {
        (**self).observation_ranges()
    }
    fn action_ranges(&self) -> Vec<(f64, f64)> {
        (**self).action_ranges()
    }
    fn max_steps(&self) -> usize {
        (**self).max_steps()
    }
    fn reset(&mut self, rng: &mut dyn RngCore) {
        (**self).reset(rng)
    }
    fn observe(&self, out: &mut [f64]) {
        (**self).observe(out)
    }
    fn step(&mut self, action: &[f64]) -> Result<Transition> {
        (**self).step(action)
    }
}

/// Networks can emit non-finite values; environments read them as 0.
#[inline]
pub(crate) fn finite_or_zero(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        0.0
    }
}

pub(crate) fn check_action(action: &[f64], expected: usize) -> Result<()> {
    if action.len() != expected {
        return Err(crate::error::Error::LengthMismatch {
            expected,
            actual: action.len(),
        });
    }
    Ok(())
}
