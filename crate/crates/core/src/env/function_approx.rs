use rand::RngCore;

use super::{check_action, finite_or_zero, Environment, Transition};
use crate::error::{Error, Result};

pub const X_START: i32 = -100;
pub const X_END: i32 = 100;

/// The sequence to reproduce. Both sines take radians.
pub fn target(x: f64) -> f64 {
    x.powi(3) / 1000.0 + 0.4 * x + 20.0 * (x / 10.0).sin() + 20.0 * (100.0 * x).sin()
}

/// Sequence prediction over x = -100..=100; the observation is raw `x` and
/// the reward is `-|action - target(x)|`.
#[derive(Debug, Clone)]
pub struct FunctionApprox {
    x: i32,
    done: bool,
}

impl Default for FunctionApprox {
    fn default() -> Self {
        Self::new()
    }
}

impl FunctionApprox {
    pub fn new() -> Self {
        FunctionApprox {
            x: X_START,
            done: false,
        }
    }
}

impl Environment for FunctionApprox {
    fn observation_count(&self) -> usize {
        1
    }

    fn action_count(&self) -> usize {
        1
    }

    fn observation_ranges(&self) -> Vec<(f64, f64)> {
        vec![(f64::from(X_START), f64::from(X_END))]
    }

    fn action_ranges(&self) -> Vec<(f64, f64)> {
        vec![(-1100.0, 1100.0)]
    }

    fn max_steps(&self) -> usize {
        (X_END - X_START + 1) as usize
    }

    fn reset(&mut self, _rng: &mut dyn RngCore) {
        self.x = X_START;
        self.done = false;
    }

    fn observe(&self, out: &mut [f64]) {
        out[0] = f64::from(self.x);
    }

    fn step(&mut self, action: &[f64]) -> Result<Transition> {
        if self.done {
            return Err(Error::EpisodeFinished);
        }
        check_action(action, 1)?;
        let reward = -(finite_or_zero(action[0]) - target(f64::from(self.x))).abs();
        self.done = self.x == X_END;
        self.x += 1;
        Ok(Transition {
            reward,
            done: self.done,
        })
    }
}
