use rand::RngCore;

use super::{check_action, finite_or_zero, Environment, Transition};
use crate::error::{Error, Result};

pub const POSITION_RANGE: (f64, f64) = (-1.2, 0.6);
pub const VELOCITY_RANGE: (f64, f64) = (-0.07, 0.07);
pub const DEFAULT_MAX_STEPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MountainCarState {
    pub pos: f64,
    pub v: f64,
}

impl Default for MountainCarState {
    fn default() -> Self {
        MountainCarState { pos: -0.5, v: 0.0 }
    }
}

impl MountainCarState {
    /// Applies the car dynamics for action `a`, clamped to `[-1, 1]`.
    pub fn advance(self, a: f64) -> MountainCarState {
        let a = finite_or_zero(a).clamp(-1.0, 1.0);
        let mut v = self.v + a * 0.001 + (3.0 * self.pos).cos() * -0.0025;
        v = v.clamp(VELOCITY_RANGE.0, VELOCITY_RANGE.1);
        let mut pos = self.pos + v;
        if v < 0.0 && pos <= POSITION_RANGE.0 {
            v = 0.0;
            pos = POSITION_RANGE.0;
        }
        MountainCarState {
            pos: pos.min(POSITION_RANGE.1),
            v,
        }
    }

    pub fn at_goal(&self) -> bool {
        self.pos >= POSITION_RANGE.1
    }
}

/// Under-powered car in a valley; reward -1 per step until the right hilltop.
#[derive(Debug, Clone)]
pub struct MountainCar {
    pub state: MountainCarState,
    steps: usize,
    max_steps: usize,
    done: bool,
}

impl Default for MountainCar {
    fn default() -> Self {
        Self::new()
    }
}

impl MountainCar {
    pub fn new() -> Self {
        Self::with_max_steps(DEFAULT_MAX_STEPS)
    }

    pub fn with_max_steps(max_steps: usize) -> Self {
        MountainCar {
            state: MountainCarState::default(),
            steps: 0,
            max_steps,
            done: false,
        }
    }
}

impl Environment for MountainCar {
    fn observation_count(&self) -> usize {
        2
    }

    fn action_count(&self) -> usize {
        1
    }

    fn observation_ranges(&self) -> Vec<(f64, f64)> {
        vec![POSITION_RANGE, VELOCITY_RANGE]
    }

    fn action_ranges(&self) -> Vec<(f64, f64)> {
        vec![(-1.0, 1.0)]
    }

    fn max_steps(&self) -> usize {
        self.max_steps
    }

    fn reset(&mut self, _rng: &mut dyn RngCore) {
        self.state = MountainCarState::default();
        self.steps = 0;
        self.done = false;
    }

    fn observe(&self, out: &mut [f64]) {
        out[0] = self.state.pos;
        out[1] = self.state.v;
    }

    fn step(&mut self, action: &[f64]) -> Result<Transition> {
        if self.done {
            return Err(Error::EpisodeFinished);
        }
        check_action(action, 1)?;
        self.state = self.state.advance(action[0]);
        self.steps += 1;
        let (reward, done) = if self.state.at_goal() {
            (0.0, true)
        } else {
            (-1.0, self.steps >= self.max_steps)
        };
        self.done = done;
        Ok(Transition { reward, done })
    }
}
