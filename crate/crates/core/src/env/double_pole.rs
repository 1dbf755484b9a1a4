//! Two poles of different length hinged on one cart.
//!
//! Constants and integration follow the classic benchmark formulation: a 1 kg
//! cart on a ±2.4 m track, poles of 0.1 kg / 1 m and 0.01 kg / 0.1 m, hinge
//! friction 2e-6, force ±10 N, failure beyond ±36°, and two 0.01 s RK4
//! sub-steps per action. The long pole starts tilted by 0.07 rad.

use rand::RngCore;

use super::{check_action, finite_or_zero, Environment, Transition};
use crate::error::{Error, Result};

pub const GRAVITY: f64 = -9.8;
pub const MASS_CART: f64 = 1.0;
pub const MASS_POLE_1: f64 = 0.1;
pub const MASS_POLE_2: f64 = 0.01;
/// Half lengths.
pub const LENGTH_1: f64 = 0.5;
pub const LENGTH_2: f64 = 0.05;
pub const HINGE_FRICTION: f64 = 0.000_002;
pub const FORCE_MAG: f64 = 10.0;
pub const TAU: f64 = 0.01;
pub const TRACK_LIMIT: f64 = 2.4;
pub const FAILURE_ANGLE: f64 = 0.628_329;
pub const INITIAL_ANGLE: f64 = 0.07;
pub const DEFAULT_MAX_STEPS: usize = 100_000;

/// `[x, x_dot, theta1, theta1_dot, theta2, theta2_dot]`.
pub type DoublePoleState = [f64; 6];

/// Time derivative of `state` under `force` newtons.
pub fn derivatives(state: &DoublePoleState, force: f64) -> DoublePoleState {
    let pole = |theta: f64, theta_dot: f64, mass: f64, half_len: f64| {
        let (sin, cos) = theta.sin_cos();
        let g_sin = GRAVITY * sin;
        let ml = half_len * mass;
        let friction = HINGE_FRICTION * theta_dot / ml;
        let effective_force = ml * theta_dot * theta_dot * sin + 0.75 * mass * cos * (friction + g_sin);
        let effective_mass = mass * (1.0 - 0.75 * cos * cos);
        (cos, g_sin, friction, effective_force, effective_mass)
    };
    let (cos1, gs1, fr1, f1, m1) = pole(state[2], state[3], MASS_POLE_1, LENGTH_1);
    let (cos2, gs2, fr2, f2, m2) = pole(state[4], state[5], MASS_POLE_2, LENGTH_2);
    let x_acc = (force + f1 + f2) / (m1 + m2 + MASS_CART);
    [
        state[1],
        x_acc,
        state[3],
        -0.75 * (x_acc * cos1 + gs1 + fr1) / LENGTH_1,
        state[5],
        -0.75 * (x_acc * cos2 + gs2 + fr2) / LENGTH_2,
    ]
}

/// One classic fourth-order Runge-Kutta step of length `dt` with constant force.
pub fn rk4_step(state: &DoublePoleState, force: f64, dt: f64) -> DoublePoleState {
    let shifted = |base: &DoublePoleState, k: &DoublePoleState, h: f64| {
        let mut out = *base;
        for i in 0..6 {
            out[i] += h * k[i];
        }
        out
    };
    let k1 = derivatives(state, force);
    let k2 = derivatives(&shifted(state, &k1, dt / 2.0), force);
    let k3 = derivatives(&shifted(state, &k2, dt / 2.0), force);
    let k4 = derivatives(&shifted(state, &k3, dt), force);
    let mut out = *state;
    for i in 0..6 {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

pub fn within_bounds(state: &DoublePoleState) -> bool {
    state[0].abs() <= TRACK_LIMIT
        && state[2].abs() <= FAILURE_ANGLE
        && state[4].abs() <= FAILURE_ANGLE
}

#[derive(Debug, Clone)]
pub struct DoublePole {
    pub state: DoublePoleState,
    markov: bool,
    steps: usize,
    max_steps: usize,
    done: bool,
}

impl DoublePole {
    /// Full-state (Markov) variant.
    pub fn markov(max_steps: usize) -> Self {
        Self::new(true, max_steps)
    }

    /// Observes only cart position and the two pole angles.
    pub fn non_markov(max_steps: usize) -> Self {
        Self::new(false, max_steps)
    }

    pub fn new(markov: bool, max_steps: usize) -> Self {
        DoublePole {
            state: initial_state(),
            markov,
            steps: 0,
            max_steps,
            done: false,
        }
    }

    pub fn is_markov(&self) -> bool {
        self.markov
    }
}

fn initial_state() -> DoublePoleState {
    [0.0, 0.0, INITIAL_ANGLE, 0.0, 0.0, 0.0]
}

impl Environment for DoublePole {
    fn observation_count(&self) -> usize {
        if self.markov {
            6
        } else {
            3
        }
    }

    fn action_count(&self) -> usize {
        1
    }

    fn observation_ranges(&self) -> Vec<(f64, f64)> {
        let x = (-TRACK_LIMIT, TRACK_LIMIT);
        let angle = (-FAILURE_ANGLE, FAILURE_ANGLE);
        if self.markov {
            vec![x, (-0.75, 0.75), angle, (-1.0, 1.0), angle, (-1.0, 1.0)]
        } else {
            vec![x, angle, angle]
        }
    }

    /// The action is a force fraction; `force = FORCE_MAG * clamp(a, -1, 1)`.
    fn action_ranges(&self) -> Vec<(f64, f64)> {
        vec![(-1.0, 1.0)]
    }

    fn max_steps(&self) -> usize {
        self.max_steps
    }

    fn reset(&mut self, _rng: &mut dyn RngCore) {
        self.state = initial_state();
        self.steps = 0;
        self.done = false;
    }

    fn observe(&self, out: &mut [f64]) {
        if self.markov {
            out.copy_from_slice(&self.state);
        } else {
            out[0] = self.state[0];
            out[1] = self.state[2];
            out[2] = self.state[4];
        }
    }

    fn step(&mut self, action: &[f64]) -> Result<Transition> {
        if self.done {
            return Err(Error::EpisodeFinished);
        }
        check_action(action, 1)?;
        let force = FORCE_MAG * finite_or_zero(action[0]).clamp(-1.0, 1.0);
        for _ in 0..2 {
            self.state = rk4_step(&self.state, force, TAU);
        }
        self.steps += 1;
        let balanced = within_bounds(&self.state);
        self.done = !balanced || self.steps >= self.max_steps;
        Ok(Transition {
            reward: if balanced { 1.0 } else { 0.0 },
            done: self.done,
        })
    }
}
