use rand::RngCore;

use super::{check_action, Environment, Transition};
use crate::error::Result;

/// Maps `v` from `(lo, hi)` onto `(-1, 1)`.
pub fn normalize_observation(v: f64, (lo, hi): (f64, f64)) -> f64 {
    2.0 * (v - lo) / (hi - lo) - 1.0
}

pub fn denormalize_observation(n: f64, (lo, hi): (f64, f64)) -> f64 {
    lo + (n + 1.0) * (hi - lo) / 2.0
}

/// Maps a network output `u` from `(0, 1)` onto `(lo, hi)`.
pub fn action_from_unit(u: f64, (lo, hi): (f64, f64)) -> f64 {
    lo + u * (hi - lo)
}

pub fn action_to_unit(a: f64, (lo, hi): (f64, f64)) -> f64 {
    (a - lo) / (hi - lo)
}

/// Presents observations scaled to `(-1, 1)` and reads actions in `(0, 1)`,
/// both relative to the wrapped environment's declared ranges.
#[derive(Debug, Clone)]
pub struct Normalized<E> {
    inner: E,
    observation_ranges: Vec<(f64, f64)>,
    action_ranges: Vec<(f64, f64)>,
    scratch: Vec<f64>,
}

impl<E: Environment> Normalized<E> {
    pub fn new(inner: E) -> Self {
        Normalized {
            observation_ranges: inner.observation_ranges(),
            action_ranges: inner.action_ranges(),
            scratch: vec![0.0; inner.action_count()],
            inner,
        }
    }

    pub fn inner(&self) -> &E {
        &self.inner
    }
}

impl<E: Environment> Environment for Normalized<E> {
    fn observation_count(&self) -> usize {
        self.inner.observation_count()
    }

    fn action_count(&self) -> usize {
        self.inner.action_count()
    }

    fn observation_ranges(&self) -> Vec<(f64, f64)> {
        vec![(-1.0, 1.0); self.observation_count()]
    }

    fn action_ranges(&self) -> Vec<(f64, f64)> {
        vec![(0.0, 1.0); self.action_count()]
    }

    fn max_steps(&self) -> usize {
        self.inner.max_steps()
    }

    fn reset(&mut self, rng: &mut dyn RngCore) {
        self.inner.reset(rng);
    }

    fn observe(&self, out: &mut [f64]) {
        self.inner.observe(out);
        for (v, &range) in out.iter_mut().zip(&self.observation_ranges) {
            *v = normalize_observation(*v, range);
        }
    }

    fn step(&mut self, action: &[f64]) -> Result<Transition> {
        check_action(action, self.action_ranges.len())?;
        for ((slot, &u), &range) in self.scratch.iter_mut().zip(action).zip(&self.action_ranges) {
            *slot = action_from_unit(u, range);
        }
        self.inner.step(&self.scratch)
    }
}
