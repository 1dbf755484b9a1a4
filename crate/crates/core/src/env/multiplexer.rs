use rand::seq::SliceRandom;
use rand::RngCore;

use super::{check_action, finite_or_zero, Environment, Transition};
use crate::error::{Error, Result};

/// One multiplexer input: `abits` address bits select one of `2^abits` data bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplexerCase {
    /// Most significant bit first.
    pub address: Vec<bool>,
    pub data: Vec<bool>,
}

impl MultiplexerCase {
    /// Decodes case `index`: the high `abits` bits are the address, bit `i`
    /// of the low part is data bit `i`.
    pub fn from_index(abits: u32, index: u64) -> Self {
        let data_len = 1u64 << abits;
        let address_value = index >> data_len;
        MultiplexerCase {
            address: (0..abits)
                .rev()
                .map(|b| (address_value >> b) & 1 == 1)
                .collect(),
            data: (0..data_len).map(|i| (index >> i) & 1 == 1).collect(),
        }
    }

    pub fn address_value(&self) -> usize {
        self.address
            .iter()
            .fold(0, |acc, &bit| (acc << 1) | usize::from(bit))
    }

    pub fn correct(&self) -> bool {
        self.data[self.address_value()]
    }

    /// Address bits then data bits, as 0/1.
    pub fn inputs(&self) -> Vec<f64> {
        self.address
            .iter()
            .chain(&self.data)
            .map(|&b| if b { 1.0 } else { 0.0 })
            .collect()
    }
}

pub fn case_count(abits: u32) -> u64 {
    1u64 << (abits + (1 << abits))
}

/// Every input combination once per trial, in random order. Reward 0 for a
/// correct answer, -1 otherwise; outputs above 0.5 read as 1.
#[derive(Debug, Clone)]
pub struct Multiplexer {
    abits: u32,
    order: Vec<u32>,
    cursor: usize,
    correct: usize,
    inputs: Vec<f64>,
}

impl Multiplexer {
    /// Panics for `abits > 4` (more than 2^20 cases).
    pub fn new(abits: u32) -> Self {
        assert!((1..=4).contains(&abits), "abits must be in 1..=4");
        let n = case_count(abits);
        Multiplexer {
            abits,
            order: (0..n as u32).collect(),
            cursor: 0,
            correct: 0,
            inputs: MultiplexerCase::from_index(abits, 0).inputs(),
        }
    }

    pub fn abits(&self) -> u32 {
        self.abits
    }

    /// Case indices in presentation order for the current trial.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Fraction of cases answered correctly so far in this trial.
    pub fn accuracy(&self) -> f64 {
        if self.cursor == 0 {
            0.0
        } else {
            self.correct as f64 / self.cursor as f64
        }
    }

    fn load_current(&mut self) {
        if let Some(&index) = self.order.get(self.cursor) {
            self.inputs = MultiplexerCase::from_index(self.abits, u64::from(index)).inputs();
        }
    }
}

impl Environment for Multiplexer {
    fn observation_count(&self) -> usize {
        self.abits as usize + (1 << self.abits)
    }

    fn action_count(&self) -> usize {
        1
    }

    fn observation_ranges(&self) -> Vec<(f64, f64)> {
        vec![(0.0, 1.0); self.observation_count()]
    }

    fn action_ranges(&self) -> Vec<(f64, f64)> {
        vec![(0.0, 1.0)]
    }

    fn max_steps(&self) -> usize {
        self.order.len()
    }

    fn reset(&mut self, rng: &mut dyn RngCore) {
        self.order.sort_unstable();
        self.order.shuffle(rng);
        self.cursor = 0;
        self.correct = 0;
        self.load_current();
    }

    fn observe(&self, out: &mut [f64]) {
        out.copy_from_slice(&self.inputs);
    }

    fn step(&mut self, action: &[f64]) -> Result<Transition> {
        if self.cursor >= self.order.len() {
            return Err(Error::EpisodeFinished);
        }
        check_action(action, 1)?;
        let case = MultiplexerCase::from_index(self.abits, u64::from(self.order[self.cursor]));
        let answer = finite_or_zero(action[0]) > 0.5;
        let right = answer == case.correct();
        self.correct += usize::from(right);
        self.cursor += 1;
        self.load_current();
        Ok(Transition {
            reward: if right { 0.0 } else { -1.0 },
            done: self.cursor == self.order.len(),
        })
    }
}

/// Runs one multiplexer trial against `policy` and returns the accumulated
/// reward and the accuracy.
pub fn multiplexer_trial<P>(mut policy: P, abits: u32, rng: &mut dyn RngCore) -> (f64, f64)
where
    P: FnMut(&[f64]) -> f64,
{
    let mut env = Multiplexer::new(abits);
    env.reset(rng);
    let mut obs = vec![0.0; env.observation_count()];
    let mut total = 0.0;
    loop {
        env.observe(&mut obs);
        let t = env.step(&[policy(&obs)]).expect("trial in progress");
        total += t.reward;
        if t.done {
            break;
        }
    }
    (total, env.accuracy())
}
