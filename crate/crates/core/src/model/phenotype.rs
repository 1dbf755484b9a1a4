//! Executable network built from a [`Genome`].
//!
//! Neurons run once per step in four phases:
//!
//! 1. input neurons;
//! 2. control neurons that receive no control signal from another control neuron;
//! 3. the remaining control neurons;
//! 4. every other neuron.
//!
//! Inside a phase neurons run by ascending id. Updates are asynchronous: a
//! connection reads its source's value from this step if the source already
//! ran, otherwise from the previous step. An inactive neuron emits 0 and
//! keeps its internal state. In phase 4 outputs with `|y| <= 0.001` are
//! emitted as 0 while the internal state still moves. Input and output
//! neurons are cleared after every step.

use rand::Rng;

use super::neuron::{activation_function, update_internal_state};
use super::{Activation, ConnectionGene, Genome, NeuronId, Role};
use crate::error::{Error, Result};

/// Phase-4 outputs at or below this magnitude do not propagate.
pub const ACTIVITY_CUTOFF: f64 = 0.001;

/// Neuron ids grouped into the four execution phases.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    pub phases: [Vec<NeuronId>; 4],
}

/// Computes the execution phases of `genome`.
///
/// A control neuron whose only control input is a self-loop still counts as
/// free of control inputs from *other* control neurons and lands in phase 2.
pub fn build_schedule(genome: &Genome) -> Schedule {
    let is_control = |id: NeuronId| genome.neuron(id).is_some_and(|n| n.is_control());
    let mut ids: Vec<&super::NeuronGene> = genome.neurons.iter().collect();
    ids.sort_by_key(|n| n.id);
    let mut schedule = Schedule::default();
    for n in ids {
        let phase = if n.role == Role::Input {
            0
        } else if n.is_control() {
            let gated_by_control = genome
                .connections
                .iter()
                .any(|c| c.to == n.id && c.from != n.id && is_control(c.from));
            if gated_by_control {
                2
            } else {
                1
            }
        } else {
            3
        };
        schedule.phases[phase].push(n.id);
    }
    schedule
}

const NO_MODULATOR: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Edge {
    source: u32,
    modulator: u32,
    weight: f64,
}

#[derive(Debug, Clone)]
pub struct Phenotype {
    ids: Vec<NeuronId>,
    kinds: Vec<Activation>,
    speeds: Vec<u32>,
    input_slot: Vec<Option<usize>>,
    ins: Vec<f64>,
    values: Vec<f64>,
    active: Vec<bool>,
    data_start: Vec<usize>,
    data_edges: Vec<Edge>,
    control_start: Vec<usize>,
    control_edges: Vec<Edge>,
    order: Vec<u32>,
    /// Start of phase 4 inside `order`.
    cutoff_from: usize,
    interface: Vec<u32>,
    inputs: Vec<(u32, usize)>,
    outputs: Vec<(u32, usize)>,
    threshold: f64,
}

impl Phenotype {
    /// Builds a phenotype with all state zeroed. `threshold` is the
    /// excitation threshold of control gating.
    pub fn new(genome: &Genome, threshold: f64) -> Result<Self> {
        let mut neurons: Vec<&super::NeuronGene> = genome.neurons.iter().collect();
        neurons.sort_by_key(|n| n.id);
        if neurons.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::Integrity("duplicate neuron id".into()));
        }
        let ids: Vec<NeuronId> = neurons.iter().map(|n| n.id).collect();
        let index_of = |id: NeuronId| -> Result<u32> {
            ids.binary_search(&id)
                .map(|i| i as u32)
                .map_err(|_| Error::UnknownNeuron(id))
        };
        let n = neurons.len();
        let mut data: Vec<Vec<Edge>> = vec![Vec::new(); n];
        let mut control: Vec<Vec<Edge>> = vec![Vec::new(); n];
        for c in &genome.connections {
            let source = index_of(c.from)?;
            let target = index_of(c.to)? as usize;
            let modulator = match c.modulator {
                Some(m) => index_of(m)?,
                None => NO_MODULATOR,
            };
            let edge = Edge {
                source,
                modulator,
                weight: f64::from(c.weight),
            };
            if neurons[source as usize].is_control() {
                control[target].push(edge);
            } else {
                data[target].push(edge);
            }
        }
        let flatten = |lists: Vec<Vec<Edge>>| {
            let mut start = Vec::with_capacity(n + 1);
            let mut edges = Vec::new();
            start.push(0);
            for list in lists {
                edges.extend(list);
                start.push(edges.len());
            }
            (start, edges)
        };
        let (data_start, data_edges) = flatten(data);
        let (control_start, control_edges) = flatten(control);

        let schedule = build_schedule(genome);
        let mut order = Vec::with_capacity(n);
        for phase in &schedule.phases[..3] {
            order.extend(phase.iter().map(|&id| index_of(id).expect("scheduled id")));
        }
        let cutoff_from = order.len();
        order.extend(schedule.phases[3].iter().map(|&id| index_of(id).expect("scheduled id")));

        let mut input_slot = vec![None; n];
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        let mut interface = Vec::new();
        for (i, neuron) in neurons.iter().enumerate() {
            match neuron.role {
                Role::Input => {
                    input_slot[i] = Some(neuron.interface_index);
                    inputs.push((i as u32, neuron.interface_index));
                    interface.push(i as u32);
                }
                Role::Output => {
                    outputs.push((i as u32, neuron.interface_index));
                    interface.push(i as u32);
                }
                Role::Hidden => {}
            }
        }
        for (slots, what) in [(&inputs, "input"), (&outputs, "output")] {
            if slots.iter().any(|&(_, s)| s >= slots.len()) {
                return Err(Error::Integrity(format!("{what} interface index out of range")));
            }
        }

        Ok(Phenotype {
            kinds: neurons.iter().map(|n| n.activation).collect(),
            speeds: neurons.iter().map(|n| n.speed.steps()).collect(),
            ids,
            input_slot,
            ins: vec![0.0; n],
            values: vec![0.0; n],
            active: vec![false; n],
            data_start,
            data_edges,
            control_start,
            control_edges,
            order,
            cutoff_from,
            interface,
            inputs,
            outputs,
            threshold,
        })
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    /// Zeroes internal states and outputs, as at the start of a trial.
    pub fn reset(&mut self) {
        self.ins.fill(0.0);
        self.values.fill(0.0);
        self.active.fill(false);
    }

    fn index(&self, id: NeuronId) -> Result<usize> {
        self.ids.binary_search(&id).map_err(|_| Error::UnknownNeuron(id))
    }

    /// Current emitted value of a neuron (0 when inactive or cut off).
    pub fn output_of(&self, id: NeuronId) -> Result<f64> {
        Ok(self.values[self.index(id)?])
    }

    pub fn internal_state(&self, id: NeuronId) -> Result<f64> {
        Ok(self.ins[self.index(id)?])
    }

    /// Whether the neuron fired during the most recent step.
    pub fn is_active(&self, id: NeuronId) -> Result<bool> {
        Ok(self.active[self.index(id)?])
    }

    /// The weight `conn` contributes with right now: its stored weight, or
    /// the current output of its modulating neuron.
    pub fn effective_weight(&self, conn: &ConnectionGene) -> Result<f64> {
        match conn.modulator {
            None => Ok(f64::from(conn.weight)),
            Some(m) => self.output_of(m),
        }
    }

    #[inline]
    fn weighted_sum(&self, edges: &[Edge]) -> f64 {
        edges
            .iter()
            .map(|e| {
                let w = if e.modulator == NO_MODULATOR {
                    e.weight
                } else {
                    self.values[e.modulator as usize]
                };
                w * self.values[e.source as usize]
            })
            .sum()
    }

    /// Runs one network step and returns the output vector, indexed by action.
    pub fn step<R: Rng + ?Sized>(&mut self, inputs: &[f64], rng: &mut R) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.outputs.len()];
        self.step_into(inputs, &mut out, rng)?;
        Ok(out)
    }

    /// Allocation-free variant of [`Phenotype::step`].
    pub fn step_into<R: Rng + ?Sized>(
        &mut self,
        inputs: &[f64],
        outputs: &mut [f64],
        rng: &mut R,
    ) -> Result<()> {
        if inputs.len() != self.inputs.len() {
            return Err(Error::LengthMismatch {
                expected: self.inputs.len(),
                actual: inputs.len(),
            });
        }
        if outputs.len() != self.outputs.len() {
            return Err(Error::LengthMismatch {
                expected: self.outputs.len(),
                actual: outputs.len(),
            });
        }
        for pos in 0..self.order.len() {
            let i = self.order[pos] as usize;
            let gate = &self.control_edges[self.control_start[i]..self.control_start[i + 1]];
            let stimulation = self.weighted_sum(gate);
            if !(stimulation >= self.threshold) {
                self.active[i] = false;
                self.values[i] = 0.0;
                continue;
            }
            self.active[i] = true;
            let mut sum = self.weighted_sum(&self.data_edges[self.data_start[i]..self.data_start[i + 1]]);
            if let Some(slot) = self.input_slot[i] {
                sum += inputs[slot];
            }
            let a = activation_function(self.kinds[i], sum, rng);
            let y = update_internal_state(self.ins[i], a, self.speeds[i]);
            self.ins[i] = y;
            self.values[i] = if pos >= self.cutoff_from && y.abs() <= ACTIVITY_CUTOFF {
                0.0
            } else {
                y
            };
        }
        for &(i, slot) in &self.outputs {
            outputs[slot] = self.values[i as usize];
        }
        for &i in &self.interface {
            self.values[i as usize] = 0.0;
            self.ins[i as usize] = 0.0;
        }
        Ok(())
    }
}
