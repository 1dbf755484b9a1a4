//! Structural mutation operators and child creation.
//!
//! Every random decision consumes a fixed number of draws no matter which
//! options the configuration allows. Removing an option (an ablation) then
//! changes only the decisions that involve it, not the rest of the sequence.

use rand::Rng;

use super::EvolutionConfig;
use crate::model::{Activation, ConnectionGene, Genome, NeuronGene, Role};
use crate::rng::{index_from_unit, unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationKind {
    AddNeuron,
    DeleteNeuron,
    AddConnection,
    DeleteConnection,
}

impl MutationKind {
    pub const ALL: [MutationKind; 4] = [
        MutationKind::AddNeuron,
        MutationKind::DeleteNeuron,
        MutationKind::AddConnection,
        MutationKind::DeleteConnection,
    ];

    fn draw<R: Rng + ?Sized>(probabilities: &[f64; 4], rng: &mut R) -> Self {
        let u = unit(rng);
        let mut acc = 0.0;
        for (kind, p) in Self::ALL.iter().zip(probabilities) {
            acc += p;
            if u < acc {
                return *kind;
            }
        }
        // Rounding in the cumulative sum; fall back to the last non-zero entry.
        Self::ALL
            .iter()
            .zip(probabilities)
            .rev()
            .find(|(_, &p)| p > 0.0)
            .map_or(MutationKind::DeleteConnection, |(k, _)| *k)
    }
}

fn draw_weight<R: Rng + ?Sized>(cfg: &EvolutionConfig, rng: &mut R) -> f32 {
    let w: f64 = rng.random_range(-1.0..=1.0);
    if cfg.real_weights {
        w as f32
    } else if w < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn random_neuron<R: Rng + ?Sized>(genome: &Genome, rng: &mut R) -> crate::model::NeuronId {
    genome.neurons[index_from_unit(unit(rng), genome.neurons.len())].id
}

/// Applies one randomly drawn mutation to `genome` and reports which one.
/// Degenerate draws (nothing to delete) leave the genome unchanged.
pub fn mutate<R: Rng + ?Sized>(genome: &mut Genome, cfg: &EvolutionConfig, rng: &mut R) -> MutationKind {
    let kind = MutationKind::draw(&cfg.mutation_probabilities, rng);
    match kind {
        MutationKind::AddNeuron => add_neuron(genome, cfg, rng),
        MutationKind::DeleteNeuron => delete_neuron(genome, rng),
        MutationKind::AddConnection => add_connection(genome, cfg, rng),
        MutationKind::DeleteConnection => {
            let u = unit(rng);
            if !genome.connections.is_empty() {
                let at = index_from_unit(u, genome.connections.len());
                genome.connections.remove(at);
            }
        }
    }
    kind
}

fn add_neuron<R: Rng + ?Sized>(genome: &mut Genome, cfg: &EvolutionConfig, rng: &mut R) {
    let control = unit(rng) < cfg.control_neuron_probability;
    let type_draw = unit(rng);
    let speed_draw = unit(rng);
    let activation = if control || cfg.hidden_activations.is_empty() {
        Activation::Control
    } else {
        cfg.hidden_activations[index_from_unit(type_draw, cfg.hidden_activations.len())]
    };
    let speed = cfg.adaptation_speeds[index_from_unit(speed_draw, cfg.adaptation_speeds.len())];
    let id = genome.fresh_id();
    genome.neurons.push(NeuronGene::hidden(id, activation, speed));

    let source = random_neuron(genome, rng);
    let w_in = draw_weight(cfg, rng);
    let target = random_neuron(genome, rng);
    let w_out = draw_weight(cfg, rng);
    genome.connections.push(ConnectionGene {
        from: source,
        to: id,
        weight: w_in,
        modulator: None,
    });
    genome.connections.push(ConnectionGene {
        from: id,
        to: target,
        weight: w_out,
        modulator: None,
    });
}

/// Removes a random hidden neuron with every connection into or out of it.
/// Connections it modulated fall back to their stored weight.
fn delete_neuron<R: Rng + ?Sized>(genome: &mut Genome, rng: &mut R) {
    let u = unit(rng);
    let hidden: Vec<usize> = genome
        .neurons
        .iter()
        .enumerate()
        .filter(|(_, n)| n.role == Role::Hidden)
        .map(|(i, _)| i)
        .collect();
    if hidden.is_empty() {
        return;
    }
    let victim = genome.neurons.remove(hidden[index_from_unit(u, hidden.len())]).id;
    genome.connections.retain(|c| c.from != victim && c.to != victim);
    for c in &mut genome.connections {
        if c.modulator == Some(victim) {
            c.modulator = None;
        }
    }
}

fn add_connection<R: Rng + ?Sized>(genome: &mut Genome, cfg: &EvolutionConfig, rng: &mut R) {
    let from = random_neuron(genome, rng);
    let to = random_neuron(genome, rng);
    let weight = draw_weight(cfg, rng);
    let modulated = unit(rng) < cfg.neuromodulation_probability;
    let modulator = random_neuron(genome, rng);
    genome.connections.push(ConnectionGene {
        from,
        to,
        weight,
        modulator: modulated.then_some(modulator),
    });
}

/// Perturbs each weight with probability `perturbation_probability` by a
/// uniform offset in `[-|w|, |w|]`, clamped to `[-1, 1]`.
pub fn perturb_weights<R: Rng + ?Sized>(genome: &mut Genome, cfg: &EvolutionConfig, rng: &mut R) {
    for c in &mut genome.connections {
        let hit = unit(rng) < cfg.perturbation_probability;
        let offset = 2.0 * unit(rng) - 1.0;
        if hit && cfg.real_weights {
            let w = f64::from(c.weight);
            c.weight = (w + offset * w.abs()).clamp(-1.0, 1.0) as f32;
        }
    }
}

/// Copies `parent`, applies the configured number of step mutations and then
/// perturbs the weights.
pub fn make_child<R: Rng + ?Sized>(parent: &Genome, cfg: &EvolutionConfig, rng: &mut R) -> Genome {
    let mut child = parent.clone();
    for _ in 0..cfg.step_mutations {
        mutate(&mut child, cfg, rng);
    }
    perturb_weights(&mut child, cfg, rng);
    child
}
