//! The unified neural model: genome encoding and phenotype execution.

mod genome;
pub mod neuron;
mod phenotype;

pub use genome::{
    Activation, AdaptationSpeed, ConnectionGene, Genome, NeuronGene, NeuronId, Role,
};
pub use neuron::{activation_function, control_activation, update_internal_state};
pub use phenotype::{build_schedule, Phenotype, Schedule, ACTIVITY_CUTOFF};
