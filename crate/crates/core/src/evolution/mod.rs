//! The evolutionary loop around the unified neural model.

mod checkpoint;
mod config;
mod mutation;
mod population;

pub use checkpoint::Checkpoint;
pub use config::EvolutionConfig;
pub use mutation::{make_child, mutate, perturb_weights, MutationKind};
pub use population::{
    evaluate, init_population, select_winners, EvolutionState, GenerationReport, Individual,
    TrialOutcome,
};
