//! Neuroevolution with a unified neuron model.
//!
//! Genomes describe recurrent networks of extended neurons (five activation
//! kinds, three adaptation speeds, control gating and neuromodulated
//! connections). A novelty map over structural spectra keeps the population
//! diverse while only mutation drives the search.
//!
//! ```no_run
//! use std::ops::ControlFlow;
//! use neuroevo::harness::{run_single, ExperimentConfig, Task};
//!
//! let mut cfg = ExperimentConfig::new(Task::MountainCar, "out");
//! cfg.trials = 20_000;
//! let outcome = run_single(&cfg, 0, |_| ControlFlow::Continue(())).unwrap();
//! println!("{}", outcome.champion.to_text());
//! ```

pub mod env;
pub mod error;
pub mod evolution;
pub mod format;
pub mod harness;
pub mod model;
pub mod novelty_map;
pub mod rng;
pub mod spectrum;

pub use error::{Error, Result};
pub use model::{Genome, Phenotype};
pub use novelty_map::NoveltyMap;
pub use spectrum::{compute_spectrum, Spectrum};
