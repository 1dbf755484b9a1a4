//! Population state and the generational loop: evaluate, niche with the
//! novelty map, keep one survivor per cell, refill with mutated children.

use std::cmp::Ordering;

use rand::{Rng, RngCore};
use rayon::prelude::*;

use super::mutation::{make_child, mutate};
use super::EvolutionConfig;
use crate::env::Environment;
use crate::error::{Error, Result};
use crate::model::{Genome, Phenotype};
use crate::novelty_map::NoveltyMap;
use crate::rng::{self, index_from_unit, unit};
use crate::spectrum::{compute_spectrum, Spectrum};

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    /// Stable identity; keys the random stream of the individual's network.
    pub uid: u64,
    pub genome: Genome,
    pub fitness: Option<f64>,
    pub accumulated: Option<f64>,
    pub spectrum: Option<Spectrum>,
    pub cell: Option<usize>,
}

impl Individual {
    pub fn new(uid: u64, genome: Genome) -> Self {
        Individual {
            uid,
            genome,
            fitness: None,
            accumulated: None,
            spectrum: None,
            cell: None,
        }
    }

    fn cleared(mut self) -> Self {
        self.fitness = None;
        self.accumulated = None;
        self.spectrum = None;
        self.cell = None;
        self
    }
}

/// Result of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    /// Mean reward per step; the selection fitness.
    pub fitness: f64,
    /// Summed reward; what learning curves report.
    pub accumulated: f64,
    pub steps: usize,
}

/// Runs one full trial of `genome` in `env` with a freshly zeroed network.
pub fn evaluate<E: Environment + ?Sized>(
    genome: &Genome,
    env: &mut E,
    threshold: f64,
    network_rng: &mut dyn RngCore,
    env_rng: &mut dyn RngCore,
) -> Result<TrialOutcome> {
    let mut net = Phenotype::new(genome, threshold)?;
    if net.input_count() != env.observation_count() || net.output_count() != env.action_count() {
        return Err(Error::Integrity(format!(
            "genome has {} inputs / {} outputs, environment needs {} / {}",
            net.input_count(),
            net.output_count(),
            env.observation_count(),
            env.action_count()
        )));
    }
    let mut observation = vec![0.0; env.observation_count()];
    let mut action = vec![0.0; env.action_count()];
    env.reset(env_rng);
    let mut accumulated = 0.0;
    let mut steps = 0usize;
    loop {
        env.observe(&mut observation);
        net.step_into(&observation, &mut action, network_rng)?;
        let t = env.step(&action)?;
        accumulated += t.reward;
        steps += 1;
        if t.done {
            break;
        }
    }
    Ok(TrialOutcome {
        fitness: accumulated / steps as f64,
        accumulated,
        steps,
    })
}

/// Summary of one evaluated generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationReport {
    pub generation: u64,
    /// Accumulated reward of every trial, in population order.
    pub accumulated: Vec<f64>,
    pub fitness: Vec<f64>,
    pub best_index: usize,
    pub best_fitness: f64,
    /// Accumulated reward of the fittest individual.
    pub best_accumulated: f64,
    pub mean_fitness: f64,
    pub occupied_cells: usize,
    pub best_genome: Genome,
}

fn by_fitness(a: f64, b: f64) -> Ordering {
    a.total_cmp(&b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionState {
    pub cfg: EvolutionConfig,
    pub inputs: usize,
    pub outputs: usize,
    /// Index of the next generation to be evaluated.
    pub generation: u64,
    pub next_uid: u64,
    pub population: Vec<Individual>,
    pub map: NoveltyMap<Spectrum>,
}

/// Creates `population_size` interface genomes, each followed by
/// `initial_mutations` independent mutations.
pub fn init_population(cfg: &EvolutionConfig, inputs: usize, outputs: usize) -> Result<Vec<Individual>> {
    cfg.validate()?;
    if inputs == 0 || outputs == 0 {
        return Err(Error::Config("problems need at least one input and one output".into()));
    }
    Ok((0..cfg.population_size)
        .map(|i| {
            let mut rng = rng::stream(cfg.master_seed, &[rng::STREAM_INIT, i as u64]);
            let mut genome = Genome::with_interface(inputs, outputs);
            for _ in 0..cfg.initial_mutations {
                mutate(&mut genome, cfg, &mut rng);
            }
            Individual::new(i as u64, genome)
        })
        .collect())
}

impl EvolutionState {
    pub fn new(cfg: EvolutionConfig, inputs: usize, outputs: usize) -> Result<Self> {
        let population = init_population(&cfg, inputs, outputs)?;
        Ok(EvolutionState {
            map: NoveltyMap::new(cfg.max_novelty_cells)?,
            next_uid: population.len() as u64,
            generation: 0,
            inputs,
            outputs,
            population,
            cfg,
        })
    }

    /// Evaluates every individual for one trial, in parallel.
    pub fn evaluate_population<E, F>(&mut self, make_env: &F) -> Result<()>
    where
        E: Environment,
        F: Fn() -> E + Sync,
    {
        let seed = self.cfg.master_seed;
        let generation = self.generation;
        let threshold = self.cfg.excitation_threshold;
        let outcomes: Vec<TrialOutcome> = self
            .population
            .par_iter()
            .enumerate()
            .map(|(i, ind)| {
                let mut env = make_env();
                let mut net_rng = rng::stream(seed, &[rng::STREAM_NETWORK, ind.uid]);
                let mut env_rng =
                    rng::stream(seed, &[rng::STREAM_ENVIRONMENT, generation, i as u64]);
                evaluate(&ind.genome, &mut env, threshold, &mut net_rng, &mut env_rng)
            })
            .collect::<Result<_>>()?;
        for (ind, outcome) in self.population.iter_mut().zip(outcomes) {
            ind.fitness = Some(outcome.fitness);
            ind.accumulated = Some(outcome.accumulated);
        }
        Ok(())
    }

    /// Computes spectra and presents them to the novelty map in population order.
    pub fn assign_cells(&mut self) {
        for ind in &mut self.population {
            let spectrum = compute_spectrum(&ind.genome);
            ind.spectrum = Some(spectrum);
            ind.cell = Some(self.map.present(&spectrum));
        }
    }

    /// One survivor per novelty-map cell, in cell order. Empty cells receive
    /// a copy of a random survivor.
    pub fn select<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Vec<Individual>> {
        let winners = select_winners(&self.population, self.map.len())?;
        let survivors: Vec<usize> = winners.iter().flatten().copied().collect();
        let mut parents = Vec::with_capacity(winners.len());
        for winner in winners {
            let u = unit(rng);
            let individual = match winner {
                Some(i) => self.population[i].clone(),
                None => {
                    let source = survivors[index_from_unit(u, survivors.len())];
                    let uid = self.next_uid;
                    self.next_uid += 1;
                    Individual::new(uid, self.population[source].genome.clone())
                }
            };
            parents.push(individual);
        }
        Ok(parents)
    }

    /// Runs one full generation and leaves the next, unevaluated population
    /// in place.
    pub fn step_generation<E, F>(&mut self, make_env: &F) -> Result<GenerationReport>
    where
        E: Environment,
        F: Fn() -> E + Sync,
    {
        self.evaluate_population(make_env)?;
        self.assign_cells();
        let report = self.report();

        let mut rng = rng::stream(
            self.cfg.master_seed,
            &[rng::STREAM_REPRODUCTION, self.generation],
        );
        let parents = self.select(&mut rng)?;
        let mut next: Vec<Individual> = parents.iter().cloned().map(Individual::cleared).collect();
        while next.len() < self.cfg.population_size {
            let parent = &parents[index_from_unit(unit(&mut rng), parents.len())];
            let child = make_child(&parent.genome, &self.cfg, &mut rng);
            next.push(Individual::new(self.next_uid, child));
            self.next_uid += 1;
        }
        self.population = next;
        self.generation += 1;
        Ok(report)
    }

    fn report(&self) -> GenerationReport {
        let fitness: Vec<f64> = self
            .population
            .iter()
            .map(|i| i.fitness.expect("evaluated"))
            .collect();
        let accumulated: Vec<f64> = self
            .population
            .iter()
            .map(|i| i.accumulated.expect("evaluated"))
            .collect();
        let best_index = (0..fitness.len())
            .max_by(|&a, &b| by_fitness(fitness[a], fitness[b]).then(b.cmp(&a)))
            .expect("non-empty population");
        let mut cells: Vec<usize> = self.population.iter().filter_map(|i| i.cell).collect();
        cells.sort_unstable();
        cells.dedup();
        GenerationReport {
            generation: self.generation,
            best_fitness: fitness[best_index],
            best_accumulated: accumulated[best_index],
            mean_fitness: fitness.iter().sum::<f64>() / fitness.len() as f64,
            occupied_cells: cells.len(),
            best_genome: self.population[best_index].genome.clone(),
            best_index,
            accumulated,
            fitness,
        }
    }
}

/// Index of the winner of each of `cells` cells, or `None` for an empty cell.
///
/// Winners have the highest fitness; ties go to the genome with fewer
/// neurons, then to the lower population index.
pub fn select_winners(population: &[Individual], cells: usize) -> Result<Vec<Option<usize>>> {
    if population.is_empty() {
        return Err(Error::Config("cannot select from an empty population".into()));
    }
    let mut winners: Vec<Option<usize>> = vec![None; cells];
    for (i, ind) in population.iter().enumerate() {
        let (Some(cell), Some(fitness)) = (ind.cell, ind.fitness) else {
            return Err(Error::Config(format!(
                "individual {i} lacks fitness or cell before selection"
            )));
        };
        let slot = winners
            .get_mut(cell)
            .ok_or_else(|| Error::Config(format!("cell {cell} outside the map")))?;
        let better = match *slot {
            None => true,
            Some(j) => {
                let other = &population[j];
                match by_fitness(fitness, other.fitness.expect("checked")) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => ind.genome.neurons.len() < other.genome.neurons.len(),
                }
            }
        };
        if better {
            *slot = Some(i);
        }
    }
    Ok(winners)
}
