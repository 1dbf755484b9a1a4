//! Seeded multi-run campaigns over the benchmark tasks.

use std::fmt;
use std::fs;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use super::record::{average_csv, average_curve, plot_script, RunRecord, RunRow};
use super::stats::best_of_window;
use crate::env::{DoublePole, Environment, FunctionApprox, MountainCar, Multiplexer, Normalized};
use crate::error::{Error, Result};
use crate::evolution::{Checkpoint, EvolutionConfig, EvolutionState, GenerationReport};
use crate::model::{Activation, AdaptationSpeed, Genome};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    MountainCar,
    DoublePole,
    NmDoublePole,
    Multiplexer,
    FunctionApprox,
}

impl Task {
    pub const ALL: [Task; 5] = [
        Task::MountainCar,
        Task::DoublePole,
        Task::NmDoublePole,
        Task::Multiplexer,
        Task::FunctionApprox,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::MountainCar => "mountain_car",
            Task::DoublePole => "double_pole",
            Task::NmDoublePole => "nm_double_pole",
            Task::Multiplexer => "multiplexer",
            Task::FunctionApprox => "function_approx",
        }
    }

    /// Builds a fresh environment. `max_steps` overrides the step cap of the
    /// tasks that have one (mountain car and both double-pole variants).
    pub fn make_env(self, normalize: bool, max_steps: Option<usize>) -> Box<dyn Environment> {
        let raw: Box<dyn Environment> = match self {
            Task::MountainCar => Box::new(match max_steps {
                Some(n) => MountainCar::with_max_steps(n),
                None => MountainCar::new(),
            }),
            Task::DoublePole => Box::new(DoublePole::markov(
                max_steps.unwrap_or(crate::env::DOUBLE_POLE_MAX_STEPS),
            )),
            Task::NmDoublePole => Box::new(DoublePole::non_markov(
                max_steps.unwrap_or(crate::env::DOUBLE_POLE_MAX_STEPS),
            )),
            Task::Multiplexer => Box::new(Multiplexer::new(3)),
            Task::FunctionApprox => Box::new(FunctionApprox::new()),
        };
        if normalize {
            Box::new(Normalized::new(raw))
        } else {
            raw
        }
    }

    /// `(inputs, outputs)` of the task.
    pub fn interface(self) -> (usize, usize) {
        let env = self.make_env(false, Some(1));
        (env.observation_count(), env.action_count())
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown task {s:?}")))
    }
}

/// Removes one option from the mutation draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ablation {
    NoControl,
    /// No identity ("linear") hidden neurons.
    NoIdentity,
    NoNeuromodulation,
    NoRandom,
    NoRealWeights,
    NoSigmoid,
    NoSlow,
    NoThreshold,
}

impl Ablation {
    pub const ALL: [Ablation; 8] = [
        Ablation::NoControl,
        Ablation::NoIdentity,
        Ablation::NoNeuromodulation,
        Ablation::NoRandom,
        Ablation::NoRealWeights,
        Ablation::NoSigmoid,
        Ablation::NoSlow,
        Ablation::NoThreshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ablation::NoControl => "no_control",
            Ablation::NoIdentity => "no_identity",
            Ablation::NoNeuromodulation => "no_neuromodulation",
            Ablation::NoRandom => "no_random",
            Ablation::NoRealWeights => "no_real_weights",
            Ablation::NoSigmoid => "no_sigmoid",
            Ablation::NoSlow => "no_slow",
            Ablation::NoThreshold => "no_threshold",
        }
    }

    pub fn apply(self, cfg: &mut EvolutionConfig) {
        let mut drop_activation = |a: Activation| cfg.hidden_activations.retain(|&x| x != a);
        match self {
            Ablation::NoControl => cfg.control_neuron_probability = 0.0,
            Ablation::NoIdentity => drop_activation(Activation::Identity),
            Ablation::NoNeuromodulation => cfg.neuromodulation_probability = 0.0,
            Ablation::NoRandom => drop_activation(Activation::Random),
            Ablation::NoRealWeights => cfg.real_weights = false,
            Ablation::NoSigmoid => drop_activation(Activation::Sigmoid),
            Ablation::NoSlow => cfg.adaptation_speeds = vec![AdaptationSpeed::One],
            Ablation::NoThreshold => drop_activation(Activation::Threshold),
        }
    }
}

impl fmt::Display for Ablation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ablation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "no_linear" {
            return Ok(Ablation::NoIdentity);
        }
        Ablation::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown ablation {s:?}")))
    }
}

pub const DEFAULT_TRIALS: u64 = 200_000;
pub const ABLATION_TRIALS: u64 = 1_000_000;
pub const DEFAULT_RUNS: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub task: Task,
    pub trials: u64,
    pub runs: usize,
    pub ablations: Vec<Ablation>,
    pub normalize: bool,
    pub master_seed: u64,
    pub out_dir: PathBuf,
    /// Step cap override for tasks that have one.
    pub max_steps: Option<usize>,
    /// Base parameters; the seed field is replaced per run.
    pub evolution: EvolutionConfig,
}

impl ExperimentConfig {
    pub fn new(task: Task, out_dir: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            task,
            trials: DEFAULT_TRIALS,
            runs: DEFAULT_RUNS,
            ablations: Vec::new(),
            normalize: false,
            master_seed: 0,
            out_dir: out_dir.into(),
            max_steps: None,
            evolution: EvolutionConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.normalize && !self.ablations.is_empty() {
            return Err(Error::Config(
                "ablation experiments run without normalization".into(),
            ));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be positive".into()));
        }
        if self.generations() == 0 {
            return Err(Error::Config(format!(
                "a budget of {} trials is less than one generation of {}",
                self.trials, self.evolution.population_size
            )));
        }
        if self.max_steps == Some(0) {
            return Err(Error::Config("max steps must be positive".into()));
        }
        self.evolution_config(0).validate()
    }

    pub fn generations(&self) -> u64 {
        self.trials / self.evolution.population_size as u64
    }

    /// Parameters of run `run`: ablations applied and a seed derived from the
    /// master seed.
    pub fn evolution_config(&self, run: usize) -> EvolutionConfig {
        let mut cfg = self.evolution.clone();
        for a in &self.ablations {
            a.apply(&mut cfg);
        }
        cfg.master_seed = rng::derive_seed(self.master_seed, &[rng::STREAM_RUN, run as u64]);
        cfg
    }

    pub fn initial_state(&self, run: usize) -> Result<EvolutionState> {
        let (inputs, outputs) = self.task.interface();
        EvolutionState::new(self.evolution_config(run), inputs, outputs)
    }

    fn metadata(&self, run: usize) -> Vec<(String, String)> {
        let ablations: Vec<&str> = self.ablations.iter().map(|a| a.name()).collect();
        vec![
            ("task".into(), self.task.name().into()),
            ("run".into(), run.to_string()),
            ("normalize".into(), self.normalize.to_string()),
            (
                "max_steps".into(),
                self.max_steps.map_or("default".into(), |n| n.to_string()),
            ),
            ("ablations".into(), ablations.join(" ")),
        ]
    }
}

/// Result of one evolutionary run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub state: EvolutionState,
    /// Fittest genome seen in any generation.
    pub champion: Genome,
    pub champion_fitness: f64,
    pub champion_accumulated: f64,
}

/// Continues `state` for up to `generations` generations. `on_generation`
/// sees every report and can stop the run early.
pub fn evolve<F>(
    state: &mut EvolutionState,
    task: Task,
    normalize: bool,
    max_steps: Option<usize>,
    generations: u64,
    mut on_generation: F,
) -> Result<(RunRecord, Option<(Genome, f64, f64)>)>
where
    F: FnMut(&GenerationReport) -> ControlFlow<()>,
{
    let make_env = move || task.make_env(normalize, max_steps);
    let mut record = RunRecord::default();
    let mut champion: Option<(Genome, f64, f64)> = None;
    let window = state.cfg.population_size;
    for _ in 0..generations {
        let report = state.step_generation(&make_env)?;
        let generation = report.generation + 1;
        let best = &report.best_genome;
        record.rows.push(RunRow {
            generation,
            trials: generation * window as u64,
            best_accumulated: report.best_accumulated,
            best_of_window: best_of_window(&report.accumulated, window)?[0],
            mean_fitness: report.mean_fitness,
            occupied_cells: report.occupied_cells,
            best_neurons: best.neurons.len(),
            best_connections: best.connections.len(),
        });
        if champion
            .as_ref()
            .is_none_or(|(_, f, _)| report.best_fitness.total_cmp(f).is_gt())
        {
            champion = Some((
                report.best_genome.clone(),
                report.best_fitness,
                report.best_accumulated,
            ));
        }
        if on_generation(&report).is_break() {
            break;
        }
    }
    Ok((record, champion))
}

/// Runs run number `run` of `cfg` from scratch, without writing files.
pub fn run_single<F>(cfg: &ExperimentConfig, run: usize, on_generation: F) -> Result<RunOutcome>
where
    F: FnMut(&GenerationReport) -> ControlFlow<()>,
{
    cfg.validate()?;
    let mut state = cfg.initial_state(run)?;
    let (record, champion) = evolve(
        &mut state,
        cfg.task,
        cfg.normalize,
        cfg.max_steps,
        cfg.generations(),
        on_generation,
    )?;
    let (champion, champion_fitness, champion_accumulated) =
        champion.expect("at least one generation");
    Ok(RunOutcome {
        record,
        state,
        champion,
        champion_fitness,
        champion_accumulated,
    })
}

pub fn run_file_name(run: usize) -> String {
    format!("run_{run:03}.csv")
}

/// Final best-of-window value of every run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub final_values: Vec<f64>,
}

/// Runs every run of `cfg` in parallel and writes `run_XXX.csv`,
/// `run_XXX.ckpt`, `run_XXX_best.genome`, `average.csv`, `plot.gp` and
/// `summary.txt` into the output directory.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out_dir)?;
    let outcomes: Vec<RunOutcome> = (0..cfg.runs)
        .into_par_iter()
        .map(|run| {
            let outcome = run_single(cfg, run, |_| ControlFlow::Continue(()))?;
            write_run(cfg, run, &outcome)?;
            Ok(outcome)
        })
        .collect::<Result<_>>()?;
    let records: Vec<RunRecord> = outcomes.iter().map(|o| o.record.clone()).collect();
    fs::write(cfg.out_dir.join("average.csv"), average_csv(&average_curve(&records)?))?;
    let files: Vec<String> = (0..cfg.runs).map(run_file_name).collect();
    fs::write(
        cfg.out_dir.join("plot.gp"),
        plot_script(&experiment_title(cfg), &files),
    )?;
    let final_values: Vec<f64> = records
        .iter()
        .map(|r| r.last().expect("at least one generation").best_of_window)
        .collect();
    let mut summary = format!("{}\n", experiment_title(cfg));
    for (run, v) in final_values.iter().enumerate() {
        summary.push_str(&format!("{} {}\n", run_file_name(run), crate::format::g9(*v)));
    }
    let mean = final_values.iter().sum::<f64>() / final_values.len() as f64;
    summary.push_str(&format!("mean {}\n", crate::format::g9(mean)));
    fs::write(cfg.out_dir.join("summary.txt"), summary)?;
    Ok(ExperimentSummary { final_values })
}

fn experiment_title(cfg: &ExperimentConfig) -> String {
    let mut title = format!("{} trials={} runs={}", cfg.task, cfg.trials, cfg.runs);
    if cfg.normalize {
        title.push_str(" normalized");
    }
    for a in &cfg.ablations {
        title.push(' ');
        title.push_str(a.name());
    }
    title
}

fn write_run(cfg: &ExperimentConfig, run: usize, outcome: &RunOutcome) -> Result<()> {
    let dir = &cfg.out_dir;
    fs::write(dir.join(run_file_name(run)), outcome.record.to_csv())?;
    let checkpoint = Checkpoint {
        metadata: cfg.metadata(run),
        state: outcome.state.clone(),
    };
    fs::write(dir.join(format!("run_{run:03}.ckpt")), checkpoint.to_text())?;
    fs::write(
        dir.join(format!("run_{run:03}_best.genome")),
        outcome.champion.to_text(),
    )?;
    Ok(())
}

/// Final best-of-window values of every `run_*.csv` in `dir`, in file name order.
pub fn final_values_in(dir: &Path) -> Result<Vec<f64>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("run_") && n.ends_with(".csv"))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Config(format!("no run_*.csv files in {}", dir.display())));
    }
    files
        .iter()
        .map(|path| {
            let record = RunRecord::parse_csv(&fs::read_to_string(path)?)?;
            record
                .last()
                .map(|r| r.best_of_window)
                .ok_or_else(|| Error::Config(format!("{} has no rows", path.display())))
        })
        .collect()
}
