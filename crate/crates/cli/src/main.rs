use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use neuroevo::env::record_trajectory;
use neuroevo::format::g9;
use neuroevo::harness::{
    final_values_in, run_experiment, Ablation, Comparison, ExperimentConfig, Task,
    ABLATION_TRIALS, DEFAULT_RUNS, DEFAULT_TRIALS,
};
use neuroevo::rng;
use neuroevo::Genome;

#[derive(Parser)]
#[command(name = "neuroevo", version, about = "Neuroevolution experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded multi-run campaign and write per-run CSVs.
    Run {
        #[arg(long, value_parser = parse_task)]
        task: Task,
        /// Trial budget per run [default: 200000, or 1000000 with --ablate]
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_RUNS)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Remove one option from the mutation draws; repeatable.
        #[arg(long = "ablate", value_parser = parse_ablation)]
        ablations: Vec<Ablation>,
        /// Scale observations to (-1, 1) and actions from (0, 1).
        #[arg(long, conflicts_with = "ablations")]
        normalize: bool,
        /// Step cap for mountain car and the double-pole tasks.
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare final results of a control and an ablated campaign.
    Stats {
        #[arg(long)]
        control: PathBuf,
        #[arg(long)]
        ablated: PathBuf,
    },
    /// Replay one genome for a single trial and write its trajectory CSV.
    Trace {
        #[arg(long, value_parser = parse_task)]
        task: Task,
        #[arg(long)]
        genome: PathBuf,
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_task(s: &str) -> Result<Task, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Task::ALL.iter().map(|t| t.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_ablation(s: &str) -> Result<Ablation, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Ablation::ALL.iter().map(|a| a.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            task,
            trials,
            runs,
            seed,
            ablations,
            normalize,
            max_steps,
            out,
        } => {
            let mut cfg = ExperimentConfig::new(task, out);
            cfg.trials = trials.unwrap_or(if ablations.is_empty() {
                DEFAULT_TRIALS
            } else {
                ABLATION_TRIALS
            });
            cfg.runs = runs;
            cfg.master_seed = seed;
            cfg.ablations = ablations;
            cfg.normalize = normalize;
            cfg.max_steps = max_steps;
            let summary = run_experiment(&cfg)?;
            let mean = summary.final_values.iter().sum::<f64>() / summary.final_values.len() as f64;
            println!(
                "{} runs of {} finished; mean final best-of-100 {}; output in {}",
                cfg.runs,
                cfg.task,
                g9(mean),
                cfg.out_dir.display()
            );
        }
        Command::Stats { control, ablated } => {
            let control_values = final_values_in(&control)
                .with_context(|| format!("reading {}", control.display()))?;
            let ablated_values = final_values_in(&ablated)
                .with_context(|| format!("reading {}", ablated.display()))?;
            let comparison = Comparison::new(&control_values, &ablated_values)?;
            println!("control        {} ({} runs)", control.display(), control_values.len());
            println!("ablated        {} ({} runs)", ablated.display(), ablated_values.len());
            println!("{comparison}");
        }
        Command::Trace {
            task,
            genome,
            normalize,
            max_steps,
            seed,
            out,
        } => {
            let text = fs::read_to_string(&genome)
                .with_context(|| format!("reading {}", genome.display()))?;
            let genome = Genome::from_text(&text)?;
            let mut env = task.make_env(normalize, max_steps);
            let mut net_rng = rng::stream(seed, &[0]);
            let mut env_rng = rng::stream(seed, &[1]);
            let mut buf = Vec::new();
            let total = record_trajectory(&genome, &mut env, 0.0, &mut net_rng, &mut env_rng, &mut buf)?;
            match out {
                Some(path) => {
                    fs::write(&path, &buf)?;
                    println!("accumulated reward {}", g9(total));
                }
                None => print!("{}", String::from_utf8(buf)?),
            }
        }
    }
    Ok(())
}
