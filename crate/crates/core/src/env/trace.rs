use std::io::Write;

use rand::RngCore;

use super::Environment;
use crate::error::{Error, Result};
use crate::format::g9;
use crate::model::{Genome, Phenotype};

/// Runs one trial and writes one CSV row per step:
/// `step,obs0..,action0..,reward`. Returns the accumulated reward.
pub fn record_trajectory<E, W>(
    genome: &Genome,
    env: &mut E,
    threshold: f64,
    network_rng: &mut dyn RngCore,
    env_rng: &mut dyn RngCore,
    out: &mut W,
) -> Result<f64>
where
    E: Environment + ?Sized,
    W: Write,
{
    let mut net = Phenotype::new(genome, threshold)?;
    if net.input_count() != env.observation_count() || net.output_count() != env.action_count() {
        return Err(Error::Integrity(
            "genome interface does not match the environment".into(),
        ));
    }
    let mut header = vec!["step".to_string()];
    header.extend((0..env.observation_count()).map(|i| format!("obs{i}")));
    header.extend((0..env.action_count()).map(|i| format!("action{i}")));
    header.push("reward".into());
    writeln!(out, "{}", header.join(","))?;

    let mut observation = vec![0.0; env.observation_count()];
    let mut action = vec![0.0; env.action_count()];
    env.reset(env_rng);
    let mut total = 0.0;
    for step in 0.. {
        env.observe(&mut observation);
        net.step_into(&observation, &mut action, network_rng)?;
        let t = env.step(&action)?;
        total += t.reward;
        let mut row = vec![step.to_string()];
        row.extend(observation.iter().chain(&action).map(|&v| g9(v)));
        row.push(g9(t.reward));
        writeln!(out, "{}", row.join(","))?;
        if t.done {
            break;
        }
    }
    Ok(total)
}
