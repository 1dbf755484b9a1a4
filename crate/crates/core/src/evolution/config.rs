use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Activation, AdaptationSpeed};

/// Parameters of the evolutionary loop. `Default` gives the published setting.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub population_size: usize,
    pub max_novelty_cells: usize,
    pub initial_mutations: usize,
    pub step_mutations: usize,
    /// Add neuron, delete neuron, add connection, delete connection.
    pub mutation_probabilities: [f64; 4],
    pub neuromodulation_probability: f64,
    pub control_neuron_probability: f64,
    pub excitation_threshold: f64,
    /// Chance that each connection of a child has its weight perturbed.
    pub perturbation_probability: f64,
    /// Data activations new hidden neurons draw from.
    pub hidden_activations: Vec<Activation>,
    pub adaptation_speeds: Vec<AdaptationSpeed>,
    /// When false weights are drawn from {-1, 1} and never perturbed.
    pub real_weights: bool,
    pub master_seed: u64,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            population_size: 100,
            max_novelty_cells: 20,
            initial_mutations: 200,
            step_mutations: 5,
            mutation_probabilities: [0.01, 0.01, 0.49, 0.49],
            neuromodulation_probability: 0.1,
            control_neuron_probability: 0.2,
            excitation_threshold: 0.0,
            perturbation_probability: 0.5,
            hidden_activations: Activation::DATA.to_vec(),
            adaptation_speeds: AdaptationSpeed::ALL.to_vec(),
            real_weights: true,
            master_seed: 0,
        }
    }
}

impl EvolutionConfig {
    pub fn with_seed(master_seed: u64) -> Self {
        EvolutionConfig {
            master_seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let probability = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} = {p} is not a probability")))
            }
        };
        for p in self.mutation_probabilities {
            probability("mutation probability", p)?;
        }
        let total: f64 = self.mutation_probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "mutation probabilities sum to {total}, expected 1"
            )));
        }
        probability("neuromodulation probability", self.neuromodulation_probability)?;
        probability("control neuron probability", self.control_neuron_probability)?;
        probability("perturbation probability", self.perturbation_probability)?;
        if self.max_novelty_cells == 0 || self.population_size <= self.max_novelty_cells {
            return Err(Error::Config(format!(
                "population size {} must exceed novelty map size {} > 0",
                self.population_size, self.max_novelty_cells
            )));
        }
        if self.hidden_activations.is_empty() && self.control_neuron_probability < 1.0 {
            return Err(Error::Config("no activation left for hidden neurons".into()));
        }
        if self.hidden_activations.contains(&Activation::Control) {
            return Err(Error::Config(
                "control neurons are drawn through control_neuron_probability".into(),
            ));
        }
        if self.adaptation_speeds.is_empty() {
            return Err(Error::Config("no adaptation speed allowed".into()));
        }
        if !self.excitation_threshold.is_finite() {
            return Err(Error::Config("excitation threshold must be finite".into()));
        }
        Ok(())
    }

    /// `key value...` lines, one per field.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = self.mutation_probabilities;
        let _ = writeln!(out, "population_size {}", self.population_size);
        let _ = writeln!(out, "max_novelty_cells {}", self.max_novelty_cells);
        let _ = writeln!(out, "initial_mutations {}", self.initial_mutations);
        let _ = writeln!(out, "step_mutations {}", self.step_mutations);
        let _ = writeln!(out, "mutation_probabilities {} {} {} {}", p[0], p[1], p[2], p[3]);
        let _ = writeln!(out, "neuromodulation_probability {}", self.neuromodulation_probability);
        let _ = writeln!(out, "control_neuron_probability {}", self.control_neuron_probability);
        let _ = writeln!(out, "excitation_threshold {}", self.excitation_threshold);
        let _ = writeln!(out, "perturbation_probability {}", self.perturbation_probability);
        let acts: Vec<&str> = self.hidden_activations.iter().map(|a| a.as_str()).collect();
        let _ = writeln!(out, "hidden_activations {}", acts.join(" "));
        let speeds: Vec<String> = self
            .adaptation_speeds
            .iter()
            .map(|s| s.steps().to_string())
            .collect();
        let _ = writeln!(out, "adaptation_speeds {}", speeds.join(" "));
        let _ = writeln!(out, "real_weights {}", self.real_weights);
        let _ = writeln!(out, "master_seed {}", self.master_seed);
        out
    }

    /// Parses [`EvolutionConfig::to_text`] output. Every field is required.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    pub(crate) fn parse_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Self> {
        let mut cfg = EvolutionConfig::default();
        let mut seen = Vec::new();
        for (line_no, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap_or_default();
            let values: Vec<&str> = parts.collect();
            let one = |values: &[&str]| -> Result<String> {
                match values {
                    [v] => Ok((*v).to_string()),
                    _ => Err(Error::parse(line_no, format!("`{key}` takes one value"))),
                }
            };
            let num = |s: String| -> Result<f64> {
                s.parse().map_err(|_| Error::parse(line_no, format!("invalid number `{s}`")))
            };
            let int = |s: String| -> Result<usize> {
                s.parse().map_err(|_| Error::parse(line_no, format!("invalid integer `{s}`")))
            };
            match key {
                "population_size" => cfg.population_size = int(one(&values)?)?,
                "max_novelty_cells" => cfg.max_novelty_cells = int(one(&values)?)?,
                "initial_mutations" => cfg.initial_mutations = int(one(&values)?)?,
                "step_mutations" => cfg.step_mutations = int(one(&values)?)?,
                "mutation_probabilities" => {
                    if values.len() != 4 {
                        return Err(Error::parse(line_no, "need four mutation probabilities"));
                    }
                    for (slot, v) in cfg.mutation_probabilities.iter_mut().zip(&values) {
                        *slot = num((*v).to_string())?;
                    }
                }
                "neuromodulation_probability" => {
                    cfg.neuromodulation_probability = num(one(&values)?)?
                }
                "control_neuron_probability" => {
                    cfg.control_neuron_probability = num(one(&values)?)?
                }
                "excitation_threshold" => cfg.excitation_threshold = num(one(&values)?)?,
                "perturbation_probability" => cfg.perturbation_probability = num(one(&values)?)?,
                "hidden_activations" => {
                    cfg.hidden_activations = values
                        .iter()
                        .map(|v| v.parse().map_err(|e: String| Error::parse(line_no, e)))
                        .collect::<Result<_>>()?
                }
                "adaptation_speeds" => {
                    cfg.adaptation_speeds = values
                        .iter()
                        .map(|v| {
                            v.parse()
                                .ok()
                                .and_then(AdaptationSpeed::from_steps)
                                .ok_or_else(|| Error::parse(line_no, format!("invalid speed `{v}`")))
                        })
                        .collect::<Result<_>>()?
                }
                "real_weights" => {
                    cfg.real_weights = one(&values)?
                        .parse()
                        .map_err(|_| Error::parse(line_no, "real_weights must be true or false"))?
                }
                "master_seed" => {
                    cfg.master_seed = one(&values)?
                        .parse()
                        .map_err(|_| Error::parse(line_no, "invalid seed"))?
                }
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
            if seen.contains(&key) {
                return Err(Error::parse(line_no, format!("duplicate key `{key}`")));
            }
            seen.push(key);
        }
        if seen.len() != 13 {
            return Err(Error::Config(format!(
                "config lists {} of 13 required keys",
                seen.len()
            )));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
