//! Plain-text checkpoints of an [`EvolutionState`].
//!
//! ```text
//! [config]
//! population_size 100
//! ...
//! [state]
//! inputs 2
//! outputs 1
//! generation 12
//! next_uid 1034
//! [run]
//! task mountain_car
//! [individual 17 25]
//! N 0 input identity 1 0
//! C 0 2 0.5 -1
//! [map]
//! 0 0 2 1 0 1 1
//! ```
//!
//! `[individual <uid> <next_id>]` headers precede each genome. The `[run]`
//! section holds free-form `key value` metadata for the caller.

use std::fmt::Write as _;

use super::{EvolutionConfig, EvolutionState, Individual};
use crate::error::{Error, Result};
use crate::model::Genome;
use crate::novelty_map::NoveltyMap;

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub metadata: Vec<(String, String)>,
    pub state: EvolutionState,
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let s = &self.state;
        let mut out = String::from("[config]\n");
        out.push_str(&s.cfg.to_text());
        out.push_str("[state]\n");
        let _ = writeln!(out, "inputs {}", s.inputs);
        let _ = writeln!(out, "outputs {}", s.outputs);
        let _ = writeln!(out, "generation {}", s.generation);
        let _ = writeln!(out, "next_uid {}", s.next_uid);
        out.push_str("[run]\n");
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "{k} {v}");
        }
        for ind in &s.population {
            let _ = writeln!(out, "[individual {} {}]", ind.uid, ind.genome.next_id);
            out.push_str(&ind.genome.to_text());
        }
        out.push_str("[map]\n");
        out.push_str(&s.map.dump());
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: Vec<(usize, &str, Vec<(usize, &str)>)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if let Some(header) = trimmed.strip_prefix('[') {
                let header = header
                    .strip_suffix(']')
                    .ok_or_else(|| Error::parse(line_no, "unterminated section header"))?;
                sections.push((line_no, header, Vec::new()));
            } else if let Some((_, _, body)) = sections.last_mut() {
                body.push((line_no, line));
            } else if !trimmed.is_empty() {
                return Err(Error::parse(line_no, "content before the first section"));
            }
        }

        let mut cfg = None;
        let mut header_fields: [Option<u64>; 4] = [None; 4];
        let mut metadata = Vec::new();
        let mut population = Vec::new();
        let mut map_text = None;
        for (line_no, header, body) in sections {
            let mut words = header.split_whitespace();
            match words.next() {
                Some("config") if cfg.is_none() => {
                    cfg = Some(EvolutionConfig::parse_lines(body.into_iter())?);
                }
                Some("state") => {
                    for (n, line) in body {
                        let Some((key, value)) = line.trim().split_once(' ') else {
                            if line.trim().is_empty() {
                                continue;
                            }
                            return Err(Error::parse(n, "expected `key value`"));
                        };
                        let slot = ["inputs", "outputs", "generation", "next_uid"]
                            .iter()
                            .position(|k| *k == key)
                            .ok_or_else(|| Error::parse(n, format!("unknown key `{key}`")))?;
                        header_fields[slot] = Some(
                            value
                                .trim()
                                .parse()
                                .map_err(|_| Error::parse(n, format!("invalid value `{value}`")))?,
                        );
                    }
                }
                Some("run") => {
                    for (_, line) in body {
                        let line = line.trim();
                        if line.is_empty() {
                            continue;
                        }
                        let (k, v) = line.split_once(' ').unwrap_or((line, ""));
                        metadata.push((k.to_string(), v.trim().to_string()));
                    }
                }
                Some("individual") => {
                    let nums: Vec<u64> = words
                        .map(|w| w.parse().map_err(|_| Error::parse(line_no, "invalid individual header")))
                        .collect::<Result<_>>()?;
                    let [uid, next_id] = nums[..] else {
                        return Err(Error::parse(line_no, "individual header needs uid and next_id"));
                    };
                    let mut genome = Genome::parse_lines(body.into_iter())?;
                    let next_id = u32::try_from(next_id)
                        .map_err(|_| Error::parse(line_no, "next_id out of range"))?;
                    if next_id < genome.next_id {
                        return Err(Error::parse(line_no, "next_id below an existing neuron id"));
                    }
                    genome.next_id = next_id;
                    population.push(Individual::new(uid, genome));
                }
                Some("map") if map_text.is_none() => {
                    let text: String = body.iter().map(|(_, l)| format!("{l}\n")).collect();
                    map_text = Some(text);
                }
                _ => return Err(Error::parse(line_no, format!("unexpected section `{header}`"))),
            }
        }

        let cfg = cfg.ok_or_else(|| Error::parse(0, "missing [config] section"))?;
        let [Some(inputs), Some(outputs), Some(generation), Some(next_uid)] = header_fields else {
            return Err(Error::parse(0, "incomplete [state] section"));
        };
        let map = NoveltyMap::parse_dump(
            cfg.max_novelty_cells,
            &map_text.ok_or_else(|| Error::parse(0, "missing [map] section"))?,
        )?;
        let (inputs, outputs) = (inputs as usize, outputs as usize);
        for ind in &population {
            let g = &ind.genome;
            if g.count_role(crate::model::Role::Input) != inputs
                || g.count_role(crate::model::Role::Output) != outputs
            {
                return Err(Error::Integrity(format!(
                    "individual {} does not match the {inputs}/{outputs} interface",
                    ind.uid
                )));
            }
        }
        if population.len() != cfg.population_size {
            return Err(Error::Integrity(format!(
                "{} individuals for population size {}",
                population.len(),
                cfg.population_size
            )));
        }
        Ok(Checkpoint {
            metadata,
            state: EvolutionState {
                cfg,
                inputs,
                outputs,
                generation,
                next_uid,
                population,
                map,
            },
        })
    }
}
