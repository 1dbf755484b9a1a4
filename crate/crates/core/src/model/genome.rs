//! Direct-encoding genome: a list of neurons and a list of connections.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::format::g9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeuronId(pub u32);

impl fmt::Display for NeuronId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Hidden,
    Input,
    Output,
}

impl Role {
    pub fn is_interface(self) -> bool {
        !matches!(self, Role::Hidden)
    }

    fn as_str(self) -> &'static str {
        match self {
            Role::Hidden => "hidden",
            Role::Input => "input",
            Role::Output => "output",
        }
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hidden" => Ok(Role::Hidden),
            "input" => Ok(Role::Input),
            "output" => Ok(Role::Output),
            other => Err(format!("unknown role `{other}`")),
        }
    }
}

/// Activation function of a neuron. `Control` neurons use the threshold
/// function and emit control signals instead of data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Activation {
    Identity,
    Sigmoid,
    Threshold,
    Random,
    Control,
}

impl Activation {
    /// The data-emitting activation kinds, in spectrum order.
    pub const DATA: [Activation; 4] = [
        Activation::Identity,
        Activation::Sigmoid,
        Activation::Threshold,
        Activation::Random,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Activation::Identity => "identity",
            Activation::Sigmoid => "sigmoid",
            Activation::Threshold => "threshold",
            Activation::Random => "random",
            Activation::Control => "control",
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Activation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "identity" => Ok(Activation::Identity),
            "sigmoid" => Ok(Activation::Sigmoid),
            "threshold" => Ok(Activation::Threshold),
            "random" => Ok(Activation::Random),
            "control" => Ok(Activation::Control),
            other => Err(format!("unknown activation `{other}`")),
        }
    }
}

/// Number of steps a neuron needs to fully follow a change of its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdaptationSpeed {
    One,
    Seven,
    FortyNine,
}

impl AdaptationSpeed {
    pub const ALL: [AdaptationSpeed; 3] = [
        AdaptationSpeed::One,
        AdaptationSpeed::Seven,
        AdaptationSpeed::FortyNine,
    ];

    pub fn steps(self) -> u32 {
        match self {
            AdaptationSpeed::One => 1,
            AdaptationSpeed::Seven => 7,
            AdaptationSpeed::FortyNine => 49,
        }
    }

    pub fn from_steps(steps: u32) -> Option<Self> {
        match steps {
            1 => Some(AdaptationSpeed::One),
            7 => Some(AdaptationSpeed::Seven),
            49 => Some(AdaptationSpeed::FortyNine),
            _ => None,
        }
    }

    pub fn is_slow(self) -> bool {
        self != AdaptationSpeed::One
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeuronGene {
    pub id: NeuronId,
    pub role: Role,
    pub activation: Activation,
    pub speed: AdaptationSpeed,
    /// Observation index for inputs, action index for outputs, 0 otherwise.
    pub interface_index: usize,
}

impl NeuronGene {
    pub fn hidden(id: NeuronId, activation: Activation, speed: AdaptationSpeed) -> Self {
        NeuronGene {
            id,
            role: Role::Hidden,
            activation,
            speed,
            interface_index: 0,
        }
    }

    pub fn is_control(&self) -> bool {
        self.activation == Activation::Control
    }
}

/// A directed weighted edge. When `modulator` is set the effective weight is
/// the modulating neuron's current output and `weight` is dormant.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionGene {
    pub from: NeuronId,
    pub to: NeuronId,
    pub weight: f32,
    pub modulator: Option<NeuronId>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Genome {
    pub neurons: Vec<NeuronGene>,
    pub connections: Vec<ConnectionGene>,
    pub next_id: u32,
}

impl Genome {
    /// The bare interface genome: one identity input per observation and one
    /// identity output per action, no hidden neurons, no connections.
    pub fn with_interface(inputs: usize, outputs: usize) -> Self {
        let mut neurons = Vec::with_capacity(inputs + outputs);
        for (role, count) in [(Role::Input, inputs), (Role::Output, outputs)] {
            for interface_index in 0..count {
                neurons.push(NeuronGene {
                    id: NeuronId(neurons.len() as u32),
                    role,
                    activation: Activation::Identity,
                    speed: AdaptationSpeed::One,
                    interface_index,
                });
            }
        }
        Genome {
            next_id: neurons.len() as u32,
            neurons,
            connections: Vec::new(),
        }
    }

    pub fn neuron(&self, id: NeuronId) -> Option<&NeuronGene> {
        self.neurons.iter().find(|n| n.id == id)
    }

    pub fn count_role(&self, role: Role) -> usize {
        self.neurons.iter().filter(|n| n.role == role).count()
    }

    pub fn hidden_count(&self) -> usize {
        self.count_role(Role::Hidden)
    }

    pub fn fresh_id(&mut self) -> NeuronId {
        let id = NeuronId(self.next_id);
        self.next_id += 1;
        id
    }

    /// Checks every structural invariant of the encoding.
    pub fn validate(&self) -> Result<()> {
        let mut ids = HashSet::with_capacity(self.neurons.len());
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        for n in &self.neurons {
            if !ids.insert(n.id) {
                return Err(Error::Integrity(format!("duplicate neuron id {}", n.id)));
            }
            if n.id.0 >= self.next_id {
                return Err(Error::Integrity(format!(
                    "neuron id {} not below next_id {}",
                    n.id, self.next_id
                )));
            }
            match n.role {
                Role::Input => inputs.push(n.interface_index),
                Role::Output => outputs.push(n.interface_index),
                Role::Hidden => {}
            }
            if n.role.is_interface() && n.activation != Activation::Identity {
                return Err(Error::Integrity(format!(
                    "interface neuron {} must use identity activation",
                    n.id
                )));
            }
        }
        for (what, mut slots) in [("input", inputs), ("output", outputs)] {
            slots.sort_unstable();
            if slots.iter().enumerate().any(|(i, &s)| i != s) {
                return Err(Error::Integrity(format!(
                    "{what} interface indices are not 0..{}",
                    slots.len()
                )));
            }
        }
        for (i, c) in self.connections.iter().enumerate() {
            for end in [Some(c.from), Some(c.to), c.modulator].into_iter().flatten() {
                if !ids.contains(&end) {
                    return Err(Error::Integrity(format!(
                        "connection {i} references missing neuron {end}"
                    )));
                }
            }
            if !(-1.0..=1.0).contains(&c.weight) {
                return Err(Error::Integrity(format!(
                    "connection {i} weight {} outside [-1, 1]",
                    c.weight
                )));
            }
        }
        Ok(())
    }

    /// Serializes to the line-oriented text format:
    ///
    /// ```text
    /// N <id> <role> <activation> <speed> <interface>
    /// C <from> <to> <weight> <modulator|-1>
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in &self.neurons {
            out.push_str(&format!(
                "N {} {} {} {} {}\n",
                n.id,
                n.role.as_str(),
                n.activation,
                n.speed.steps(),
                n.interface_index
            ));
        }
        for c in &self.connections {
            let modulator = c.modulator.map_or(-1, |m| i64::from(m.0));
            out.push_str(&format!(
                "C {} {} {} {}\n",
                c.from,
                c.to,
                g9(f64::from(c.weight)),
                modulator
            ));
        }
        out
    }

    /// Parses the text format. Blank lines and `#` comments are ignored;
    /// `next_id` is set one past the largest id. The result is validated.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    pub(crate) fn parse_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Self> {
        let mut genome = Genome::default();
        for (line_no, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "N" => genome.neurons.push(parse_neuron(line_no, &fields)?),
                "C" => genome.connections.push(parse_connection(line_no, &fields)?),
                other => return Err(Error::parse(line_no, format!("unknown record `{other}`"))),
            }
        }
        genome.next_id = genome
            .neurons
            .iter()
            .map(|n| n.id.0.saturating_add(1))
            .max()
            .unwrap_or(0);
        genome.validate()?;
        Ok(genome)
    }
}

fn field<T: FromStr>(line: usize, fields: &[&str], at: usize, what: &str) -> Result<T> {
    fields
        .get(at)
        .ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{}`", fields[at])))
}

fn parse_neuron(line: usize, fields: &[&str]) -> Result<NeuronGene> {
    if fields.len() != 6 {
        return Err(Error::parse(line, "neuron record needs 6 fields"));
    }
    let speed: u32 = field(line, fields, 4, "adaptation speed")?;
    Ok(NeuronGene {
        id: NeuronId(field(line, fields, 1, "neuron id")?),
        role: fields[2].parse().map_err(|e: String| Error::parse(line, e))?,
        activation: fields[3].parse().map_err(|e: String| Error::parse(line, e))?,
        speed: AdaptationSpeed::from_steps(speed)
            .ok_or_else(|| Error::parse(line, format!("adaptation speed {speed} not in {{1,7,49}}")))?,
        interface_index: field(line, fields, 5, "interface index")?,
    })
}

fn parse_connection(line: usize, fields: &[&str]) -> Result<ConnectionGene> {
    if fields.len() != 5 {
        return Err(Error::parse(line, "connection record needs 5 fields"));
    }
    let weight: f32 = field(line, fields, 3, "weight")?;
    let modulator: i64 = field(line, fields, 4, "modulator")?;
    let modulator = match modulator {
        -1 => None,
        m => Some(NeuronId(
            u32::try_from(m).map_err(|_| Error::parse(line, format!("invalid modulator {m}")))?,
        )),
    };
    Ok(ConnectionGene {
        from: NeuronId(field(line, fields, 1, "source id")?),
        to: NeuronId(field(line, fields, 2, "target id")?),
        weight,
        modulator,
    })
}
