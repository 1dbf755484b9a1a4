//! Chromosome spectra and the uniqueness novelty metric.

use std::fmt;

use crate::model::{Activation, Genome, Role};

pub const SPECTRUM_LEN: usize = 6;

/// Neuron-type histogram of a genome over its hidden neurons:
/// `[identity, sigmoid, threshold, random, control, slow]`.
///
/// The `slow` bin counts neurons with adaptation speed above one regardless
/// of type, so one neuron can land in two bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Spectrum(pub [u32; SPECTRUM_LEN]);

impl Spectrum {
    pub fn of(genome: &Genome) -> Self {
        compute_spectrum(genome)
    }

    pub fn distance(&self, other: &Spectrum) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let d = f64::from(a) - f64::from(b);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn compute_spectrum(genome: &Genome) -> Spectrum {
    let mut counts = [0u32; SPECTRUM_LEN];
    for n in genome.neurons.iter().filter(|n| n.role == Role::Hidden) {
        let bin = match n.activation {
            Activation::Identity => 0,
            Activation::Sigmoid => 1,
            Activation::Threshold => 2,
            Activation::Random => 3,
            Activation::Control => 4,
        };
        counts[bin] += 1;
        if n.speed.is_slow() {
            counts[5] += 1;
        }
    }
    Spectrum(counts)
}

/// Minimum Euclidean distance from `points[index]` to every other element.
/// Returns `+inf` when there is no other element.
pub fn uniqueness<T, F>(points: &[T], index: usize, dist: F) -> f64
where
    F: Fn(&T, &T) -> f64,
{
    points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != index)
        .map(|(_, p)| dist(&points[index], p))
        .fold(f64::INFINITY, f64::min)
}

/// [`uniqueness`] over spectra.
pub fn spectrum_uniqueness(set: &[Spectrum], index: usize) -> f64 {
    uniqueness(set, index, Spectrum::distance)
}
