//! Learning-curve reduction and rank statistics for comparing campaigns.

use std::fmt;

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Products `n * m` up to this size get an exact p-value.
pub const EXACT_LIMIT: usize = 400;
pub const SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    /// `a` tends to be smaller than `b`.
    Less,
    /// `a` tends to be larger than `b`.
    Greater,
    TwoSided,
}

/// Maximum of each consecutive block of `window` values; a trailing partial
/// block forms its own block.
pub fn best_of_window(series: &[f64], window: usize) -> Result<Vec<f64>> {
    if series.is_empty() {
        return Err(Error::EmptySample);
    }
    if window == 0 {
        return Err(Error::Config("window must be positive".into()));
    }
    Ok(series
        .chunks(window)
        .map(|block| block.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .collect())
}

/// Doubled midranks of the pooled sample (integers, so ties stay exact).
fn doubled_ranks(pooled: &[f64]) -> (Vec<u64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0u64; pooled.len()];
    let mut tie_sizes = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && pooled[order[end + 1]] == pooled[order[start]] {
            end += 1;
        }
        // 1-based ranks start+1 ..= end+1; doubled midrank is their sum
        let doubled = (start + 1 + end + 1) as u64;
        for &k in &order[start..=end] {
            ranks[k] = doubled;
        }
        tie_sizes.push(end - start + 1);
        start = end + 1;
    }
    (ranks, tie_sizes)
}

/// Lower and upper tail probabilities of the doubled rank sum of `n`
/// elements drawn from `ranks`, evaluated at `observed`.
fn exact_tails(ranks: &[u64], n: usize, observed: u64) -> (f64, f64) {
    let max_sum: usize = ranks.iter().map(|&r| r as usize).sum();
    // ways[k][s]: number of k-subsets with doubled rank sum s
    let mut ways = vec![vec![0u128; max_sum + 1]; n + 1];
    ways[0][0] = 1;
    for &r in ranks {
        let r = r as usize;
        for k in (1..=n).rev() {
            let (lower, upper) = ways.split_at_mut(k);
            let prev = &lower[k - 1];
            let cur = &mut upper[0];
            for s in (r..=max_sum).rev() {
                cur[s] += prev[s - r];
            }
        }
    }
    let counts = &ways[n];
    let total: u128 = counts.iter().sum();
    let observed = observed as usize;
    let below: u128 = counts[..=observed.min(max_sum)].iter().sum();
    let above: u128 = counts[observed.min(max_sum + 1)..].iter().sum();
    (below as f64 / total as f64, above as f64 / total as f64)
}

/// Mann-Whitney U test. Returns `(U, p)` where `U` counts the pairs with the
/// `a` value larger, ties counting one half.
///
/// The p-value is exact for `a.len() * b.len() <= 400`, otherwise from the
/// normal approximation with tie and continuity corrections.
pub fn mann_whitney_u(a: &[f64], b: &[f64], alternative: Alternative) -> Result<(f64, f64)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::Config("samples contain NaN".into()));
    }
    let (n, m) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = doubled_ranks(&pooled);
    let w2: u64 = ranks[..n].iter().sum();
    let u = w2 as f64 / 2.0 - (n * (n + 1)) as f64 / 2.0;

    let (less, greater) = if n * m <= EXACT_LIMIT {
        exact_tails(&ranks, n, w2)
    } else {
        let big_n = (n + m) as f64;
        let tie_term: f64 = ties
            .iter()
            .map(|&t| {
                let t = t as f64;
                t * t * t - t
            })
            .sum::<f64>()
            / (big_n * (big_n - 1.0));
        let variance = (n * m) as f64 / 12.0 * ((big_n + 1.0) - tie_term);
        let mean = (n * m) as f64 / 2.0;
        if variance <= 0.0 {
            (1.0, 1.0)
        } else {
            let normal = Normal::new(0.0, 1.0).expect("standard normal");
            let sd = variance.sqrt();
            (
                normal.cdf((u - mean + 0.5) / sd).min(1.0),
                normal.sf((u - mean - 0.5) / sd).min(1.0),
            )
        }
    };
    let p = match alternative {
        Alternative::Less => less,
        Alternative::Greater => greater,
        Alternative::TwoSided => (2.0 * less.min(greater)).min(1.0),
    };
    Ok((u, p))
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Ablated-versus-control comparison of final results.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub control_mean: f64,
    pub ablated_mean: f64,
    /// Positive when the ablated variant scores higher.
    pub percent_change: f64,
    /// One-sided p for "ablated is worse".
    pub p_worse: f64,
    /// One-sided p for "ablated is better".
    pub p_better: f64,
}

impl Comparison {
    pub fn new(control: &[f64], ablated: &[f64]) -> Result<Self> {
        let (_, p_worse) = mann_whitney_u(ablated, control, Alternative::Less)?;
        let (_, p_better) = mann_whitney_u(ablated, control, Alternative::Greater)?;
        let control_mean = mean(control);
        let ablated_mean = mean(ablated);
        let diff = ablated_mean - control_mean;
        let percent_change = if diff == 0.0 {
            0.0
        } else {
            100.0 * diff / control_mean.abs()
        };
        Ok(Comparison {
            control_mean,
            ablated_mean,
            percent_change,
            p_worse,
            p_better,
        })
    }

    /// `W` for significantly worse, `B` for significantly better.
    pub fn tag(&self) -> &'static str {
        if self.p_worse < SIGNIFICANCE {
            "W"
        } else if self.p_better < SIGNIFICANCE {
            "B"
        } else {
            "-"
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "control mean   {}", crate::format::g9(self.control_mean))?;
        writeln!(f, "ablated mean   {}", crate::format::g9(self.ablated_mean))?;
        writeln!(f, "change         {:+.2}% {}", self.percent_change, self.tag())?;
        writeln!(f, "p (worse)      {}", crate::format::g9(self.p_worse))?;
        write!(f, "p (better)     {}", crate::format::g9(self.p_better))
    }
}
