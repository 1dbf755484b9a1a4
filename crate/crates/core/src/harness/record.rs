//! Per-run learning-curve CSV files and their average.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::g9;

pub const RUN_HEADER: &str = "generation,trials,best_accumulated,best_of_window,mean_fitness,occupied_cells,best_neurons,best_connections";

#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    /// 1-based.
    pub generation: u64,
    pub trials: u64,
    /// Accumulated reward of the fittest individual of the generation.
    pub best_accumulated: f64,
    /// Best accumulated reward among the generation's trials.
    pub best_of_window: f64,
    pub mean_fitness: f64,
    pub occupied_cells: usize,
    pub best_neurons: usize,
    pub best_connections: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunRecord {
    pub rows: Vec<RunRow>,
}

impl RunRecord {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(RUN_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.generation,
                r.trials,
                g9(r.best_accumulated),
                g9(r.best_of_window),
                g9(r.mean_fitness),
                r.occupied_cells,
                r.best_neurons,
                r.best_connections
            );
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, header)) if header == RUN_HEADER => {}
            Some((n, _)) => return Err(Error::parse(n, "unexpected header")),
            None => return Err(Error::parse(1, "empty file")),
        }
        let mut rows = Vec::new();
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 8 {
                return Err(Error::parse(n, format!("expected 8 fields, found {}", fields.len())));
            }
            let int = |i: usize| -> Result<u64> {
                fields[i]
                    .parse()
                    .map_err(|_| Error::parse(n, format!("bad integer {:?}", fields[i])))
            };
            let real = |i: usize| -> Result<f64> {
                fields[i]
                    .parse()
                    .map_err(|_| Error::parse(n, format!("bad number {:?}", fields[i])))
            };
            rows.push(RunRow {
                generation: int(0)?,
                trials: int(1)?,
                best_accumulated: real(2)?,
                best_of_window: real(3)?,
                mean_fitness: real(4)?,
                occupied_cells: int(5)? as usize,
                best_neurons: int(6)? as usize,
                best_connections: int(7)? as usize,
            });
        }
        Ok(RunRecord { rows })
    }

    pub fn last(&self) -> Option<&RunRow> {
        self.rows.last()
    }
}

/// Column-wise mean of several runs, one row per generation.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageRow {
    pub generation: u64,
    pub trials: u64,
    /// Means of the remaining run columns, in [`RUN_HEADER`] order.
    pub means: [f64; 6],
}

fn numeric(row: &RunRow) -> [f64; 6] {
    [
        row.best_accumulated,
        row.best_of_window,
        row.mean_fitness,
        row.occupied_cells as f64,
        row.best_neurons as f64,
        row.best_connections as f64,
    ]
}

/// Averages generation by generation, up to the shortest run.
pub fn average_curve(records: &[RunRecord]) -> Result<Vec<AverageRow>> {
    if records.is_empty() {
        return Err(Error::EmptySample);
    }
    let len = records.iter().map(|r| r.rows.len()).min().unwrap_or(0);
    let count = records.len() as f64;
    Ok((0..len)
        .map(|g| {
            let mut sums = [0.0; 6];
            for record in records {
                for (s, v) in sums.iter_mut().zip(numeric(&record.rows[g])) {
                    *s += v;
                }
            }
            AverageRow {
                generation: records[0].rows[g].generation,
                trials: records[0].rows[g].trials,
                means: sums.map(|s| s / count),
            }
        })
        .collect())
}

pub fn average_csv(rows: &[AverageRow]) -> String {
    let mut out = String::from(RUN_HEADER);
    out.push('\n');
    for r in rows {
        let means: Vec<String> = r.means.iter().map(|&v| g9(v)).collect();
        let _ = writeln!(out, "{},{},{}", r.generation, r.trials, means.join(","));
    }
    out
}

/// Gnuplot script drawing the averaged best-of-window curve over the runs.
pub fn plot_script(title: &str, run_files: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set terminal pngcairo size 960,600");
    let _ = writeln!(out, "set output 'average.png'");
    let _ = writeln!(out, "set title '{}'", title.replace('\'', ""));
    let _ = writeln!(out, "set xlabel 'trials'");
    let _ = writeln!(out, "set ylabel 'best accumulated reward of 100 trials'");
    let _ = writeln!(out, "set key bottom right");
    let mut plots: Vec<String> = run_files
        .iter()
        .map(|f| format!("'{f}' using 2:4 with lines lc rgb '#d0d0d0' notitle"))
        .collect();
    plots.push("'average.csv' using 2:4 with lines lw 2 lc rgb '#1f4e9a' title 'average'".into());
    let _ = writeln!(out, "plot {}", plots.join(", \\\n     "));
    out
}
