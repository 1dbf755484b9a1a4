//! A bounded table of the most novel inputs seen so far.
//!
//! Each presented input is routed to the nearest stored cell. While the table
//! has room every new distinct input gets its own cell; once full, an input
//! evicts the least unique cell only if the input itself is more unique
//! (relative to the stored cells) than that cell is. Used with spectra the
//! cells act as species.

use crate::error::{Error, Result};
use crate::spectrum::{uniqueness, Spectrum, SPECTRUM_LEN};

/// Points the map can store.
pub trait MapPoint: Clone + PartialEq {
    fn distance(&self, other: &Self) -> f64;
}

impl MapPoint for Spectrum {
    fn distance(&self, other: &Self) -> f64 {
        Spectrum::distance(self, other)
    }
}

impl MapPoint for Vec<f64> {
    fn distance(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoveltyMap<P = Spectrum> {
    capacity: usize,
    cells: Vec<P>,
}

impl<P: MapPoint> NoveltyMap<P> {
    pub fn new(capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::Config("novelty map capacity must be positive".into()));
        }
        Ok(NoveltyMap {
            capacity,
            cells: Vec::with_capacity(capacity),
        })
    }

    /// Restores a map from previously stored cells.
    pub fn from_cells(capacity: usize, cells: Vec<P>) -> Result<Self> {
        if capacity == 0 || cells.len() > capacity {
            return Err(Error::Config(format!(
                "{} cells do not fit a map of capacity {capacity}",
                cells.len()
            )));
        }
        Ok(NoveltyMap { capacity, cells })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[P] {
        &self.cells
    }

    /// Uniqueness of stored cell `index` within the stored set.
    pub fn cell_uniqueness(&self, index: usize) -> f64 {
        uniqueness(&self.cells, index, P::distance)
    }

    /// Index of the stored cell nearest to `input`; ties go to the lowest index.
    pub fn nearest(&self, input: &P) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, cell) in self.cells.iter().enumerate() {
            let d = input.distance(cell);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Presents `input`, updates the table and returns the winning cell.
    pub fn present(&mut self, input: &P) -> usize {
        if self.cells.len() < self.capacity {
            if !self.cells.contains(input) {
                self.cells.push(input.clone());
            }
        } else {
            let mut least: Option<(usize, f64)> = None;
            for i in 0..self.cells.len() {
                let u = self.cell_uniqueness(i);
                if least.is_none_or(|(_, lu)| u < lu) {
                    least = Some((i, u));
                }
            }
            let novelty = self
                .cells
                .iter()
                .map(|c| input.distance(c))
                .fold(f64::INFINITY, f64::min);
            if let Some((evict, least_u)) = least {
                if novelty > least_u {
                    self.cells[evict] = input.clone();
                }
            }
        }
        self.nearest(input).expect("map holds at least one cell")
    }
}

impl NoveltyMap<Spectrum> {
    /// One line per cell: `cell_id` followed by the six spectrum counts.
    pub fn dump(&self) -> String {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{i} {s}\n"))
            .collect()
    }

    pub fn parse_dump(capacity: usize, text: &str) -> Result<Self> {
        let mut cells = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != SPECTRUM_LEN + 1 {
                return Err(Error::parse(line_no, "map cell needs 7 fields"));
            }
            let id: usize = fields[0]
                .parse()
                .map_err(|_| Error::parse(line_no, "invalid cell id"))?;
            if id != cells.len() {
                return Err(Error::parse(line_no, format!("expected cell {}", cells.len())));
            }
            let mut counts = [0u32; SPECTRUM_LEN];
            for (slot, text) in counts.iter_mut().zip(&fields[1..]) {
                *slot = text
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid count `{text}`")))?;
            }
            cells.push(Spectrum(counts));
        }
        Self::from_cells(capacity, cells)
    }
}
