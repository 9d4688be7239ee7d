//! Attack-outcome matrices and heavy rows.

use crate::algebra::Backend;
use crate::id::Message;

use super::{AttackerPair, LabError, Rewinder};

/// Rows are coin seeds, columns are verifier challenges, entries are
/// accept decisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl SummaryMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                cells.push(f(r, c));
            }
        }
        Self { rows, cols, cells }
    }

    /// Fills the matrix by replaying `attacker` at every `(seed, challenge)`.
    pub fn from_attack<B: Backend, A: AttackerPair<B> + ?Sized>(
        rewinder: &Rewinder<'_, B>,
        attacker: &mut A,
        seeds: &[u64],
        challenges: &[Message<B>],
    ) -> Result<Self, LabError> {
        let mut cells = Vec::with_capacity(seeds.len() * challenges.len());
        for &seed in seeds {
            for ch in challenges {
                cells.push(rewinder.run(attacker, seed, ch)?.decision.is_accept());
            }
        }
        Ok(Self { rows: seeds.len(), cols: challenges.len(), cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.cols + col]
    }

    pub fn row_ones(&self, row: usize) -> usize {
        self.cells[row * self.cols..(row + 1) * self.cols].iter().filter(|&&b| b).count()
    }

    pub fn ones(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    /// Fraction of ones.
    pub fn epsilon(&self) -> f64 {
        if self.cells.is_empty() {
            0.0
        } else {
            self.ones() as f64 / self.cells.len() as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeavyRowReport {
    pub epsilon: f64,
    pub heavy_rows: usize,
    /// Share of all ones that lie in heavy rows; 1 for a zero matrix.
    pub heavy_mass: f64,
}

/// A row is heavy when its fraction of ones is at least `ε/2`.
pub fn heavy_row_stats(m: &SummaryMatrix) -> HeavyRowReport {
    let counts: Vec<u64> = (0..m.rows()).map(|r| m.row_ones(r) as u64).collect();
    heavy_mass_from_counts(&counts, m.cols() as u64)
}

/// [`heavy_row_stats`] from per-row counts of ones.
pub fn heavy_mass_from_counts(row_ones: &[u64], cols: u64) -> HeavyRowReport {
    let rows = row_ones.len() as u64;
    let total: u64 = row_ones.iter().sum();
    let cells = rows * cols;
    let epsilon = if cells == 0 { 0.0 } else { total as f64 / cells as f64 };
    // ones/cols ≥ total/(2·rows·cols), cleared of denominators.
    let heavy = |k: u64| 2 * rows * k >= total;
    let heavy_rows = row_ones.iter().filter(|&&k| heavy(k)).count();
    let heavy_ones: u64 = row_ones.iter().filter(|&&k| heavy(k)).sum();
    let heavy_mass = if total == 0 { 1.0 } else { heavy_ones as f64 / total as f64 };
    HeavyRowReport { epsilon, heavy_rows, heavy_mass }
}
