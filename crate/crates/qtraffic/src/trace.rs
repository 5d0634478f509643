//! Row-by-column occupancy traces.
//!
//! A [`TraceGrid`] records, for every qubit row and every timeslice column,
//! whether the qubit computes, communicates, or idles. Virtual traces use
//! rows for virtual qubits and never contain [`Cell::Communicate`]; physical
//! traces use one row per physical qubit of the device.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Compute,
    Communicate,
    Idle,
}

impl Cell {
    fn code(self) -> u8 {
        match self {
            Cell::Compute => 0,
            Cell::Communicate => 1,
            Cell::Idle => 2,
        }
    }

    fn from_code(code: u8) -> Option<Cell> {
        match code {
            0 => Some(Cell::Compute),
            1 => Some(Cell::Communicate),
            2 => Some(Cell::Idle),
            _ => None,
        }
    }
}

/// Dense rows × columns grid of [`Cell`]s.
///
/// Serializes as run-length encoded `[cell_code, run]` pairs over the
/// row-major cell stream, which keeps trace files small for long idle or
/// compute stretches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceGrid {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl TraceGrid {
    pub fn new(rows: usize, cols: usize) -> TraceGrid {
        TraceGrid {
            rows,
            cols,
            cells: vec![Cell::Idle; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, cell: Cell) {
        self.cells[row * self.cols + col] = cell;
    }

    /// Iterate over one row.
    pub fn row(&self, row: usize) -> &[Cell] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    /// True if any cell in `col` matches `cell`.
    pub fn column_contains(&self, col: usize, cell: Cell) -> bool {
        (0..self.rows).any(|r| self.get(r, col) == cell)
    }

    fn to_rle(&self) -> Vec<(u8, u64)> {
        let mut runs: Vec<(u8, u64)> = Vec::new();
        for cell in &self.cells {
            let code = cell.code();
            match runs.last_mut() {
                Some((c, n)) if *c == code => *n += 1,
                _ => runs.push((code, 1)),
            }
        }
        runs
    }

    fn from_rle(rows: usize, cols: usize, runs: &[(u8, u64)]) -> Option<TraceGrid> {
        let mut cells = Vec::with_capacity(rows * cols);
        for &(code, n) in runs {
            let cell = Cell::from_code(code)?;
            for _ in 0..n {
                cells.push(cell);
            }
        }
        if cells.len() != rows * cols {
            return None;
        }
        Some(TraceGrid { rows, cols, cells })
    }
}

#[derive(Serialize, Deserialize)]
struct RleGrid {
    rows: usize,
    cols: usize,
    rle: Vec<(u8, u64)>,
}

impl Serialize for TraceGrid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RleGrid {
            rows: self.rows,
            cols: self.cols,
            rle: self.to_rle(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TraceGrid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RleGrid::deserialize(deserializer)?;
        TraceGrid::from_rle(raw.rows, raw.cols, &raw.rle)
            .ok_or_else(|| D::Error::custom("malformed run-length encoded trace"))
    }
}
