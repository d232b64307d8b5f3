use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// How the sample values are interpreted between grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interpolation {
    /// Straight lines between consecutive samples. The default: every
    /// functional is exactly computable with finitely many level crossings,
    /// and the signal never contains jumps.
    #[serde(rename = "piecewise-linear")]
    PiecewiseLinear,
    /// Constant on each cell `[grid[i], grid[i+1])`, right-continuous at
    /// breakpoints. The only sampled representation that carries jumps.
    #[serde(rename = "piecewise-constant")]
    PiecewiseConstant,
}

/// A signal given by samples on a strictly increasing grid.
///
/// The domain is the open interval `(grid.first, grid.last)`; endpoint
/// evaluation returns the one-sided limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Vec<f64>,
    values: Vec<f64>,
    mode: Interpolation,
}

impl SampledSignal {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, mode: Interpolation) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::BadResolution { n: grid.len() });
        }
        if grid.len() != values.len() {
            return Err(Error::InvalidSignal(format!(
                "grid has {} points but values has {}",
                grid.len(),
                values.len()
            )));
        }
        for (i, w) in grid.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidSignal(format!(
                    "grid must be strictly increasing, violated at index {}",
                    i + 1
                )));
            }
        }
        if grid.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal("grid and values must be finite".into()));
        }
        Ok(Self { grid, values, mode })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mode(&self) -> Interpolation {
        self.mode
    }

    pub fn domain(&self) -> Interval {
        Interval::new(self.grid[0], *self.grid.last().unwrap())
            .expect("validated at construction")
    }

    /// Index of the cell `[grid[i], grid[i+1])` containing `x`.
    ///
    /// `x` must lie in the closed domain; the last grid point maps to the
    /// final cell.
    pub(crate) fn cell_of(&self, x: f64) -> usize {
        match self
            .grid
            .binary_search_by(|g| g.partial_cmp(&x).expect("finite grid"))
        {
            Ok(i) => i.min(self.grid.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.grid.len() - 2),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let domain = self.domain();
        if !domain.contains(x) {
            return Err(Error::OutOfDomain { x, domain });
        }
        let i = self.cell_of(x);
        match self.mode {
            Interpolation::PiecewiseLinear => {
                let (x0, x1) = (self.grid[i], self.grid[i + 1]);
                let (y0, y1) = (self.values[i], self.values[i + 1]);
                let t = (x - x0) / (x1 - x0);
                Ok(y0 + t * (y1 - y0))
            }
            Interpolation::PiecewiseConstant => {
                // On the closed right endpoint the last cell value applies.
                if x == *self.grid.last().unwrap() {
                    Ok(self.values[self.values.len() - 1])
                } else {
                    Ok(self.values[i])
                }
            }
        }
    }

    /// Slope at `x` for piecewise-linear signals, 0 a.e. for
    /// piecewise-constant ones. At a breakpoint the right cell wins,
    /// matching right-continuity.
    pub fn slope_at(&self, x: f64) -> Result<f64> {
        let domain = self.domain();
        if !domain.contains(x) {
            return Err(Error::OutOfDomain { x, domain });
        }
        match self.mode {
            Interpolation::PiecewiseConstant => Ok(0.0),
            Interpolation::PiecewiseLinear => {
                let i = self.cell_of(x);
                Ok((self.values[i + 1] - self.values[i]) / (self.grid[i + 1] - self.grid[i]))
            }
        }
    }
}
