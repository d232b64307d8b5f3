//! Signal representations: sampled grids, closed-form families, and smooth
//! closures, plus the affine conjugation used by the invariance tests.

mod analytic;
mod family;
mod sampled;
mod smooth;

pub use analytic::{AffineMap, AnalyticKind, AnalyticSignal};
pub use family::{generate_family, FamilyParams, FAMILY_KINDS};
pub use sampled::{Interpolation, SampledSignal};
pub use smooth::SmoothSignal;

pub(crate) use analytic::{horner as poly_eval, signed_pow_inv};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Any signal the interval functionals accept.
#[derive(Debug, Clone)]
pub enum Signal {
    Sampled(SampledSignal),
    Analytic(AnalyticSignal),
    Smooth(SmoothSignal),
}

impl From<SampledSignal> for Signal {
    fn from(s: SampledSignal) -> Self {
        Signal::Sampled(s)
    }
}

impl From<AnalyticSignal> for Signal {
    fn from(s: AnalyticSignal) -> Self {
        Signal::Analytic(s)
    }
}

impl From<SmoothSignal> for Signal {
    fn from(s: SmoothSignal) -> Self {
        Signal::Smooth(s)
    }
}

impl Signal {
    pub fn domain(&self) -> Interval {
        match self {
            Signal::Sampled(s) => s.domain(),
            Signal::Analytic(s) => s.domain(),
            Signal::Smooth(s) => s.domain(),
        }
    }

    /// Point evaluation. Piecewise-constant signals are right-continuous at
    /// breakpoints; domain endpoints return the one-sided limit.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Signal::Sampled(s) => s.eval(x),
            Signal::Analytic(s) => s.eval(x),
            Signal::Smooth(s) => s.eval(x),
        }
    }

    /// Pointwise derivative where it exists: exact for closed forms, the
    /// cell slope for piecewise-linear samples, 0 a.e. for piecewise-constant.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        match self {
            Signal::Sampled(s) => s.slope_at(x),
            Signal::Analytic(s) => s.derivative(x),
            Signal::Smooth(s) => s.derivative(x),
        }
    }

}

/// Sample an analytic signal on a uniform `n`-point grid over its domain.
///
/// In piecewise-constant mode the values are the right-continuous point
/// evaluations, so a jump sitting on a cell boundary is reproduced exactly.
pub fn sample(signal: &AnalyticSignal, n: usize, mode: Interpolation) -> Result<SampledSignal> {
    if n < 2 {
        return Err(Error::BadResolution { n });
    }
    let d = signal.domain();
    let grid: Vec<f64> = (0..n)
        .map(|k| d.lo() + d.len() * k as f64 / (n - 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&x| signal.eval_unchecked(x)).collect();
    SampledSignal::new(grid, values, mode)
}

/// The conjugate `x -> L(f(F(x)))`, with the domain pulled back through
/// `F^{-1}`. Sampled grids are pulled back point by point; closed forms stay
/// inside their family.
pub fn affine_conjugate(signal: &Signal, l: &AffineMap, f_map: &AffineMap) -> Result<Signal> {
    match signal {
        Signal::Analytic(s) => Ok(Signal::Analytic(s.conjugate(l, f_map)?)),
        Signal::Smooth(s) => Ok(Signal::Smooth(s.conjugate(
            l.scale(),
            l.offset(),
            f_map.scale(),
            f_map.offset(),
        )?)),
        Signal::Sampled(s) => {
            let finv = f_map.inverse();
            let mut grid: Vec<f64> = s.grid().iter().map(|&x| finv.apply(x)).collect();
            let mut values: Vec<f64> =
                s.values().iter().map(|&y| l.scale() * y + l.offset()).collect();
            if f_map.scale() < 0.0 {
                grid.reverse();
                values.reverse();
                if s.mode() == Interpolation::PiecewiseConstant {
                    // Cell values shift by one under orientation reversal:
                    // new cell [g'_j, g'_{j+1}) maps onto old cell j' = n-2-j.
                    values.rotate_left(1);
                    let n = values.len();
                    values[n - 1] = values[n - 2];
                }
            }
            Ok(Signal::Sampled(SampledSignal::new(grid, values, s.mode())?))
        }
    }
}
