//! The interval functionals: mean, oscillation, total variation, level
//! balance, Poincaré quotient, multiscale quotient maps, partition sums,
//! and the oscillation additivity defect.

mod kernel;
pub(crate) mod quad;

pub use kernel::TailSplit;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::signal::Signal;

/// The four functionals of one window, plus the quotient when defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalStats {
    pub interval: Interval,
    /// Mean value of the signal over the interval.
    pub mean: f64,
    /// Mean-normalized oscillation: the average of `|f - mean|`.
    pub oscillation: f64,
    /// Total variation of the derivative measure on the open interval.
    pub total_variation: f64,
    /// `|{f < mean}| - |{f > mean}|`.
    pub level_balance: f64,
    /// `oscillation / total_variation`; absent when the signal is constant
    /// on the interval (total variation zero).
    pub quotient: Option<f64>,
}

/// Interval statistics over a position x scale grid of sliding windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientMap {
    pub entries: Vec<IntervalStats>,
    pub scale_grid: Vec<f64>,
    pub position_grid: Vec<f64>,
}

impl QuotientMap {
    /// Entries for one window center, finest scale first.
    pub fn at_center(&self, center: f64) -> Vec<&IntervalStats> {
        let mut v: Vec<&IntervalStats> = self
            .entries
            .iter()
            .filter(|e| {
                let c = e.interval.center();
                (c - center).abs() <= 1e-9 * self.span().max(1.0)
            })
            .collect();
        v.sort_by(|a, b| a.interval.len().partial_cmp(&b.interval.len()).unwrap());
        v
    }

    fn span(&self) -> f64 {
        match (self.position_grid.first(), self.position_grid.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }
}

fn check_window(f: &Signal, i: &Interval) -> Result<()> {
    let d = f.domain();
    if !d.encloses(i) {
        let x = if i.lo() < d.lo() { i.lo() } else { i.hi() };
        return Err(Error::OutOfDomain { x, domain: d });
    }
    Ok(())
}

/// `(f)_I`, the mean value of `f` over `I`.
pub fn interval_mean(f: &Signal, i: &Interval) -> Result<f64> {
    check_window(f, i)?;
    Ok(kernel::raw_integral(f, i.lo(), i.hi()) / i.len())
}

/// Tail integrals and level-set measures of `f` against an arbitrary level.
pub fn level_tails(f: &Signal, i: &Interval, level: f64) -> Result<TailSplit> {
    check_window(f, i)?;
    Ok(kernel::tails(f, i.lo(), i.hi(), level))
}

/// `osc(f, I)`: the average of `|f - (f)_I|` over `I`.
pub fn interval_oscillation(f: &Signal, i: &Interval) -> Result<f64> {
    let m = interval_mean(f, i)?;
    let t = kernel::tails(f, i.lo(), i.hi(), m);
    Ok((t.abs_integral() / i.len()).max(0.0))
}

/// `|Df|(I)`: summed slopes for piecewise-linear cells, summed jumps for
/// piecewise-constant ones, endpoint differences on monotone closed forms.
pub fn total_variation(f: &Signal, i: &Interval) -> Result<f64> {
    check_window(f, i)?;
    Ok(kernel::variation(f, i.lo(), i.hi()))
}

/// `R(I) = |{f < (f)_I}| - |{f > (f)_I}|` with strict inequalities; cells
/// lying exactly on the mean contribute to neither side.
pub fn level_balance(f: &Signal, i: &Interval) -> Result<f64> {
    let m = interval_mean(f, i)?;
    Ok(kernel::tails(f, i.lo(), i.hi(), m).balance())
}

/// `osc / |Df|`, `None` when the total variation vanishes.
pub fn poincare_quotient(f: &Signal, i: &Interval) -> Result<Option<f64>> {
    let stats = interval_stats(f, i)?;
    Ok(stats.quotient)
}

/// All four functionals of one window in a single pass.
pub fn interval_stats(f: &Signal, i: &Interval) -> Result<IntervalStats> {
    check_window(f, i)?;
    let len = i.len();
    let mean = kernel::raw_integral(f, i.lo(), i.hi()) / len;
    let t = kernel::tails(f, i.lo(), i.hi(), mean);
    let oscillation = (t.abs_integral() / len).max(0.0);
    let total_variation = kernel::variation(f, i.lo(), i.hi());
    let quotient = (total_variation > 0.0).then(|| oscillation / total_variation);
    Ok(IntervalStats {
        interval: *i,
        mean,
        oscillation,
        total_variation,
        level_balance: t.balance(),
        quotient,
    })
}

/// Interval statistics for sliding windows of each `scale`, centered on a
/// `stride`-spaced grid. Windows that would poke out of the domain are
/// skipped, not clipped: a clipped window would change scale and corrupt
/// scale-indexed statistics.
pub fn quotient_map(f: &Signal, scales: &[f64], stride: f64) -> Result<QuotientMap> {
    if scales.is_empty() || scales.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::InvalidSignal("scales must be positive".into()));
    }
    if !(stride > 0.0) {
        return Err(Error::InvalidSignal("stride must be positive".into()));
    }
    let d = f.domain();
    let slack = 1e-12 * d.len().max(1.0);
    let steps = (d.len() / stride).round() as usize;
    let mut entries = Vec::new();
    let mut positions = Vec::new();
    for k in 0..=steps {
        let c = d.lo() + k as f64 * stride;
        if c > d.hi() + slack {
            break;
        }
        let mut any = false;
        for &scale in scales {
            let lo = c - 0.5 * scale;
            let hi = c + 0.5 * scale;
            if lo < d.lo() - slack || hi > d.hi() + slack {
                continue;
            }
            let window = Interval::new(lo.max(d.lo()), hi.min(d.hi()))?;
            entries.push(interval_stats(f, &window)?);
            any = true;
        }
        if any {
            positions.push(c);
        }
    }
    if entries.is_empty() {
        return Err(Error::NoValidWindow);
    }
    let mut scale_grid = scales.to_vec();
    scale_grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(QuotientMap { entries, scale_grid, position_grid: positions })
}

/// Sum of mean-normalized oscillations over a deterministic partition of
/// `J` into pieces of equal length in `[mesh, 2 mesh]`.
pub fn partition_osc_sum(f: &Signal, j: &Interval, mesh: f64) -> Result<f64> {
    check_window(f, j)?;
    if !(mesh > 0.0) || mesh > j.len() {
        return Err(Error::BadMesh { mesh, max: j.len() });
    }
    let n = (j.len() / mesh).floor() as usize;
    let n = n.max(1);
    let mut acc = 0.0;
    for k in 0..n {
        let lo = j.lo() + j.len() * k as f64 / n as f64;
        let hi = if k + 1 == n { j.hi() } else { j.lo() + j.len() * (k + 1) as f64 / n as f64 };
        acc += interval_oscillation(f, &Interval::new(lo, hi)?)?;
    }
    Ok(acc)
}

/// `|osc(J) - osc(J_left) - osc(J_right)|` for the split of `J` at `split`:
/// the finite-additivity defect of the oscillation map on this triple. Zero
/// at every split is necessary for `I -> osc(f, I)` to extend to a measure.
pub fn measure_extension_defect(f: &Signal, j: &Interval, split: f64) -> Result<f64> {
    check_window(f, j)?;
    if !(split > j.lo() && split < j.hi()) {
        return Err(Error::BadSplit { split });
    }
    let whole = interval_oscillation(f, j)?;
    let left = interval_oscillation(f, &Interval::new(j.lo(), split)?)?;
    let right = interval_oscillation(f, &Interval::new(split, j.hi())?)?;
    Ok((whole - left - right).abs())
}
