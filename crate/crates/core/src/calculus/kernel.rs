//! Exact raw functionals (integral, tail integrals, variation) for every
//! signal representation, computed on clipped subintervals.
//!
//! Piecewise-linear and piecewise-constant paths enumerate cells and level
//! crossings in closed form. Power laws and polynomials use exact
//! antiderivatives with bisected crossings. Smooth closures fall back to
//! Gauss-Legendre panels between crossings.

use crate::calculus::quad;
use crate::signal::{AnalyticKind, AnalyticSignal, Interpolation, SampledSignal, Signal, SmoothSignal};

/// Decomposition of `I` by the level `m`:
/// `upper = ∫ (f-m)^+`, `lower = ∫ (m-f)^+`, `above = |{f > m}|`,
/// `below = |{f < m}|`, and `flat = |{f = m}|` (positive only when the
/// signal coincides with the level on whole cells).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TailSplit {
    pub upper: f64,
    pub lower: f64,
    pub above: f64,
    pub below: f64,
    pub flat: f64,
}

impl TailSplit {
    /// `|{f < m}| - |{f > m}|`, the level balance R(I) at this level.
    pub fn balance(&self) -> f64 {
        self.below - self.above
    }

    /// `∫ |f - m|` over the interval.
    pub fn abs_integral(&self) -> f64 {
        self.upper + self.lower
    }
}

fn linear_tails(acc: &mut TailSplit, x0: f64, x1: f64, y0: f64, y1: f64, m: f64) {
    let len = x1 - x0;
    if len <= 0.0 {
        return;
    }
    let g0 = y0 - m;
    let g1 = y1 - m;
    if g0 == 0.0 && g1 == 0.0 {
        acc.flat += len;
        return;
    }
    if g0 >= 0.0 && g1 >= 0.0 {
        acc.upper += 0.5 * len * (g0 + g1);
        acc.above += len;
        return;
    }
    if g0 <= 0.0 && g1 <= 0.0 {
        acc.lower += 0.5 * len * (-g0 - g1);
        acc.below += len;
        return;
    }
    // strict sign change: split at the exact crossing
    let t = g0 / (g0 - g1);
    let xc = x0 + t * len;
    if g0 > 0.0 {
        acc.upper += 0.5 * (xc - x0) * g0;
        acc.above += xc - x0;
        acc.lower += 0.5 * (x1 - xc) * (-g1);
        acc.below += x1 - xc;
    } else {
        acc.lower += 0.5 * (xc - x0) * (-g0);
        acc.below += xc - x0;
        acc.upper += 0.5 * (x1 - xc) * g1;
        acc.above += x1 - xc;
    }
}

fn const_tails(acc: &mut TailSplit, x0: f64, x1: f64, v: f64, m: f64) {
    let len = x1 - x0;
    if len <= 0.0 {
        return;
    }
    if v > m {
        acc.upper += (v - m) * len;
        acc.above += len;
    } else if v < m {
        acc.lower += (m - v) * len;
        acc.below += len;
    } else {
        acc.flat += len;
    }
}

// ---------------------------------------------------------------------------
// sampled paths
// ---------------------------------------------------------------------------

fn walk_pl<F: FnMut(f64, f64, f64, f64)>(s: &SampledSignal, a: f64, b: f64, mut visit: F) {
    let grid = s.grid();
    let values = s.values();
    let i0 = s.cell_of(a);
    let i1 = s.cell_of(b);
    for i in i0..=i1 {
        let (gx0, gx1) = (grid[i], grid[i + 1]);
        let x0 = gx0.max(a);
        let x1 = gx1.min(b);
        if x1 <= x0 {
            continue;
        }
        let slope = (values[i + 1] - values[i]) / (gx1 - gx0);
        let y0 = values[i] + slope * (x0 - gx0);
        let y1 = values[i] + slope * (x1 - gx0);
        visit(x0, x1, y0, y1);
    }
}

fn walk_pc<F: FnMut(f64, f64, f64)>(s: &SampledSignal, a: f64, b: f64, mut visit: F) {
    let grid = s.grid();
    let values = s.values();
    let i0 = s.cell_of(a);
    let i1 = s.cell_of(b).min(grid.len() - 2);
    for i in i0..=i1 {
        let x0 = grid[i].max(a);
        let x1 = grid[i + 1].min(b);
        if x1 <= x0 {
            continue;
        }
        visit(x0, x1, values[i]);
    }
}

fn sampled_integral(s: &SampledSignal, a: f64, b: f64) -> f64 {
    let mut acc = 0.0;
    match s.mode() {
        Interpolation::PiecewiseLinear => {
            walk_pl(s, a, b, |x0, x1, y0, y1| acc += 0.5 * (x1 - x0) * (y0 + y1))
        }
        Interpolation::PiecewiseConstant => walk_pc(s, a, b, |x0, x1, v| acc += (x1 - x0) * v),
    }
    acc
}

fn sampled_tails(s: &SampledSignal, a: f64, b: f64, m: f64) -> TailSplit {
    let mut acc = TailSplit::default();
    match s.mode() {
        Interpolation::PiecewiseLinear => {
            walk_pl(s, a, b, |x0, x1, y0, y1| linear_tails(&mut acc, x0, x1, y0, y1, m))
        }
        Interpolation::PiecewiseConstant => {
            walk_pc(s, a, b, |x0, x1, v| const_tails(&mut acc, x0, x1, v, m))
        }
    }
    acc
}

fn sampled_variation(s: &SampledSignal, a: f64, b: f64) -> f64 {
    match s.mode() {
        Interpolation::PiecewiseLinear => {
            let mut acc = 0.0;
            walk_pl(s, a, b, |_, _, y0, y1| acc += (y1 - y0).abs());
            acc
        }
        Interpolation::PiecewiseConstant => {
            // jumps strictly inside (a, b)
            let grid = s.grid();
            let values = s.values();
            let mut acc = 0.0;
            for i in 1..grid.len() - 1 {
                if grid[i] > a && grid[i] < b {
                    acc += (values[i] - values[i - 1]).abs();
                }
            }
            acc
        }
    }
}

// ---------------------------------------------------------------------------
// closed-form paths
// ---------------------------------------------------------------------------

/// Antiderivative of `sgn(u) |u|^s` (continuous, vanishing at the branch).
fn power_antideriv(u: f64, s: f64) -> f64 {
    u.abs().powf(s + 1.0) / (s + 1.0)
}

fn effective_degree(coefficients: &[f64]) -> usize {
    coefficients.iter().rposition(|&c| c != 0.0).unwrap_or(0)
}

fn poly_integral(center: f64, coefficients: &[f64], a: f64, b: f64) -> f64 {
    let eval_anti = |x: f64| {
        let u = x - center;
        let mut acc = 0.0;
        for (j, c) in coefficients.iter().enumerate().rev() {
            acc = acc * u + c / (j as f64 + 1.0);
        }
        acc * u
    };
    eval_anti(b) - eval_anti(a)
}

/// Partition points of `[a, b]` at which a polynomial may change monotone
/// direction: the sign-change roots of its derivative.
fn poly_criticals(center: f64, coefficients: &[f64], a: f64, b: f64) -> Vec<f64> {
    let deg = effective_degree(coefficients);
    if deg <= 1 {
        return Vec::new();
    }
    let dcoeffs: Vec<f64> = coefficients
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| j as f64 * c)
        .collect();
    let cells = (256 * deg).max(1024);
    quad::sign_change_roots(
        |x| crate::signal::poly_eval(&dcoeffs, x - center),
        a,
        b,
        cells,
    )
}

/// Crossings of `f = m` inside `[a, b]`, one bisection per monotone segment.
fn crossings_on_segments<F: Fn(f64) -> f64>(
    f: &F,
    m: f64,
    mut pts: Vec<f64>,
    a: f64,
    b: f64,
) -> Vec<f64> {
    pts.retain(|&p| p > a && p < b);
    let mut edges = Vec::with_capacity(pts.len() + 2);
    edges.push(a);
    edges.extend(pts);
    edges.push(b);
    let mut crossings = Vec::new();
    for w in edges.windows(2) {
        let (p, q) = (w[0], w[1]);
        if q <= p {
            continue;
        }
        let gp = f(p) - m;
        let gq = f(q) - m;
        if gp == 0.0 {
            crossings.push(p);
        } else if gp * gq < 0.0 {
            crossings.push(quad::bisect(|x| f(x) - m, p, q));
        }
    }
    if (f(b) - m) == 0.0 {
        crossings.push(b);
    }
    crossings.sort_by(|p, q| p.partial_cmp(q).unwrap());
    crossings.dedup_by(|p, q| (*p - *q).abs() <= (b - a) * 1e-15);
    crossings
}

/// Tail integrals when the signed area of each constant-sign panel is
/// available in closed form (or by quadrature).
fn tails_via_panels<F, G>(eval: &F, signed_area: &G, crossings: &[f64], a: f64, b: f64, m: f64) -> TailSplit
where
    F: Fn(f64) -> f64,
    G: Fn(f64, f64) -> f64,
{
    let mut acc = TailSplit::default();
    let mut edges = Vec::with_capacity(crossings.len() + 2);
    edges.push(a);
    edges.extend_from_slice(crossings);
    edges.push(b);
    for w in edges.windows(2) {
        let (p, q) = (w[0], w[1]);
        let len = q - p;
        if len <= 0.0 {
            continue;
        }
        let g_mid = eval(0.5 * (p + q)) - m;
        let area = signed_area(p, q) - m * len;
        if g_mid > 0.0 {
            acc.upper += area.max(0.0);
            acc.above += len;
        } else if g_mid < 0.0 {
            acc.lower += (-area).max(0.0);
            acc.below += len;
        } else {
            acc.flat += len;
        }
    }
    acc
}

fn analytic_integral(s: &AnalyticSignal, a: f64, b: f64) -> f64 {
    match s.kind() {
        AnalyticKind::Affine { slope, intercept } => {
            let mid = 0.5 * (a + b);
            (slope * mid + intercept) * (b - a)
        }
        AnalyticKind::Jump { location, left_value, right_value } => {
            let c = location.clamp(a, b);
            left_value * (c - a) + right_value * (b - c)
        }
        AnalyticKind::Power { exponent, shift, scale, offset } => {
            scale * (power_antideriv(b - shift, *exponent) - power_antideriv(a - shift, *exponent))
                + offset * (b - a)
        }
        AnalyticKind::Polynomial { center, coefficients } => {
            poly_integral(*center, coefficients, a, b)
        }
        AnalyticKind::Composite(pieces) => pieces
            .iter()
            .map(|p| {
                let lo = p.domain().lo().max(a);
                let hi = p.domain().hi().min(b);
                if hi > lo {
                    analytic_integral(p, lo, hi)
                } else {
                    0.0
                }
            })
            .sum(),
    }
}

fn analytic_tails(s: &AnalyticSignal, a: f64, b: f64, m: f64, acc: &mut TailSplit) {
    match s.kind() {
        AnalyticKind::Affine { slope, intercept } => {
            linear_tails(acc, a, b, slope * a + intercept, slope * b + intercept, m)
        }
        AnalyticKind::Jump { location, left_value, right_value } => {
            let c = location.clamp(a, b);
            const_tails(acc, a, c, *left_value, m);
            const_tails(acc, c, b, *right_value, m);
        }
        AnalyticKind::Power { exponent, shift, scale, offset } => {
            if *scale == 0.0 {
                const_tails(acc, a, b, *offset, m);
                return;
            }
            // strictly monotone: a single crossing, in closed form
            let w = (m - offset) / scale;
            let xc = (shift + crate::signal::signed_pow_inv(w, *exponent)).clamp(a, b);
            let area = |p: f64, q: f64| {
                scale * (power_antideriv(q - shift, *exponent) - power_antideriv(p - shift, *exponent))
                    + offset * (q - p)
                    - m * (q - p)
            };
            let (lo_len, hi_len) = (xc - a, b - xc);
            if *scale > 0.0 {
                if lo_len > 0.0 {
                    acc.lower += (-area(a, xc)).max(0.0);
                    acc.below += lo_len;
                }
                if hi_len > 0.0 {
                    acc.upper += area(xc, b).max(0.0);
                    acc.above += hi_len;
                }
            } else {
                if lo_len > 0.0 {
                    acc.upper += area(a, xc).max(0.0);
                    acc.above += lo_len;
                }
                if hi_len > 0.0 {
                    acc.lower += (-area(xc, b)).max(0.0);
                    acc.below += hi_len;
                }
            }
        }
        AnalyticKind::Polynomial { center, coefficients } => {
            if effective_degree(coefficients) == 0 {
                const_tails(acc, a, b, coefficients[0], m);
                return;
            }
            let eval = |x: f64| crate::signal::poly_eval(coefficients, x - center);
            let criticals = poly_criticals(*center, coefficients, a, b);
            let crossings = crossings_on_segments(&eval, m, criticals, a, b);
            let part = tails_via_panels(
                &eval,
                &|p, q| poly_integral(*center, coefficients, p, q),
                &crossings,
                a,
                b,
                m,
            );
            acc.upper += part.upper;
            acc.lower += part.lower;
            acc.above += part.above;
            acc.below += part.below;
            acc.flat += part.flat;
        }
        AnalyticKind::Composite(pieces) => {
            for p in pieces {
                let lo = p.domain().lo().max(a);
                let hi = p.domain().hi().min(b);
                if hi > lo {
                    analytic_tails(p, lo, hi, m, acc);
                }
            }
        }
    }
}

fn analytic_variation(s: &AnalyticSignal, a: f64, b: f64) -> f64 {
    match s.kind() {
        AnalyticKind::Affine { slope, .. } => slope.abs() * (b - a),
        AnalyticKind::Jump { location, left_value, right_value } => {
            if *location > a && *location < b {
                (right_value - left_value).abs()
            } else {
                0.0
            }
        }
        AnalyticKind::Power { .. } => (s.eval_unchecked(b) - s.eval_unchecked(a)).abs(),
        AnalyticKind::Polynomial { center, coefficients } => {
            let criticals = poly_criticals(*center, coefficients, a, b);
            let eval = |x: f64| crate::signal::poly_eval(coefficients, x - center);
            let mut edges = vec![a];
            edges.extend(criticals.into_iter().filter(|&p| p > a && p < b));
            edges.push(b);
            edges.windows(2).map(|w| (eval(w[1]) - eval(w[0])).abs()).sum()
        }
        AnalyticKind::Composite(pieces) => {
            let mut acc = 0.0;
            for (k, p) in pieces.iter().enumerate() {
                let lo = p.domain().lo().max(a);
                let hi = p.domain().hi().min(b);
                if hi > lo {
                    acc += analytic_variation(p, lo, hi);
                }
                // junction jump strictly inside (a, b)
                if k + 1 < pieces.len() {
                    let xj = p.domain().hi();
                    if xj > a && xj < b {
                        let left = p.eval_unchecked(xj);
                        let right = pieces[k + 1].eval_unchecked(xj);
                        acc += (right - left).abs();
                    }
                }
            }
            acc
        }
    }
}

// ---------------------------------------------------------------------------
// smooth closure path
// ---------------------------------------------------------------------------

const SMOOTH_SCAN_CELLS: usize = 1024;
const SMOOTH_PANELS: usize = 4;

fn smooth_criticals(s: &SmoothSignal, a: f64, b: f64) -> Vec<f64> {
    quad::sign_change_roots(|x| s.derivative_unchecked(x), a, b, SMOOTH_SCAN_CELLS)
}

fn smooth_integral(s: &SmoothSignal, a: f64, b: f64) -> f64 {
    quad::integrate(|x| s.eval_unchecked(x), a, b, SMOOTH_PANELS)
}

fn smooth_tails(s: &SmoothSignal, a: f64, b: f64, m: f64) -> TailSplit {
    let eval = |x: f64| s.eval_unchecked(x);
    let criticals = smooth_criticals(s, a, b);
    let crossings = crossings_on_segments(&eval, m, criticals, a, b);
    tails_via_panels(
        &eval,
        &|p, q| quad::integrate(eval, p, q, SMOOTH_PANELS),
        &crossings,
        a,
        b,
        m,
    )
}

fn smooth_variation(s: &SmoothSignal, a: f64, b: f64) -> f64 {
    let mut edges = vec![a];
    edges.extend(smooth_criticals(s, a, b).into_iter().filter(|&p| p > a && p < b));
    edges.push(b);
    edges
        .windows(2)
        .map(|w| (s.eval_unchecked(w[1]) - s.eval_unchecked(w[0])).abs())
        .sum()
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

pub(crate) fn raw_integral(sig: &Signal, a: f64, b: f64) -> f64 {
    match sig {
        Signal::Sampled(s) => sampled_integral(s, a, b),
        Signal::Analytic(s) => analytic_integral(s, a, b),
        Signal::Smooth(s) => smooth_integral(s, a, b),
    }
}

pub(crate) fn tails(sig: &Signal, a: f64, b: f64, m: f64) -> TailSplit {
    match sig {
        Signal::Sampled(s) => sampled_tails(s, a, b, m),
        Signal::Analytic(s) => {
            let mut acc = TailSplit::default();
            analytic_tails(s, a, b, m, &mut acc);
            acc
        }
        Signal::Smooth(s) => smooth_tails(s, a, b, m),
    }
}

pub(crate) fn variation(sig: &Signal, a: f64, b: f64) -> f64 {
    match sig {
        Signal::Sampled(s) => sampled_variation(s, a, b),
        Signal::Analytic(s) => analytic_variation(s, a, b),
        Signal::Smooth(s) => smooth_variation(s, a, b),
    }
}
