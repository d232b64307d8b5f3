//! Local Taylor coefficients and the expansion checks for the mean-crossing
//! offset, the oscillation, and the quarter-variation of shrinking windows.

use nalgebra::{DMatrix, DVector};

use crate::calculus;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::signal::Signal;

/// Expansion coefficients `A_j = f^(j)(x0) / j!` for `j = 1..=4`, with the
/// fit window and residual that produced them.
#[derive(Debug, Clone, Copy)]
pub struct TaylorCoeffs {
    pub center: f64,
    /// `[A1, A2, A3, A4]`.
    pub a: [f64; 4],
    pub window: Interval,
    /// RMS misfit of the degree-4 model on the probe grid; exactly 0 when
    /// the coefficients come from closed-form differentiation.
    pub residual: f64,
}

const FIT_POINTS: usize = 201;
const MAX_CONDITION: f64 = 1e12;

/// Taylor coefficients `A1..A4` of `f` about `x0` on the window
/// `(x0 - halfwidth, x0 + halfwidth)`.
///
/// Closed-form signals are differentiated exactly. Sampled signals and
/// smooth closures get a degree-4 least-squares fit of
/// `f(x0 + t) - f(x0)` on a dense probe grid; the normalized basis keeps
/// the normal equations well conditioned, and a condition number beyond
/// 1e12 is reported rather than silently inverted.
pub fn fit_taylor(f: &Signal, x0: f64, halfwidth: f64) -> Result<TaylorCoeffs> {
    if !(halfwidth > 0.0) {
        return Err(Error::EmptyInterval { lo: x0 - halfwidth, hi: x0 + halfwidth });
    }
    let window = Interval::new(x0 - halfwidth, x0 + halfwidth)?;
    let domain = f.domain();
    if !domain.encloses(&window) {
        return Err(Error::OutOfDomain { x: x0 - halfwidth, domain });
    }
    match f {
        Signal::Analytic(sig) => {
            let mut a = [0.0; 4];
            for (j, slot) in a.iter_mut().enumerate() {
                *slot = sig.taylor_coefficient(x0, j as u32 + 1);
            }
            return Ok(TaylorCoeffs { center: x0, a, window, residual: 0.0 });
        }
        Signal::Smooth(sig) if sig.taylor_order_available() >= 4 => {
            let mut a = [0.0; 4];
            for (j, slot) in a.iter_mut().enumerate() {
                *slot = sig
                    .taylor_coefficient(x0, j as u32 + 1)
                    .expect("order checked above");
            }
            return Ok(TaylorCoeffs { center: x0, a, window, residual: 0.0 });
        }
        _ => {}
    }

    let f0 = f.eval(x0)?;
    let n = FIT_POINTS;
    let mut design = DMatrix::zeros(n, 4);
    let mut rhs = DVector::zeros(n);
    for k in 0..n {
        // normalized offset in [-1, 1]
        let t_hat = 2.0 * k as f64 / (n - 1) as f64 - 1.0;
        let x = x0 + t_hat * halfwidth;
        let y = f.eval(x)? - f0;
        let mut basis = t_hat;
        for j in 0..4 {
            design[(k, j)] = basis;
            basis *= t_hat;
        }
        rhs[k] = y;
    }
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if cond > MAX_CONDITION {
        return Err(Error::IllConditioned { cond });
    }
    let sol = svd
        .solve(&rhs, 0.0)
        .map_err(|_| Error::IllConditioned { cond })?;
    let fitted = &design * &sol;
    let residual = ((&rhs - fitted).norm_squared() / n as f64).sqrt();
    let mut a = [0.0; 4];
    let mut scale = halfwidth;
    for j in 0..4 {
        a[j] = sol[j] / scale;
        scale *= halfwidth;
    }
    Ok(TaylorCoeffs { center: x0, a, window, residual })
}

/// One window size of [`taylor_expansion_check`].
#[derive(Debug, Clone, Copy)]
pub struct TaylorCheckRow {
    pub eps: f64,
    /// Offset of the mean crossing: the `rho` with `f(x0 + rho) = (f)_I_eps`.
    pub rho: f64,
    /// Leading prediction `A2 eps^2 / (3 A1)`.
    pub rho_predicted: f64,
    /// `osc(f, (x0 - eps, x0 + eps))`.
    pub osc: f64,
    /// `(A1/2) eps + (A3/4 + A2^2/(18 A1)) eps^3`.
    pub osc_predicted: f64,
    /// `|Df|(I_eps) / 4`.
    pub quarter_tv: f64,
    /// `(A1/2) eps + (A3/2) eps^3`.
    pub quarter_tv_predicted: f64,
}

/// Measured expansions against their predictions, with fitted error orders.
#[derive(Debug, Clone)]
pub struct TaylorCheckReport {
    pub coeffs: TaylorCoeffs,
    pub rows: Vec<TaylorCheckRow>,
    /// Log-log slope of `|rho - rho_predicted|` vs eps (the expansion
    /// promises 4), `None` when the residuals sit at the rounding floor.
    pub rho_order: Option<f64>,
    /// Same for the oscillation (promise: 5).
    pub osc_order: Option<f64>,
    /// Same for the quarter variation (promise: 5).
    pub tv_order: Option<f64>,
}

fn fitted_order(points: &[(f64, f64)]) -> Option<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, r)| *r > 1e-13)
        .map(|&(e, r)| (e.ln(), r.ln()))
        .collect();
    if usable.len() < 2 {
        return None;
    }
    let n = usable.len() as f64;
    let sx: f64 = usable.iter().map(|p| p.0).sum();
    let sy: f64 = usable.iter().map(|p| p.1).sum();
    let sxx: f64 = usable.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = usable.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    (denom.abs() > 1e-12).then(|| (n * sxy - sx * sy) / denom)
}

/// Compare the shrinking-window behaviour of the mean crossing, the
/// oscillation, and the quarter variation at `x0` against their Taylor
/// predictions, one row per entry of `eps_list`.
pub fn taylor_expansion_check(f: &Signal, x0: f64, eps_list: &[f64]) -> Result<TaylorCheckReport> {
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidSignal("eps_list must contain positive widths".into()));
    }
    let eps_max = eps_list.iter().cloned().fold(0.0, f64::max);
    let window = Interval::new(x0 - eps_max, x0 + eps_max)?;
    let domain = f.domain();
    if !domain.encloses(&window) {
        return Err(Error::OutOfDomain { x: x0 - eps_max, domain });
    }
    // strict monotonicity on the largest window
    let mut saw_pos = false;
    let mut saw_neg = false;
    for k in 0..=512 {
        let x = window.lo() + window.len() * k as f64 / 512.0;
        let d = f.derivative(x)?;
        saw_pos |= d > 0.0;
        saw_neg |= d < 0.0;
    }
    if saw_pos == saw_neg {
        return Err(Error::NotMonotone);
    }

    let coeffs = fit_taylor(f, x0, eps_max)?;
    let [a1, a2, a3, _] = coeffs.a;
    // The expansions below are stated for an increasing representative;
    // flipping the sign of f flips A1 and A3 while osc, |Df| and rho are
    // unchanged, hence the |A1| and signum(A1) factors.
    let sigma = a1.signum();
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let i_eps = Interval::new(x0 - eps, x0 + eps)?;
        let mean = calculus::interval_mean(f, &i_eps)?;
        let g = |t: f64| f.eval(x0 + t).expect("probe inside the window") - mean;
        let rho = if g(-eps) == 0.0 {
            -eps
        } else if g(eps) == 0.0 {
            eps
        } else {
            crate::calculus::quad::bisect(g, -eps, eps)
        };
        let osc = calculus::interval_oscillation(f, &i_eps)?;
        let quarter_tv = 0.25 * calculus::total_variation(f, &i_eps)?;
        rows.push(TaylorCheckRow {
            eps,
            rho,
            rho_predicted: a2 / (3.0 * a1) * eps * eps,
            osc,
            osc_predicted: 0.5 * a1.abs() * eps
                + (sigma * a3 / 4.0 + a2 * a2 / (18.0 * a1.abs())) * eps.powi(3),
            quarter_tv,
            quarter_tv_predicted: 0.5 * a1.abs() * eps + 0.5 * sigma * a3 * eps.powi(3),
        });
    }
    let rho_order = fitted_order(
        &rows.iter().map(|r| (r.eps, (r.rho - r.rho_predicted).abs())).collect::<Vec<_>>(),
    );
    let osc_order = fitted_order(
        &rows.iter().map(|r| (r.eps, (r.osc - r.osc_predicted).abs())).collect::<Vec<_>>(),
    );
    let tv_order = fitted_order(
        &rows
            .iter()
            .map(|r| (r.eps, (r.quarter_tv - r.quarter_tv_predicted).abs()))
            .collect::<Vec<_>>(),
    );
    Ok(TaylorCheckReport { coeffs, rows, rho_order, osc_order, tv_order })
}
