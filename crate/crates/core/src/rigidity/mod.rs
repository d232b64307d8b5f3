//! The rigidity machinery: one-sided variation identities, local Taylor
//! expansions of the oscillation, the derivative ODE family, the power-law
//! quotient and exponent equation, and the quotient-based segment
//! classifier.

mod classify;
mod taylor;

pub use classify::{
    classify_segments, classify_segments_with, ClassifyConfig, Segment, SegmentClass,
    SegmentParams, SegmentationReport,
};
pub use taylor::{fit_taylor, taylor_expansion_check, TaylorCheckReport, TaylorCheckRow, TaylorCoeffs};

use crate::calculus::{self, quad};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::signal::Signal;

fn flat_checked_tails(f: &Signal, i: &Interval) -> Result<(f64, crate::calculus::TailSplit)> {
    let m = calculus::interval_mean(f, i)?;
    let t = calculus::level_tails(f, i, m)?;
    if t.flat > 0.0 {
        return Err(Error::FlatAtMean { lo: i.lo(), hi: i.hi(), flat_len: t.flat });
    }
    Ok((m, t))
}

/// The right-endpoint derivative expression of the oscillation:
///
/// `-osc(f,(x,y))/(y-x) + |f(y)-m|/(y-x) + R((x,y)) (f(y)-m)/(y-x)^2`
///
/// with `m` the mean over `(x, y)`. For any Lipschitz signal this equals
/// `d/dy osc(f,(x,y))` wherever `{f = m}` is null; for signals whose
/// quotient is identically 1/4 it additionally equals `|f'(y)|/4`.
pub fn osc_derivative_rhs(f: &Signal, x: f64, y: f64) -> Result<f64> {
    let i = Interval::new(x, y)?;
    let (m, t) = flat_checked_tails(f, &i)?;
    let len = i.len();
    let osc = (t.abs_integral() / len).max(0.0);
    let dev = f.eval(y)? - m;
    Ok(-osc / len + dev.abs() / len + t.balance() * dev / (len * len))
}

/// The left-endpoint counterpart: equals `-d/dx osc(f,(x,y))` wherever
/// `{f = m}` is null, and `|f'(x)|/4` for quotient-1/4 signals.
pub fn osc_derivative_rhs_left(f: &Signal, x: f64, y: f64) -> Result<f64> {
    let i = Interval::new(x, y)?;
    let (m, t) = flat_checked_tails(f, &i)?;
    let len = i.len();
    let osc = (t.abs_integral() / len).max(0.0);
    let dev = f.eval(x)? - m;
    Ok(-osc / len + dev.abs() / len + t.balance() * dev / (len * len))
}

/// One probe of [`lemma_residual`].
#[derive(Debug, Clone, Copy)]
pub struct LemmaProbe {
    pub x: f64,
    pub y: f64,
    /// `|f'(y)|/4`, the value the right-endpoint expression must take for
    /// quotient-1/4 signals.
    pub quarter_deriv_y: f64,
    pub rhs_y: f64,
    /// Central finite difference of `y -> osc(f,(x,y))`.
    pub fd_y: f64,
    pub quarter_deriv_x: f64,
    pub rhs_x: f64,
    /// Central finite difference of `x -> -osc(f,(x,y))`.
    pub fd_x: f64,
}

impl LemmaProbe {
    pub fn chain_residual(&self) -> f64 {
        (self.fd_y - self.rhs_y).abs().max((self.fd_x - self.rhs_x).abs())
    }

    pub fn identity_residual(&self) -> f64 {
        (self.quarter_deriv_y - self.rhs_y)
            .abs()
            .max((self.quarter_deriv_x - self.rhs_x).abs())
    }
}

/// Residuals of the one-sided variation identities over a probe set.
#[derive(Debug, Clone)]
pub struct LemmaResidualReport {
    pub probes: Vec<LemmaProbe>,
    pub fd_step: f64,
    /// Largest `|d/dy osc - rhs|` (and left counterpart): the chain-rule
    /// check, small for every differentiable signal.
    pub max_chain_residual: f64,
    /// Largest `||f'|/4 - rhs|`: vanishes exactly on quotient-1/4 signals
    /// and stays bounded away from zero otherwise.
    pub max_identity_residual: f64,
}

/// Probe the one-sided variation expressions at the given `(x, y)` pairs.
///
/// The central differences evaluate at `x ± fd_step` and `y ± fd_step`, so
/// probes must keep that margin inside the domain.
pub fn lemma_residual(f: &Signal, probes: &[(f64, f64)], fd_step: f64) -> Result<LemmaResidualReport> {
    if !(fd_step > 0.0) {
        return Err(Error::InvalidSignal("fd_step must be positive".into()));
    }
    let mut rows = Vec::with_capacity(probes.len());
    let osc = |a: f64, b: f64| -> Result<f64> {
        calculus::interval_oscillation(f, &Interval::new(a, b)?)
    };
    for &(x, y) in probes {
        let rhs_y = osc_derivative_rhs(f, x, y)?;
        let rhs_x = osc_derivative_rhs_left(f, x, y)?;
        let h = fd_step;
        let fd_y = (osc(x, y + h)? - osc(x, y - h)?) / (2.0 * h);
        let fd_x = -(osc(x + h, y)? - osc(x - h, y)?) / (2.0 * h);
        rows.push(LemmaProbe {
            x,
            y,
            quarter_deriv_y: f.derivative(y)?.abs() / 4.0,
            rhs_y,
            fd_y,
            quarter_deriv_x: f.derivative(x)?.abs() / 4.0,
            rhs_x,
            fd_x,
        });
    }
    let max_chain_residual = rows.iter().map(LemmaProbe::chain_residual).fold(0.0, f64::max);
    let max_identity_residual = rows.iter().map(LemmaProbe::identity_residual).fold(0.0, f64::max);
    Ok(LemmaResidualReport { probes: rows, fd_step, max_chain_residual, max_identity_residual })
}

/// The third-order rigidity obstruction `9 A3 A1 - 2 A2^2`, zero exactly
/// when `3 f' f''' = (f'')^2` at the expansion point.
pub fn rigidity_defect(coeffs: &TaylorCoeffs) -> f64 {
    9.0 * coeffs.a[2] * coeffs.a[0] - 2.0 * coeffs.a[1] * coeffs.a[1]
}

/// Max residual of `3 g g'' = (g')^2` for `g(x) = A (x - B)^{3/2}` at
/// `probes` interior points — analytically zero, so the value certifies the
/// derivative implementation.
pub fn ode_family_check(a: f64, b_shift: f64, i: &Interval, probes: usize) -> Result<f64> {
    if b_shift > i.lo() {
        return Err(Error::BadBranch { b: b_shift, lo: i.lo() });
    }
    let n = probes.max(1);
    let mut worst = 0.0f64;
    for k in 0..n {
        let x = i.lo() + i.len() * (k as f64 + 1.0) / (n as f64 + 1.0);
        let u = x - b_shift;
        let g = a * u.powf(1.5);
        let dg = 1.5 * a * u.sqrt();
        let ddg = 0.75 * a / u.sqrt();
        worst = worst.max((3.0 * g * ddg - dg * dg).abs());
    }
    Ok(worst)
}

/// Poincaré quotient of `x^s` over `(0, b)`, independent of `b`:
/// `2s / (1+s)^{2 + 1/s}`.
pub fn power_quotient(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::BadExponent(s));
    }
    Ok(2.0 * s / (1.0 + s).powf(2.0 + 1.0 / s))
}

/// `phi(a, b) = (f(b) - f(a))/4 - (2/(b-a)) ∫_a^{x*} (f(x*) - f(z)) dz`
/// for `f(z) = z^s` and `x*` the point where `f` crosses its mean — the
/// gap `|Df|/4 - osc` on `(a, b)`. It vanishes for every `(a, b)` exactly
/// when `x^s` holds the quotient 1/4 on all intervals.
pub fn phi(s: f64, a: f64, b: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::BadExponent(s));
    }
    if !(a >= 0.0 && a < b) {
        return Err(Error::BadInterval { a, b });
    }
    let mean = (b.powf(s + 1.0) - a.powf(s + 1.0)) / ((s + 1.0) * (b - a));
    let x_star = mean.powf(1.0 / s);
    let lower_tail = mean * (x_star - a) - (x_star.powf(s + 1.0) - a.powf(s + 1.0)) / (s + 1.0);
    Ok((b.powf(s) - a.powf(s)) / 4.0 - 2.0 / (b - a) * lower_tail)
}

/// `F(s) = (2 + 1/s) ln(1+s) - ln(8s)`, the log form of the exponent
/// equation `8s = (1+s)^{2+1/s}`.
pub fn exponent_residual(s: f64) -> f64 {
    (2.0 + 1.0 / s) * (1.0 + s).ln() - (8.0 * s).ln()
}

/// All sign-change roots of the exponent equation on `[lo, hi]`, each
/// bisected to `tol`. The scan grid has 10^4 cells; `s = 1` is always a
/// root (8 = 2^3) and must appear when the range contains it.
pub fn exponent_equation_solve(lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
    if !(lo > 0.0 && lo < hi) {
        return Err(Error::BadInterval { a: lo, b: hi });
    }
    let tol = if tol > 0.0 { tol } else { 1e-12 };
    let cells = 10_000usize;
    let h = (hi - lo) / cells as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = exponent_residual(x0);
    for k in 1..=cells {
        let x1 = if k == cells { hi } else { lo + k as f64 * h };
        let f1 = exponent_residual(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            roots.push(quad::bisect_to(exponent_residual, x0, x1, tol));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        roots.push(hi);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < h);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{AnalyticSignal, SmoothSignal};

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn rhs_for_affine_is_quarter_slope() {
        let f = Signal::Analytic(AnalyticSignal::affine(2.0, 0.3, iv(0.0, 4.0)).unwrap());
        for (x, y) in [(0.0, 1.0), (0.5, 3.5), (1.0, 1.1)] {
            let rhs = osc_derivative_rhs(&f, x, y).unwrap();
            assert!((rhs - 0.5).abs() < 1e-13, "rhs({x},{y}) = {rhs}");
            let lhs = osc_derivative_rhs_left(&f, x, y).unwrap();
            assert!((lhs - 0.5).abs() < 1e-13);
        }
    }

    #[test]
    fn constant_signal_is_flat_at_mean() {
        let f = Signal::Analytic(AnalyticSignal::affine(0.0, 1.0, iv(0.0, 1.0)).unwrap());
        assert!(matches!(
            osc_derivative_rhs(&f, 0.1, 0.9),
            Err(Error::FlatAtMean { .. })
        ));
    }

    #[test]
    fn rhs_matches_fd_for_x_squared() {
        // d/dy osc(x^2, (0, y)) at y = 1 against the closed expression
        let f = Signal::Analytic(
            AnalyticSignal::polynomial(0.0, vec![0.0, 0.0, 1.0], iv(0.0, 1.2)).unwrap(),
        );
        let rhs = osc_derivative_rhs(&f, 0.0, 1.0).unwrap();
        let h = 1e-5;
        let osc = |y: f64| calculus::interval_oscillation(&f, &iv(0.0, y)).unwrap();
        let fd = (osc(1.0 + h) - osc(1.0 - h)) / (2.0 * h);
        assert!((rhs - fd).abs() < 1e-8, "rhs {rhs} fd {fd}");
        // x^2 is not a quotient-1/4 signal: the identity side stays off
        assert!((rhs - 0.25 * 2.0).abs() > 1e-3);
    }

    #[test]
    fn lemma_residuals_for_affine_vanish() {
        let f = Signal::Analytic(AnalyticSignal::affine(-1.5, 2.0, iv(0.0, 2.0)).unwrap());
        let probes = vec![(0.3, 0.9), (0.5, 1.5), (0.25, 1.75)];
        let rep = lemma_residual(&f, &probes, 1e-4).unwrap();
        assert!(rep.max_chain_residual < 1e-10, "{}", rep.max_chain_residual);
        assert!(rep.max_identity_residual < 1e-10);
    }

    #[test]
    fn lemma_identity_fails_for_exp() {
        let f = Signal::Smooth(SmoothSignal::exp(1.0, 1.0, 0.0, iv(-0.5, 1.5)));
        let mut probes = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                let x = 0.05 + 0.08 * i as f64;
                let y = 0.6 + 0.08 * j as f64;
                probes.push((x, y));
            }
        }
        let rep = lemma_residual(&f, &probes, 1e-4).unwrap();
        assert!(rep.max_chain_residual < 1e-6, "chain {}", rep.max_chain_residual);
        assert!(rep.max_identity_residual > 1e-3, "identity {}", rep.max_identity_residual);
    }

    #[test]
    fn ode_family_residual_is_tiny() {
        let r = ode_family_check(1.0, 0.0, &iv(0.5, 2.0), 100).unwrap();
        assert!(r < 1e-10, "residual {r}");
        assert_eq!(ode_family_check(0.0, 0.0, &iv(0.5, 2.0), 10).unwrap(), 0.0);
        assert!(matches!(
            ode_family_check(1.0, 1.0, &iv(0.5, 2.0), 10),
            Err(Error::BadBranch { .. })
        ));
    }

    #[test]
    fn quadratic_violates_the_ode() {
        // g = x^2: 3 g g'' - (g')^2 = 6 x^2 - 4 x^2 = 2 x^2, max 8 at x = 2
        let i = iv(0.5, 2.0);
        let mut worst = 0.0f64;
        for k in 0..100 {
            let x = i.lo() + i.len() * (k as f64 + 1.0) / 101.0;
            worst = worst.max((3.0 * x * x * 2.0 - (2.0 * x) * (2.0 * x)).abs());
        }
        assert!((worst - 2.0 * (i.hi() - i.len() / 101.0).powi(2)).abs() < 0.1);
        assert!(worst > 7.0);
    }

    #[test]
    fn power_quotient_values() {
        assert_eq!(power_quotient(1.0).unwrap(), 0.25);
        let q = power_quotient(2.5).unwrap();
        assert!((q - 0.2472900816141482).abs() < 1e-15);
        assert!(matches!(power_quotient(0.0), Err(Error::BadExponent(_))));
        // stays below the Poincaré bound and moves continuously on a grid
        // (the slope approaches 2/e as s -> 0, so steps stay under 0.75 h)
        let mut prev = power_quotient(0.025).unwrap();
        for k in 2..=400 {
            let s = k as f64 * 0.025;
            let q = power_quotient(s).unwrap();
            assert!(q <= 0.5);
            assert!((q - prev).abs() < 0.75 * 0.025, "jump at s={s}");
            prev = q;
        }
    }

    #[test]
    fn phi_vanishes_for_linear() {
        for (a, b) in [(0.0, 1.0), (0.3, 0.9), (1.0, 4.0)] {
            assert!(phi(1.0, a, b).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn bad_interval_arguments_are_rejected() {
        assert!(matches!(phi(2.5, -0.1, 1.0), Err(Error::BadInterval { .. })));
        assert!(matches!(phi(2.5, 1.0, 1.0), Err(Error::BadInterval { .. })));
        assert!(matches!(phi(-1.0, 0.0, 1.0), Err(Error::BadExponent(_))));
        assert!(matches!(
            exponent_equation_solve(0.0, 4.0, 1e-10),
            Err(Error::BadInterval { .. })
        ));
        assert!(matches!(
            exponent_equation_solve(2.0, 1.0, 1e-10),
            Err(Error::BadInterval { .. })
        ));
    }

    #[test]
    fn flat_at_mean_detected_for_pc() {
        // two equal-length cells at +1/-1: the middle third sits on the mean
        let f = Signal::Sampled(
            crate::signal::SampledSignal::new(
                vec![0.0, 1.0, 2.0, 3.0],
                vec![-1.0, 0.0, 1.0, 1.0],
                crate::signal::Interpolation::PiecewiseConstant,
            )
            .unwrap(),
        );
        assert!(matches!(
            osc_derivative_rhs(&f, 0.0, 3.0),
            Err(Error::FlatAtMean { flat_len, .. }) if (flat_len - 1.0).abs() < 1e-12
        ));
    }

    #[test]
    fn phi_is_quarter_tv_minus_osc() {
        // cross-check against the interval functionals on Power signals
        for (s, a, b) in [(2.5, 0.0, 1.0), (2.5, 0.3, 1.7), (0.8, 0.1, 2.0), (1.7, 0.0, 0.5)] {
            let f = Signal::Analytic(
                AnalyticSignal::power(s, 0.0, 1.0, 0.0, iv(0.0, b + 0.1)).unwrap(),
            );
            let i = iv(a, b);
            let tv = calculus::total_variation(&f, &i).unwrap();
            let osc = calculus::interval_oscillation(&f, &i).unwrap();
            let expect = 0.25 * tv - osc;
            let got = phi(s, a, b).unwrap();
            assert!((got - expect).abs() < 1e-12, "phi({s},{a},{b}): {got} vs {expect}");
        }
    }

    #[test]
    fn phi_scale_invariance() {
        let s = 2.5;
        let base = phi(s, 0.0, 1.0).unwrap();
        for b in [0.5, 1.0, 2.0] {
            let v = phi(s, 0.0, b).unwrap() / b.powf(s);
            assert!((v - base).abs() < 1e-13);
        }
    }

    #[test]
    fn exponent_equation_roots() {
        let roots = exponent_equation_solve(0.5, 4.0, 1e-10).unwrap();
        assert_eq!(roots.len(), 2, "roots {roots:?}");
        assert!((roots[0] - 1.0).abs() < 1e-10);
        // the second sign change of F sits near 2.3686, well away from 5/2
        assert!((roots[1] - 2.368564818203887).abs() < 1e-6);
        assert!(exponent_residual(2.5).abs() > 0.01);
        assert_eq!(exponent_residual(1.0), 0.0);
    }
}
