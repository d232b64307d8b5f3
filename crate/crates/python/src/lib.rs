//! Python bindings: the signal types, the interval functionals, the
//! multiscale map, the classifier, and the rigidity checks, driven
//! in-process from Python.

use bvosc::{
    affine_conjugate, classify_segments_with, exponent_equation_solve, exponent_residual,
    fit_taylor, generate_family, interval_stats, lemma_residual, measure_extension_defect,
    ode_family_check, partition_osc_sum, phi, power_quotient, quotient_map, rigidity_defect,
    sample, taylor_expansion_check, AffineMap, AnalyticSignal, ClassifyConfig, FamilyParams,
    Interpolation, Interval, SampledSignal, SegmentParams, SmoothSignal,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

/// (eps, rho, rho_predicted, osc, osc_predicted, quarter_tv, quarter_tv_predicted)
type ExpansionRow = (f64, f64, f64, f64, f64, f64, f64);

fn err(e: bvosc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn interval(lo: f64, hi: f64) -> PyResult<Interval> {
    Interval::new(lo, hi).map_err(err)
}

fn mode_from_str(mode: &str) -> PyResult<Interpolation> {
    match mode {
        "pl" | "piecewise-linear" => Ok(Interpolation::PiecewiseLinear),
        "pc" | "piecewise-constant" => Ok(Interpolation::PiecewiseConstant),
        other => Err(PyValueError::new_err(format!(
            "mode must be 'pl' or 'pc', got '{other}'"
        ))),
    }
}

/// Statistics of one window.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct IntervalStats {
    #[pyo3(get)]
    lo: f64,
    #[pyo3(get)]
    hi: f64,
    #[pyo3(get)]
    mean: f64,
    #[pyo3(get)]
    osc: f64,
    #[pyo3(get)]
    tv: f64,
    #[pyo3(get)]
    r: f64,
    /// `None` when the window carries no variation.
    #[pyo3(get)]
    quotient: Option<f64>,
}

#[pymethods]
impl IntervalStats {
    fn __repr__(&self) -> String {
        format!(
            "IntervalStats(lo={}, hi={}, mean={}, osc={}, tv={}, r={}, quotient={:?})",
            self.lo, self.hi, self.mean, self.osc, self.tv, self.r, self.quotient
        )
    }
}

impl From<bvosc::IntervalStats> for IntervalStats {
    fn from(s: bvosc::IntervalStats) -> Self {
        Self {
            lo: s.interval.lo(),
            hi: s.interval.hi(),
            mean: s.mean,
            osc: s.oscillation,
            tv: s.total_variation,
            r: s.level_balance,
            quotient: s.quotient,
        }
    }
}

/// One classified segment.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Segment {
    #[pyo3(get)]
    start: f64,
    #[pyo3(get)]
    end: f64,
    #[pyo3(get)]
    class_name: String,
    #[pyo3(get)]
    max_quotient_deviation: f64,
    #[pyo3(get)]
    params: Vec<(String, f64)>,
}

#[pymethods]
impl Segment {
    fn __repr__(&self) -> String {
        format!(
            "Segment({}, {}..{}, dev={})",
            self.class_name, self.start, self.end, self.max_quotient_deviation
        )
    }
}

/// A 1D signal: sampled, closed-form, or exponential.
#[pyclass(frozen, name = "Signal", from_py_object)]
#[derive(Clone)]
struct PySignal {
    inner: bvosc::Signal,
}

impl PySignal {
    fn wrap(inner: bvosc::Signal) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PySignal {
    /// slope * x + intercept on (lo, hi)
    #[staticmethod]
    fn affine(slope: f64, intercept: f64, lo: f64, hi: f64) -> PyResult<Self> {
        Ok(Self::wrap(bvosc::Signal::Analytic(
            AnalyticSignal::affine(slope, intercept, interval(lo, hi)?).map_err(err)?,
        )))
    }

    /// left for x < location, right after, on (lo, hi)
    #[staticmethod]
    fn jump(location: f64, left: f64, right: f64, lo: f64, hi: f64) -> PyResult<Self> {
        Ok(Self::wrap(bvosc::Signal::Analytic(
            AnalyticSignal::jump(location, left, right, interval(lo, hi)?).map_err(err)?,
        )))
    }

    /// scale * sgn(x-shift) |x-shift|^exponent + offset on (lo, hi)
    #[staticmethod]
    #[pyo3(signature = (exponent, lo, hi, shift = 0.0, scale = 1.0, offset = 0.0))]
    fn power(exponent: f64, lo: f64, hi: f64, shift: f64, scale: f64, offset: f64) -> PyResult<Self> {
        Ok(Self::wrap(bvosc::Signal::Analytic(
            AnalyticSignal::power(exponent, shift, scale, offset, interval(lo, hi)?)
                .map_err(err)?,
        )))
    }

    /// sum_j coefficients[j] (x - center)^j on (lo, hi)
    #[staticmethod]
    fn polynomial(center: f64, coefficients: Vec<f64>, lo: f64, hi: f64) -> PyResult<Self> {
        Ok(Self::wrap(bvosc::Signal::Analytic(
            AnalyticSignal::polynomial(center, coefficients, interval(lo, hi)?).map_err(err)?,
        )))
    }

    /// scale * e^(rate x) + offset on (lo, hi)
    #[staticmethod]
    #[pyo3(signature = (rate, lo, hi, scale = 1.0, offset = 0.0))]
    fn exp(rate: f64, lo: f64, hi: f64, scale: f64, offset: f64) -> PyResult<Self> {
        Ok(Self::wrap(bvosc::Signal::Smooth(SmoothSignal::exp(
            rate,
            scale,
            offset,
            interval(lo, hi)?,
        ))))
    }

    /// Closed-form pieces on abutting domains.
    #[staticmethod]
    fn composite(pieces: Vec<PySignal>) -> PyResult<Self> {
        let analytic: Vec<AnalyticSignal> = pieces
            .into_iter()
            .map(|p| match p.inner {
                bvosc::Signal::Analytic(a) => Ok(a),
                _ => Err(PyValueError::new_err("composite pieces must be closed-form signals")),
            })
            .collect::<PyResult<_>>()?;
        Ok(Self::wrap(bvosc::Signal::Analytic(
            AnalyticSignal::composite(analytic).map_err(err)?,
        )))
    }

    /// Samples on a strictly increasing grid; mode 'pl' or 'pc'.
    #[staticmethod]
    #[pyo3(signature = (grid, values, mode = "pl"))]
    fn from_samples(grid: Vec<f64>, values: Vec<f64>, mode: &str) -> PyResult<Self> {
        Ok(Self::wrap(bvosc::Signal::Sampled(
            SampledSignal::new(grid, values, mode_from_str(mode)?).map_err(err)?,
        )))
    }

    /// Seeded generator; kinds: random_affine, random_centered_jump,
    /// random_offcenter_jump, random_monotone_polynomial,
    /// random_piecewise_affine, power.
    #[staticmethod]
    #[pyo3(signature = (kind, seed, lo = 0.0, hi = 1.0, exponent = None))]
    fn family(kind: &str, seed: u64, lo: f64, hi: f64, exponent: Option<f64>) -> PyResult<Self> {
        let mut params = FamilyParams::on(interval(lo, hi)?);
        if let Some(s) = exponent {
            params = params.with_exponent(s);
        }
        Ok(Self::wrap(bvosc::Signal::Analytic(
            generate_family(kind, seed, &params).map_err(err)?,
        )))
    }

    fn domain(&self) -> (f64, f64) {
        let d = self.inner.domain();
        (d.lo(), d.hi())
    }

    fn eval(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(err)
    }

    fn derivative(&self, x: f64) -> PyResult<f64> {
        self.inner.derivative(x).map_err(err)
    }

    fn mean(&self, lo: f64, hi: f64) -> PyResult<f64> {
        bvosc::interval_mean(&self.inner, &interval(lo, hi)?).map_err(err)
    }

    fn oscillation(&self, lo: f64, hi: f64) -> PyResult<f64> {
        bvosc::interval_oscillation(&self.inner, &interval(lo, hi)?).map_err(err)
    }

    fn total_variation(&self, lo: f64, hi: f64) -> PyResult<f64> {
        bvosc::total_variation(&self.inner, &interval(lo, hi)?).map_err(err)
    }

    fn level_balance(&self, lo: f64, hi: f64) -> PyResult<f64> {
        bvosc::level_balance(&self.inner, &interval(lo, hi)?).map_err(err)
    }

    /// osc / tv, or None when the signal is constant on the window.
    fn quotient(&self, lo: f64, hi: f64) -> PyResult<Option<f64>> {
        bvosc::poincare_quotient(&self.inner, &interval(lo, hi)?).map_err(err)
    }

    fn stats(&self, lo: f64, hi: f64) -> PyResult<IntervalStats> {
        Ok(interval_stats(&self.inner, &interval(lo, hi)?).map_err(err)?.into())
    }

    /// Window statistics over a position x scale grid.
    fn quotient_map(&self, scales: Vec<f64>, stride: f64) -> PyResult<Vec<IntervalStats>> {
        let map = quotient_map(&self.inner, &scales, stride).map_err(err)?;
        Ok(map.entries.into_iter().map(Into::into).collect())
    }

    /// Affine / jump / constant / other segments from quotient evidence.
    #[pyo3(signature = (scales, stride, tol = 1e-3))]
    fn classify(&self, scales: Vec<f64>, stride: f64, tol: f64) -> PyResult<Vec<Segment>> {
        let map = quotient_map(&self.inner, &scales, stride).map_err(err)?;
        let cfg = ClassifyConfig { affine_tol: tol, ..Default::default() };
        let rep = classify_segments_with(&self.inner, &map, cfg).map_err(err)?;
        Ok(rep
            .segments
            .into_iter()
            .map(|s| {
                let class_name = match s.class {
                    bvosc::SegmentClass::Affine => "affine",
                    bvosc::SegmentClass::Jump => "jump",
                    bvosc::SegmentClass::Constant => "constant",
                    bvosc::SegmentClass::Other => "other",
                }
                .to_string();
                let params = match s.params {
                    SegmentParams::Affine { slope, intercept } => {
                        vec![("slope".into(), slope), ("intercept".into(), intercept)]
                    }
                    SegmentParams::Jump { location, left_value, right_value } => vec![
                        ("location".into(), location),
                        ("left_value".into(), left_value),
                        ("right_value".into(), right_value),
                    ],
                    SegmentParams::Constant { value } => vec![("value".into(), value)],
                    SegmentParams::Other => vec![],
                };
                Segment {
                    start: s.interval.lo(),
                    end: s.interval.hi(),
                    class_name,
                    max_quotient_deviation: s.max_quotient_deviation,
                    params,
                }
            })
            .collect())
    }

    /// x -> l_scale * f(f_scale * x + f_offset) + l_offset
    fn conjugate(&self, l_scale: f64, l_offset: f64, f_scale: f64, f_offset: f64) -> PyResult<Self> {
        let l = AffineMap::new(l_scale, l_offset).map_err(err)?;
        let fm = AffineMap::new(f_scale, f_offset).map_err(err)?;
        Ok(Self::wrap(affine_conjugate(&self.inner, &l, &fm).map_err(err)?))
    }

    /// Uniform n-point sampling of a closed-form signal.
    #[pyo3(signature = (n, mode = "pl"))]
    fn sample(&self, n: usize, mode: &str) -> PyResult<Self> {
        match &self.inner {
            bvosc::Signal::Analytic(a) => Ok(Self::wrap(bvosc::Signal::Sampled(
                sample(a, n, mode_from_str(mode)?).map_err(err)?,
            ))),
            _ => Err(PyValueError::new_err("sample() needs a closed-form signal")),
        }
    }

    /// Sum of oscillations over a deterministic partition with pieces of
    /// length in [mesh, 2 mesh].
    fn partition_osc_sum(&self, lo: f64, hi: f64, mesh: f64) -> PyResult<f64> {
        partition_osc_sum(&self.inner, &interval(lo, hi)?, mesh).map_err(err)
    }

    /// |osc(J) - osc(left) - osc(right)| at the split point.
    fn measure_extension_defect(&self, lo: f64, hi: f64, split: f64) -> PyResult<f64> {
        measure_extension_defect(&self.inner, &interval(lo, hi)?, split).map_err(err)
    }

    /// The right-endpoint derivative expression of the oscillation.
    fn osc_derivative_rhs(&self, x: f64, y: f64) -> PyResult<f64> {
        bvosc::osc_derivative_rhs(&self.inner, x, y).map_err(err)
    }

    /// Max residuals (chain rule, quarter-derivative identity) over probes.
    fn lemma_residual(&self, probes: Vec<(f64, f64)>, fd_step: f64) -> PyResult<(f64, f64)> {
        let rep = lemma_residual(&self.inner, &probes, fd_step).map_err(err)?;
        Ok((rep.max_chain_residual, rep.max_identity_residual))
    }

    /// Taylor coefficients (A1, A2, A3, A4) and the fit residual.
    fn fit_taylor(&self, x0: f64, halfwidth: f64) -> PyResult<(f64, f64, f64, f64, f64)> {
        let c = fit_taylor(&self.inner, x0, halfwidth).map_err(err)?;
        Ok((c.a[0], c.a[1], c.a[2], c.a[3], c.residual))
    }

    /// 9 A3 A1 - 2 A2^2 at x0.
    fn rigidity_defect(&self, x0: f64, halfwidth: f64) -> PyResult<f64> {
        Ok(rigidity_defect(&fit_taylor(&self.inner, x0, halfwidth).map_err(err)?))
    }

    /// Rows (eps, rho, rho_predicted, osc, osc_predicted, tv/4, tv/4 predicted).
    fn taylor_expansion_check(&self, x0: f64, eps_list: Vec<f64>) -> PyResult<Vec<ExpansionRow>> {
        let rep = taylor_expansion_check(&self.inner, x0, &eps_list).map_err(err)?;
        Ok(rep
            .rows
            .iter()
            .map(|r| {
                (
                    r.eps,
                    r.rho,
                    r.rho_predicted,
                    r.osc,
                    r.osc_predicted,
                    r.quarter_tv,
                    r.quarter_tv_predicted,
                )
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        let d = self.inner.domain();
        let kind = match &self.inner {
            bvosc::Signal::Sampled(_) => "sampled",
            bvosc::Signal::Analytic(_) => "analytic",
            bvosc::Signal::Smooth(_) => "smooth",
        };
        format!("Signal({kind}, domain=({}, {}))", d.lo(), d.hi())
    }
}

/// Poincaré quotient of x^s over (0, b): 2s / (1+s)^(2+1/s).
#[pyfunction]
#[pyo3(name = "power_quotient")]
fn py_power_quotient(s: f64) -> PyResult<f64> {
    power_quotient(s).map_err(err)
}

/// phi(a, b) = (f(b)-f(a))/4 - lower-tail term for f = z^s.
#[pyfunction]
#[pyo3(name = "phi")]
fn py_phi(s: f64, a: f64, b: f64) -> PyResult<f64> {
    phi(s, a, b).map_err(err)
}

/// Sign-change roots of 8s = (1+s)^(2+1/s) on [lo, hi].
#[pyfunction]
#[pyo3(signature = (lo, hi, tol = 1e-10))]
fn exponent_roots(lo: f64, hi: f64, tol: f64) -> PyResult<Vec<f64>> {
    exponent_equation_solve(lo, hi, tol).map_err(err)
}

/// F(s) = (2 + 1/s) ln(1+s) - ln(8s).
#[pyfunction]
#[pyo3(name = "exponent_residual")]
fn py_exponent_residual(s: f64) -> f64 {
    exponent_residual(s)
}

/// Max residual of 3 g g'' = (g')^2 for g = a (x - b)^{3/2} on (lo, hi).
#[pyfunction]
#[pyo3(signature = (a, b, lo, hi, probes = 100))]
fn ode_residual(a: f64, b: f64, lo: f64, hi: f64, probes: usize) -> PyResult<f64> {
    ode_family_check(a, b, &interval(lo, hi)?, probes).map_err(err)
}

#[pymodule]
fn bvosc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySignal>()?;
    m.add_class::<IntervalStats>()?;
    m.add_class::<Segment>()?;
    m.add_function(wrap_pyfunction!(py_power_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(py_phi, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_roots, m)?)?;
    m.add_function(wrap_pyfunction!(py_exponent_residual, m)?)?;
    m.add_function(wrap_pyfunction!(ode_residual, m)?)?;
    Ok(())
}
