use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interval::Interval;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A smooth signal given by value and derivative closures.
///
/// The closed-form variants cover the polynomial and power-law families;
/// this adapter admits everything else (exponentials, trig, ...) into the
/// same functional machinery. Integrals fall back to Gauss-Legendre
/// quadrature and level crossings to bisection, both accurate to near
/// machine precision for smooth integrands.
#[derive(Clone)]
pub struct SmoothSignal {
    name: String,
    f: RealFn,
    df: RealFn,
    /// Derivatives of order 2 and up, when the closed form provides them.
    higher: Vec<RealFn>,
    domain: Interval,
}

impl SmoothSignal {
    pub fn new<F, G>(name: &str, domain: Interval, f: F, df: G) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.to_string(), f: Arc::new(f), df: Arc::new(df), higher: Vec::new(), domain }
    }

    /// Attach closures for the second and further derivatives; the Taylor
    /// machinery then differentiates exactly instead of fitting.
    pub fn with_higher_derivatives(
        mut self,
        derivatives: Vec<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
    ) -> Self {
        self.higher = derivatives.into_iter().map(Arc::from).collect();
        self
    }

    /// `a * e^(rate x) + c` with exact derivatives of every order.
    pub fn exp(rate: f64, scale: f64, offset: f64, domain: Interval) -> Self {
        let deriv = |order: i32| {
            move |x: f64| scale * rate.powi(order) * (rate * x).exp()
        };
        Self::new(
            "exp",
            domain,
            move |x| scale * (rate * x).exp() + offset,
            deriv(1),
        )
        .with_higher_derivatives(vec![
            Box::new(deriv(2)),
            Box::new(deriv(3)),
            Box::new(deriv(4)),
        ])
    }

    /// `j!`-normalized `j`-th derivative when available in closed form.
    pub(crate) fn taylor_coefficient(&self, x: f64, j: u32) -> Option<f64> {
        let raw = match j {
            0 => (self.f)(x),
            1 => (self.df)(x),
            _ => (self.higher.get(j as usize - 2)?)(x),
        };
        let mut fact = 1.0;
        for k in 2..=j {
            fact *= k as f64;
        }
        Some(raw / fact)
    }

    pub(crate) fn taylor_order_available(&self) -> u32 {
        1 + self.higher.len() as u32
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain { x, domain: self.domain });
        }
        Ok((self.f)(x))
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain { x, domain: self.domain });
        }
        Ok((self.df)(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub(crate) fn derivative_unchecked(&self, x: f64) -> f64 {
        (self.df)(x)
    }

    /// Conjugation composes the closures; the family is closed under it.
    pub fn conjugate(&self, l_scale: f64, l_offset: f64, f_scale: f64, f_offset: f64) -> Result<Self> {
        if l_scale == 0.0 || f_scale == 0.0 {
            return Err(Error::DegenerateMap);
        }
        let a = self.domain.lo();
        let b = self.domain.hi();
        let (lo, hi) = {
            let p = (a - f_offset) / f_scale;
            let q = (b - f_offset) / f_scale;
            (p.min(q), p.max(q))
        };
        let f = self.f.clone();
        let df = self.df.clone();
        let higher = self
            .higher
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let d = d.clone();
                let order = k as i32 + 2;
                Arc::new(move |x: f64| l_scale * d(f_scale * x + f_offset) * f_scale.powi(order))
                    as RealFn
            })
            .collect();
        Ok(Self {
            name: format!("conj({})", self.name),
            f: Arc::new(move |x| l_scale * f(f_scale * x + f_offset) + l_offset),
            df: Arc::new(move |x| l_scale * df(f_scale * x + f_offset) * f_scale),
            higher,
            domain: Interval::new(lo, hi)?,
        })
    }
}

impl fmt::Debug for SmoothSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothSignal")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish()
    }
}
