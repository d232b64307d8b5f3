use crate::error::{Error, Result};
use crate::interval::Interval;

/// An invertible affine change of variable `x -> scale * x + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    scale: f64,
    offset: f64,
}

impl AffineMap {
    pub fn new(scale: f64, offset: f64) -> Result<Self> {
        if scale == 0.0 || !scale.is_finite() || !offset.is_finite() {
            return Err(Error::DegenerateMap);
        }
        Ok(Self { scale, offset })
    }

    pub fn identity() -> Self {
        Self { scale: 1.0, offset: 0.0 }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn apply(&self, x: f64) -> f64 {
        self.scale * x + self.offset
    }

    pub fn inverse(&self) -> Self {
        Self { scale: 1.0 / self.scale, offset: -self.offset / self.scale }
    }

    /// Image of an interval, endpoints re-ordered when the scale is negative.
    pub fn map_interval(&self, i: &Interval) -> Interval {
        let a = self.apply(i.lo());
        let b = self.apply(i.hi());
        Interval::new(a.min(b), a.max(b)).expect("affine image of a proper interval is proper")
    }
}

/// The closed-form variants.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticKind {
    /// `f(x) = slope * x + intercept`.
    Affine { slope: f64, intercept: f64 },
    /// `left_value` for `x < location`, `right_value` for `x >= location`
    /// (right-continuous at the jump).
    Jump { location: f64, left_value: f64, right_value: f64 },
    /// `f(x) = scale * sgn(x - shift) * |x - shift|^exponent + offset`.
    ///
    /// The odd-power convention keeps the function monotone on either side
    /// of the branch point; the branch point itself must not lie strictly
    /// inside the domain.
    Power { exponent: f64, shift: f64, scale: f64, offset: f64 },
    /// `f(x) = sum_j coefficients[j] * (x - center)^j`.
    Polynomial { center: f64, coefficients: Vec<f64> },
    /// Ordered pieces on abutting subdomains tiling the parent domain.
    Composite(Vec<AnalyticSignal>),
}

/// A signal given in closed form on an explicit domain.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSignal {
    kind: AnalyticKind,
    domain: Interval,
}

impl AnalyticSignal {
    pub fn new(kind: AnalyticKind, domain: Interval) -> Result<Self> {
        match &kind {
            AnalyticKind::Affine { slope, intercept } => {
                if !slope.is_finite() || !intercept.is_finite() {
                    return Err(Error::InvalidSignal("affine parameters must be finite".into()));
                }
            }
            AnalyticKind::Jump { location, left_value, right_value } => {
                if !(domain.lo() < *location && *location < domain.hi()) {
                    return Err(Error::InvalidSignal(format!(
                        "jump location {location} must lie strictly inside {domain}"
                    )));
                }
                if !left_value.is_finite() || !right_value.is_finite() {
                    return Err(Error::InvalidSignal("jump values must be finite".into()));
                }
            }
            AnalyticKind::Power { exponent, shift, .. } => {
                if *exponent <= 0.0 || !exponent.is_finite() {
                    return Err(Error::BadExponent(*exponent));
                }
                // (x - shift) must keep one sign over the domain.
                if *shift > domain.lo() && *shift < domain.hi() {
                    return Err(Error::BadBranch { b: *shift, lo: domain.lo() });
                }
            }
            AnalyticKind::Polynomial { coefficients, .. } => {
                if coefficients.is_empty() {
                    return Err(Error::InvalidSignal(
                        "polynomial needs at least one coefficient".into(),
                    ));
                }
            }
            AnalyticKind::Composite(pieces) => {
                if pieces.is_empty() {
                    return Err(Error::InvalidSignal("composite needs at least one piece".into()));
                }
                if pieces[0].domain.lo() != domain.lo()
                    || pieces.last().unwrap().domain.hi() != domain.hi()
                {
                    return Err(Error::InvalidSignal(
                        "composite pieces must span the declared domain".into(),
                    ));
                }
                for w in pieces.windows(2) {
                    if w[0].domain.hi() != w[1].domain.lo() {
                        return Err(Error::InvalidSignal(format!(
                            "composite pieces must abut: {} then {}",
                            w[0].domain, w[1].domain
                        )));
                    }
                }
            }
        }
        Ok(Self { kind, domain })
    }

    pub fn affine(slope: f64, intercept: f64, domain: Interval) -> Result<Self> {
        Self::new(AnalyticKind::Affine { slope, intercept }, domain)
    }

    pub fn jump(location: f64, left_value: f64, right_value: f64, domain: Interval) -> Result<Self> {
        Self::new(AnalyticKind::Jump { location, left_value, right_value }, domain)
    }

    pub fn power(exponent: f64, shift: f64, scale: f64, offset: f64, domain: Interval) -> Result<Self> {
        Self::new(AnalyticKind::Power { exponent, shift, scale, offset }, domain)
    }

    pub fn polynomial(center: f64, coefficients: Vec<f64>, domain: Interval) -> Result<Self> {
        Self::new(AnalyticKind::Polynomial { center, coefficients }, domain)
    }

    pub fn composite(pieces: Vec<AnalyticSignal>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidSignal("composite needs at least one piece".into()));
        }
        let domain = Interval::new(pieces[0].domain.lo(), pieces.last().unwrap().domain.hi())?;
        Self::new(AnalyticKind::Composite(pieces), domain)
    }

    pub fn kind(&self) -> &AnalyticKind {
        &self.kind
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Evaluate without the domain check (used internally on clipped
    /// subintervals whose endpoints may sit on the boundary).
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        match &self.kind {
            AnalyticKind::Affine { slope, intercept } => slope * x + intercept,
            AnalyticKind::Jump { location, left_value, right_value } => {
                if x < *location {
                    *left_value
                } else {
                    *right_value
                }
            }
            AnalyticKind::Power { exponent, shift, scale, offset } => {
                scale * signed_pow(x - shift, *exponent) + offset
            }
            AnalyticKind::Polynomial { center, coefficients } => {
                horner(coefficients, x - center)
            }
            AnalyticKind::Composite(pieces) => {
                // Right-continuous at junctions: the piece whose half-open
                // domain [lo, hi) contains x, the last piece closing at hi.
                let idx = pieces
                    .partition_point(|p| p.domain.hi() <= x)
                    .min(pieces.len() - 1);
                pieces[idx].eval_unchecked(x)
            }
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain { x, domain: self.domain });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Pointwise derivative. Jumps differentiate to 0 away from the jump
    /// (and, by the right-continuity convention, at it).
    pub fn derivative(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain { x, domain: self.domain });
        }
        Ok(self.derivative_unchecked(x))
    }

    pub(crate) fn derivative_unchecked(&self, x: f64) -> f64 {
        match &self.kind {
            AnalyticKind::Affine { slope, .. } => *slope,
            AnalyticKind::Jump { .. } => 0.0,
            AnalyticKind::Power { exponent, shift, scale, .. } => {
                scale * exponent * (x - shift).abs().powf(exponent - 1.0)
            }
            AnalyticKind::Polynomial { center, coefficients } => {
                horner_derivative(coefficients, x - center)
            }
            AnalyticKind::Composite(pieces) => {
                let idx = pieces
                    .partition_point(|p| p.domain.hi() <= x)
                    .min(pieces.len() - 1);
                pieces[idx].derivative_unchecked(x)
            }
        }
    }

    /// `j!`-normalized `j`-th derivative, available in closed form for every
    /// variant. Used by the Taylor machinery where least-squares fitting
    /// would drown the higher coefficients in rounding noise.
    pub(crate) fn taylor_coefficient(&self, x: f64, j: u32) -> f64 {
        match &self.kind {
            AnalyticKind::Affine { slope, intercept } => match j {
                0 => slope * x + intercept,
                1 => *slope,
                _ => 0.0,
            },
            AnalyticKind::Jump { location, left_value, right_value } => match j {
                0 => {
                    if x < *location {
                        *left_value
                    } else {
                        *right_value
                    }
                }
                _ => 0.0,
            },
            AnalyticKind::Power { exponent, shift, scale, offset } => {
                let u = x - shift;
                if j == 0 {
                    return scale * signed_pow(u, *exponent) + offset;
                }
                // d^j/dx^j [sgn(u)|u|^s] = s(s-1)...(s-j+1) sgn(u)^{1-j?}...
                // On a one-signed branch the odd extension is smooth and the
                // falling-factorial rule applies with the sign of u^ (s-j).
                let mut c = 1.0;
                for k in 0..j {
                    c *= exponent - k as f64;
                }
                let mag = u.abs().powf(exponent - j as f64);
                let sgn = if u >= 0.0 { 1.0 } else { (-1.0f64).powi(1 - j as i32) };
                let mut fact = 1.0;
                for k in 2..=j {
                    fact *= k as f64;
                }
                scale * c * sgn * mag / fact
            }
            AnalyticKind::Polynomial { center, coefficients } => {
                // Coefficients of the expansion about x via repeated synthetic
                // division (exact for polynomials).
                let mut work = coefficients.clone();
                let t = x - center;
                let mut out = 0.0;
                for step in 0..=j {
                    if work.is_empty() {
                        return 0.0;
                    }
                    let mut rem = 0.0;
                    for c in work.iter().rev() {
                        rem = rem * t + c;
                    }
                    if step == j {
                        out = rem;
                        break;
                    }
                    // divide by (u - t): quotient coefficients
                    let mut quot = vec![0.0; work.len().saturating_sub(1)];
                    let mut carry = 0.0;
                    for i in (1..work.len()).rev() {
                        carry = work[i] + carry * t;
                        quot[i - 1] = carry;
                    }
                    work = quot;
                }
                out
            }
            AnalyticKind::Composite(pieces) => {
                let idx = pieces
                    .partition_point(|p| p.domain.hi() <= x)
                    .min(pieces.len() - 1);
                pieces[idx].taylor_coefficient(x, j)
            }
        }
    }

    /// The conjugate `x -> L(f(F(x)))` stays inside the analytic family.
    pub fn conjugate(&self, l: &AffineMap, f_map: &AffineMap) -> Result<AnalyticSignal> {
        let new_domain = f_map.inverse().map_interval(&self.domain);
        let kind = match &self.kind {
            AnalyticKind::Affine { slope, intercept } => AnalyticKind::Affine {
                slope: l.scale() * slope * f_map.scale(),
                intercept: l.scale() * (slope * f_map.offset() + intercept) + l.offset(),
            },
            AnalyticKind::Jump { location, left_value, right_value } => {
                let loc = f_map.inverse().apply(*location);
                let (lv, rv) = if f_map.scale() > 0.0 {
                    (*left_value, *right_value)
                } else {
                    (*right_value, *left_value)
                };
                AnalyticKind::Jump {
                    location: loc,
                    left_value: l.scale() * lv + l.offset(),
                    right_value: l.scale() * rv + l.offset(),
                }
            }
            AnalyticKind::Power { exponent, shift, scale, offset } => AnalyticKind::Power {
                exponent: *exponent,
                shift: f_map.inverse().apply(*shift),
                scale: l.scale()
                    * scale
                    * f_map.scale().signum()
                    * f_map.scale().abs().powf(*exponent),
                offset: l.scale() * offset + l.offset(),
            },
            AnalyticKind::Polynomial { center, coefficients } => {
                let mut coeffs: Vec<f64> = coefficients
                    .iter()
                    .enumerate()
                    .map(|(j, c)| l.scale() * c * f_map.scale().powi(j as i32))
                    .collect();
                coeffs[0] += l.offset();
                AnalyticKind::Polynomial { center: f_map.inverse().apply(*center), coefficients: coeffs }
            }
            AnalyticKind::Composite(pieces) => {
                let mut new_pieces: Vec<AnalyticSignal> =
                    pieces.iter().map(|p| p.conjugate(l, f_map)).collect::<Result<_>>()?;
                if f_map.scale() < 0.0 {
                    new_pieces.reverse();
                }
                AnalyticKind::Composite(new_pieces)
            }
        };
        AnalyticSignal::new(kind, new_domain)
    }
}

/// `sgn(u) * |u|^s`, the odd extension of the power law.
pub(crate) fn signed_pow(u: f64, s: f64) -> f64 {
    if u >= 0.0 {
        u.powf(s)
    } else {
        -(-u).powf(s)
    }
}

/// Inverse of [`signed_pow`]: `sgn(w) * |w|^{1/s}`.
pub(crate) fn signed_pow_inv(w: f64, s: f64) -> f64 {
    signed_pow(w, 1.0 / s)
}

pub(crate) fn horner(coefficients: &[f64], t: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

pub(crate) fn horner_derivative(coefficients: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for (j, c) in coefficients.iter().enumerate().skip(1).rev() {
        acc = acc * t + j as f64 * c;
    }
    acc
}
