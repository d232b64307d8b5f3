use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::signal::analytic::AnalyticSignal;

/// Parameters for [`generate_family`]. `domain` defaults to `(0, 1)`;
/// `exponent` only applies to the `power` kind.
#[derive(Debug, Clone, Copy)]
pub struct FamilyParams {
    pub domain: Interval,
    pub exponent: Option<f64>,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self { domain: Interval::new(0.0, 1.0).unwrap(), exponent: None }
    }
}

impl FamilyParams {
    pub fn on(domain: Interval) -> Self {
        Self { domain, exponent: None }
    }

    pub fn with_exponent(mut self, s: f64) -> Self {
        self.exponent = Some(s);
        self
    }
}

/// Deterministic, seeded test-signal generator.
///
/// Kinds: `random_affine`, `random_centered_jump`, `random_offcenter_jump`,
/// `random_monotone_polynomial`, `random_piecewise_affine`, `power`.
/// The same `(kind, seed, params)` always produces the same signal; the
/// monotone family has a nonnegative derivative by construction (its
/// derivative is a sum of squares).
pub fn generate_family(kind: &str, seed: u64, params: &FamilyParams) -> Result<AnalyticSignal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = params.domain;
    match kind {
        "random_affine" => {
            let mut slope: f64 = rng.random_range(-5.0..5.0);
            if slope.abs() < 0.1 {
                slope += 0.5f64.copysign(slope + f64::MIN_POSITIVE);
            }
            let intercept: f64 = rng.random_range(-5.0..5.0);
            AnalyticSignal::affine(slope, intercept, d)
        }
        "random_centered_jump" => {
            let lo: f64 = rng.random_range(-3.0..3.0);
            let size: f64 = rng.random_range(0.5..4.0);
            AnalyticSignal::jump(d.center(), lo, lo + size, d)
        }
        "random_offcenter_jump" => {
            let t: f64 = rng.random_range(0.1..0.9);
            let lo: f64 = rng.random_range(-3.0..3.0);
            let size: f64 = rng.random_range(0.5..4.0);
            AnalyticSignal::jump(d.lo() + t * d.len(), lo, lo + size, d)
        }
        "random_monotone_polynomial" => {
            // f' (x) = (alpha + beta x)^2 + gamma^2 >= 0, with the root of the
            // linear factor placed inside the domain so the cubic carries
            // visible curvature at every scale.
            let beta: f64 = rng.random_range(1.0..3.0);
            let root = d.lo() + rng.random_range(0.3..0.7) * d.len();
            let alpha = -beta * root;
            let gamma: f64 = rng.random_range(0.2..0.5);
            let c0: f64 = rng.random_range(-2.0..2.0);
            // integrate: c0 + (alpha^2 + gamma^2) x + alpha beta x^2 + beta^2/3 x^3
            AnalyticSignal::polynomial(
                0.0,
                vec![c0, alpha * alpha + gamma * gamma, alpha * beta, beta * beta / 3.0],
                d,
            )
        }
        "random_piecewise_affine" => {
            let n_pieces = rng.random_range(2..=4usize);
            let mut cuts: Vec<f64> = (0..n_pieces - 1)
                .map(|_| d.lo() + rng.random_range(0.15..0.85) * d.len())
                .collect();
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            cuts.dedup();
            let mut edges = vec![d.lo()];
            edges.extend(cuts);
            edges.push(d.hi());
            // Alternating slope signs keep every piece change far from affine.
            let mut slope: f64 = rng.random_range(0.5..3.0);
            let mut value: f64 = rng.random_range(-1.0..1.0);
            let mut pieces = Vec::new();
            for w in edges.windows(2) {
                let piece_domain = Interval::new(w[0], w[1])?;
                let intercept = value - slope * w[0];
                pieces.push(AnalyticSignal::affine(slope, intercept, piece_domain)?);
                value += slope * (w[1] - w[0]);
                slope = -slope.signum() * rng.random_range(0.5..3.0);
            }
            AnalyticSignal::composite(pieces)
        }
        "power" => {
            let s = params.exponent.ok_or(Error::BadExponent(f64::NAN))?;
            AnalyticSignal::power(s, 0.0, 1.0, 0.0, d)
        }
        other => Err(Error::UnknownKind(other.to_string())),
    }
}

/// All kinds accepted by [`generate_family`].
pub const FAMILY_KINDS: [&str; 6] = [
    "random_affine",
    "random_centered_jump",
    "random_offcenter_jump",
    "random_monotone_polynomial",
    "random_piecewise_affine",
    "power",
];
