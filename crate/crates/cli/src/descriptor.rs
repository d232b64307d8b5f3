//! JSON signal descriptors. The schema mirrors the closed-form signal
//! variants with explicit `type` tags, plus a `sampled` form for grids, so
//! fixtures are self-describing:
//!
//! ```json
//! {"type": "affine", "slope": 3.0, "intercept": 1.0, "domain": [0.0, 1.0]}
//! {"type": "jump", "location": 0.5, "left": 0.0, "right": 1.0, "domain": [0.0, 1.0]}
//! {"type": "power", "exponent": 2.5, "shift": 0.0, "scale": 1.0, "offset": 0.0, "domain": [0.1, 2.0]}
//! {"type": "polynomial", "center": 0.0, "coefficients": [0.0, 0.0, 1.0], "domain": [-1.0, 1.0]}
//! {"type": "composite", "pieces": [ ... ]}
//! {"type": "sampled", "grid": [...], "values": [...], "mode": "pl"}
//! ```

use bvosc::{AnalyticSignal, Interpolation, Interval, SampledSignal, Signal};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SignalDescriptor {
    Affine {
        slope: f64,
        intercept: f64,
        domain: [f64; 2],
    },
    Jump {
        location: f64,
        left: f64,
        right: f64,
        domain: [f64; 2],
    },
    Power {
        exponent: f64,
        #[serde(default)]
        shift: f64,
        #[serde(default = "one")]
        scale: f64,
        #[serde(default)]
        offset: f64,
        domain: [f64; 2],
    },
    Polynomial {
        #[serde(default)]
        center: f64,
        coefficients: Vec<f64>,
        domain: [f64; 2],
    },
    Composite {
        pieces: Vec<SignalDescriptor>,
    },
    Sampled {
        grid: Vec<f64>,
        values: Vec<f64>,
        #[serde(default = "pl")]
        mode: Mode,
    },
}

fn one() -> f64 {
    1.0
}

fn pl() -> Mode {
    Mode::Pl
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "pl", alias = "piecewise-linear")]
    Pl,
    #[serde(rename = "pc", alias = "piecewise-constant")]
    Pc,
}

impl From<Mode> for Interpolation {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Pl => Interpolation::PiecewiseLinear,
            Mode::Pc => Interpolation::PiecewiseConstant,
        }
    }
}

fn interval(d: [f64; 2]) -> CliResult<Interval> {
    Interval::new(d[0], d[1]).map_err(CliError::input)
}

fn analytic(desc: &SignalDescriptor) -> CliResult<AnalyticSignal> {
    match desc {
        SignalDescriptor::Affine { slope, intercept, domain } => {
            AnalyticSignal::affine(*slope, *intercept, interval(*domain)?).map_err(CliError::input)
        }
        SignalDescriptor::Jump { location, left, right, domain } => {
            AnalyticSignal::jump(*location, *left, *right, interval(*domain)?)
                .map_err(CliError::input)
        }
        SignalDescriptor::Power { exponent, shift, scale, offset, domain } => {
            AnalyticSignal::power(*exponent, *shift, *scale, *offset, interval(*domain)?)
                .map_err(CliError::input)
        }
        SignalDescriptor::Polynomial { center, coefficients, domain } => {
            AnalyticSignal::polynomial(*center, coefficients.clone(), interval(*domain)?)
                .map_err(CliError::input)
        }
        SignalDescriptor::Composite { pieces } => {
            let pieces: Vec<AnalyticSignal> =
                pieces.iter().map(analytic).collect::<CliResult<_>>()?;
            AnalyticSignal::composite(pieces).map_err(CliError::input)
        }
        SignalDescriptor::Sampled { .. } => {
            Err(CliError::Input("sampled descriptor cannot nest inside composite".into()))
        }
    }
}

impl SignalDescriptor {
    pub fn into_signal(self) -> CliResult<Signal> {
        match self {
            SignalDescriptor::Sampled { grid, values, mode } => {
                let s = SampledSignal::new(grid, values, mode.into()).map_err(CliError::input)?;
                Ok(Signal::Sampled(s))
            }
            other => Ok(Signal::Analytic(analytic(&other)?)),
        }
    }
}

/// Parse a descriptor given either inline JSON (leading `{`) or a path.
pub fn load(arg: &str) -> CliResult<Signal> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))?
    };
    let desc: SignalDescriptor = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("bad signal descriptor: {e}")))?;
    desc.into_signal()
}
