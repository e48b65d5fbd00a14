use super::SampleSeries;
use crate::{Error, Result};

/// Denominators smaller than this in magnitude count as a pole.
pub(crate) const POLE_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelFamily {
    /// `a·x + b`
    Linear,
    /// `a + b/x`
    Rational1,
    /// `a·x / (x + b)`
    Rational2,
    /// `(a·x + b) / (x + c)`
    Rational3,
    /// `a + b·exp(−c·x)`
    Exponential,
    /// `a + b·ln x`
    Logarithmic,
}

impl ModelFamily {
    pub const ALL: [ModelFamily; 6] = [
        ModelFamily::Linear,
        ModelFamily::Rational1,
        ModelFamily::Rational2,
        ModelFamily::Rational3,
        ModelFamily::Exponential,
        ModelFamily::Logarithmic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelFamily::Linear => "linear",
            ModelFamily::Rational1 => "rational1",
            ModelFamily::Rational2 => "rational2",
            ModelFamily::Rational3 => "rational3",
            ModelFamily::Exponential => "exponential",
            ModelFamily::Logarithmic => "logarithmic",
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            ModelFamily::Rational3 | ModelFamily::Exponential => 3,
            _ => 2,
        }
    }

    /// Value and gradient with respect to `(a, b, c)`, without pole checks.
    pub(crate) fn value_grad(self, x: f64, p: &[f64; 3]) -> (f64, [f64; 3]) {
        let [a, b, c] = *p;
        match self {
            ModelFamily::Linear => (a * x + b, [x, 1.0, 0.0]),
            ModelFamily::Rational1 => (a + b / x, [1.0, 1.0 / x, 0.0]),
            ModelFamily::Rational2 => {
                let d = x + b;
                (a * x / d, [x / d, -a * x / (d * d), 0.0])
            }
            ModelFamily::Rational3 => {
                let d = x + c;
                let v = (a * x + b) / d;
                (v, [x / d, 1.0 / d, -v / d])
            }
            ModelFamily::Exponential => {
                let e = (-c * x).exp();
                (a + b * e, [1.0, e, -b * x * e])
            }
            ModelFamily::Logarithmic => (a + b * x.ln(), [1.0, x.ln(), 0.0]),
        }
    }

    pub(crate) fn value(self, x: f64, p: &[f64; 3]) -> f64 {
        self.value_grad(x, p).0
    }

    /// Denominator whose zero is a pole, if the family has one besides x = 0.
    pub(crate) fn denominator(self, x: f64, p: &[f64; 3]) -> Option<f64> {
        match self {
            ModelFamily::Rational2 => Some(x + p[1]),
            ModelFamily::Rational3 => Some(x + p[2]),
            _ => None,
        }
    }

    /// True when the denominator stays clear of zero on `[lo, hi]`.
    pub(crate) fn pole_free(self, p: &[f64; 3], lo: f64, hi: f64) -> bool {
        let shift = match self {
            ModelFamily::Rational2 => p[1],
            ModelFamily::Rational3 => p[2],
            _ => return p.iter().all(|v| v.is_finite()),
        };
        // x + shift is monotone in x, so it is clear of zero iff both ends
        // lie on the same side by at least POLE_EPS
        let (d_lo, d_hi) = (lo + shift, hi + shift);
        p.iter().all(|v| v.is_finite()) && ((d_lo >= POLE_EPS) || (d_hi <= -POLE_EPS))
    }
}

impl std::fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        ModelFamily::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown model family '{s}'")))
    }
}

/// A fitted (or hand-specified) model. `c` is zero for two-parameter families.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFit {
    pub family: ModelFamily,
    pub params: [f64; 3],
    pub sse: f64,
    pub mae: f64,
    pub limit: f64,
}

impl ModelFit {
    /// Unscored model (`sse` and `mae` are NaN until [`ModelFit::scored`]).
    pub fn new(family: ModelFamily, params: [f64; 3]) -> Self {
        let mut fit = Self {
            family,
            params,
            sse: f64::NAN,
            mae: f64::NAN,
            limit: 0.0,
        };
        fit.limit = model_limit(&fit);
        fit
    }

    /// Fills `sse` and `mae` against `series`.
    pub fn scored(mut self, series: &SampleSeries) -> Self {
        let (sse, abs) = series.points().iter().fold((0.0, 0.0), |(s, a), &(x, y)| {
            let r = self.family.value(x, &self.params) - y;
            (s + r * r, a + r.abs())
        });
        self.sse = sse;
        self.mae = abs / series.len() as f64;
        self
    }

    pub fn a(&self) -> f64 {
        self.params[0]
    }

    pub fn b(&self) -> f64 {
        self.params[1]
    }

    pub fn c(&self) -> f64 {
        self.params[2]
    }
}

pub fn eval_model(fit: &ModelFit, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("model evaluated at x = {x}")));
    }
    if let Some(d) = fit.family.denominator(x, &fit.params) {
        if d.abs() < 1e-12 {
            return Err(Error::Pole { x });
        }
    }
    Ok(fit.family.value(x, &fit.params))
}

/// Mean absolute error over the series points.
pub fn model_mae(fit: &ModelFit, series: &SampleSeries) -> f64 {
    series
        .points()
        .iter()
        .map(|&(x, y)| (y - fit.family.value(x, &fit.params)).abs())
        .sum::<f64>()
        / series.len() as f64
}

/// Value approached as `x → ∞`.
pub fn model_limit(fit: &ModelFit) -> f64 {
    let [a, b, c] = fit.params;
    let unbounded = |slope: f64, flat: f64| {
        if slope > 0.0 {
            f64::INFINITY
        } else if slope < 0.0 {
            f64::NEG_INFINITY
        } else {
            flat
        }
    };
    match fit.family {
        ModelFamily::Rational1 | ModelFamily::Rational2 | ModelFamily::Rational3 => a,
        ModelFamily::Exponential if c > 0.0 => a,
        ModelFamily::Exponential if c == 0.0 => a + b,
        ModelFamily::Exponential => unbounded(b, a),
        ModelFamily::Linear => unbounded(a, b),
        ModelFamily::Logarithmic => unbounded(b, a),
    }
}

/// Speed-up implied by a rational3 wall-clock model:
/// `T̂(1)/T̂(x) = (a′x + b′)/(x + c′)` with `a′ = K/a`, `b′ = K·c/a`,
/// `c′ = b/a`, `K = (a + b)/(1 + c)`.
pub fn rational3_speedup(fit: &ModelFit) -> Result<ModelFit> {
    if fit.family != ModelFamily::Rational3 {
        return Err(Error::InvalidParameter(format!("expected rational3, got {}", fit.family)));
    }
    let [a, b, c] = fit.params;
    if a == 0.0 || 1.0 + c == 0.0 {
        return Err(Error::InvalidParameter("degenerate rational3 model".into()));
    }
    let k = (a + b) / (1.0 + c);
    Ok(ModelFit::new(ModelFamily::Rational3, [k / a, k * c / a, b / a]))
}
