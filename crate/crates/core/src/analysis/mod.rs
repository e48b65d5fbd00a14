//! Performance analysis: speed-up, the six fitted model families, MAE ranking,
//! asymptotic limits and the Kruskal–Wallis test.

mod fit;
mod models;
mod plot;
mod rank;
mod report;
mod stats;

pub use fit::fit_model;
pub use models::{eval_model, model_limit, model_mae, rational3_speedup, ModelFamily, ModelFit};
pub use plot::render_svg;
pub use rank::{rank_models, rank_models_pooled, Ranking};
pub use report::{read_fit_report, write_fit_report, write_predictions, FitReportRow};
pub use stats::{chi_square_sf, kruskal_wallis, significance_marker, KwResult};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    WallClock,
    SpeedUp,
}

impl std::fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SeriesKind::WallClock => "wall-clock",
            SeriesKind::SpeedUp => "speed-up",
        })
    }
}

impl std::str::FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "wallclock" | "wct" | "time" => Ok(SeriesKind::WallClock),
            "speedup" | "su" => Ok(SeriesKind::SpeedUp),
            _ => Err(Error::InvalidParameter(format!("unknown series kind '{s}'"))),
        }
    }
}

/// Response values over core counts, strictly increasing in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSeries {
    points: Vec<(f64, f64)>,
    kind: SeriesKind,
}

impl SampleSeries {
    pub fn new(points: Vec<(f64, f64)>, kind: SeriesKind) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSeries("no points".into()));
        }
        for &(x, y) in &points {
            if !(x > 0.0 && x.is_finite() && x.fract() == 0.0) {
                return Err(Error::InvalidSeries(format!("x = {x} is not a positive integer")));
            }
            if !(y > 0.0 && y.is_finite()) {
                return Err(Error::InvalidSeries(format!("y = {y} at x = {x} is not finite and positive")));
            }
        }
        if !points.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidSeries("x values must be strictly increasing".into()));
        }
        Ok(Self { points, kind })
    }

    /// Pairs `xs[i]` with `ys[i]`.
    pub fn from_xy(xs: &[f64], ys: &[f64], kind: SeriesKind) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidSeries(format!("{} x values but {} y values", xs.len(), ys.len())));
        }
        Self::new(xs.iter().copied().zip(ys.iter().copied()).collect(), kind)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }
}

/// `S_m = T_1 / T_m` for every point; `S_1 = 1` exactly.
pub fn speedup(series: &SampleSeries) -> Result<SampleSeries> {
    let t1 = series
        .points
        .iter()
        .find(|p| p.0 == 1.0)
        .map(|p| p.1)
        .ok_or(Error::NoBaseline)?;
    let points = series
        .points
        .iter()
        .map(|&(x, t)| (x, if x == 1.0 { 1.0 } else { t1 / t }))
        .collect();
    SampleSeries::new(points, SeriesKind::SpeedUp)
}
