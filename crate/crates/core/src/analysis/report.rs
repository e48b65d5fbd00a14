use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{ModelFit, SampleSeries, SeriesKind};
use crate::Result;

/// One line of the fit report CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReportRow {
    pub problem: String,
    pub kind: String,
    pub gap: Option<u64>,
    pub family: String,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub sse: f64,
    pub mae: f64,
    pub limit: f64,
}

impl FitReportRow {
    pub fn new(problem: &str, kind: SeriesKind, gap: Option<u64>, fit: &ModelFit) -> Self {
        Self {
            problem: problem.to_string(),
            kind: kind.to_string(),
            gap,
            family: fit.family.name().to_string(),
            a: fit.params[0],
            b: fit.params[1],
            c: fit.params[2],
            sse: fit.sse,
            mae: fit.mae,
            limit: fit.limit,
        }
    }
}

pub fn write_fit_report<W: Write>(out: W, rows: &[FitReportRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_fit_report<R: Read>(input: R) -> Result<Vec<FitReportRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Into::into))
        .collect()
}

/// Writes `x,y_real,y_pred,family` rows (plus `y_ideal = x` for speed-up
/// series), one block per fit.
pub fn write_predictions<W: Write>(out: W, series: &SampleSeries, fits: &[ModelFit]) -> Result<()> {
    let ideal = series.kind() == SeriesKind::SpeedUp;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["x", "y_real", "y_pred", "family"];
    if ideal {
        header.push("y_ideal");
    }
    w.write_record(&header)?;
    for fit in fits {
        for &(x, y) in series.points() {
            let pred = fit.family.value(x, &fit.params);
            let mut row = vec![x.to_string(), y.to_string(), pred.to_string(), fit.family.name().to_string()];
            if ideal {
                row.push(x.to_string());
            }
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}
