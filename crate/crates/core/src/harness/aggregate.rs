use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::islands::RunRecord;
use crate::{Error, Result};

/// Median and spread of one `(problem, gap, workers)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub problem: String,
    pub gap: Option<u64>,
    pub workers: usize,
    pub median_wall_ms: f64,
    pub stdv_wall_ms: f64,
    pub median_evals: f64,
    pub stdv_evals: f64,
    pub success_rate: f64,
}

/// Middle order statistic; the mean of the two middle values for even counts.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidSeries("median of an empty group".into()));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Ok(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

/// Divide-by-n standard deviation.
pub fn population_stdv(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidSeries("stdv of an empty group".into()));
    }
    // sorted summation keeps the result independent of record order
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    Ok(var.sqrt())
}

/// One row per `(problem, gap, workers)`, ordered by problem, gap
/// (no-migration first), then workers.
pub fn aggregate(records: &[RunRecord]) -> Result<Vec<AggregateRow>> {
    let mut groups: BTreeMap<(String, Option<u64>, usize), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.problem.clone(), r.gap, r.workers))
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .map(|((problem, gap, workers), rs)| {
            let wall: Vec<f64> = rs.iter().map(|r| r.wall_ms).collect();
            let evals: Vec<f64> = rs.iter().map(|r| r.evals as f64).collect();
            let hits = rs.iter().filter(|r| r.hit_target).count();
            Ok(AggregateRow {
                problem,
                gap,
                workers,
                median_wall_ms: median(&wall)?,
                stdv_wall_ms: population_stdv(&wall)?,
                median_evals: median(&evals)?,
                stdv_evals: population_stdv(&evals)?,
                success_rate: hits as f64 / rs.len() as f64,
            })
        })
        .collect()
}
