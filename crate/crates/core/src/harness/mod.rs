//! Factorial experiment driver: migration gaps × worker counts × repetitions,
//! median/stdv aggregation and CSV persistence.

mod aggregate;
mod config;
mod io;

pub use aggregate::{aggregate, median, population_stdv, AggregateRow};
pub use config::{default_worker_counts, host_parallelism, ExperimentConfig, InstanceSource};
pub use io::{read_aggregates, read_records, write_aggregates, write_records, RecordWriter};

use crate::islands::{run_distributed, RunRecord};
use crate::problems::AnyProblem;
use crate::Result;

/// One (gap, workers) cell that could not be executed.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedRun {
    pub gap: Option<u64>,
    pub workers: usize,
    pub rep: u32,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SuiteEvent {
    Completed(RunRecord),
    Skipped(SkippedRun),
}

/// Executes every `(gap, workers, rep)` combination in that nesting order,
/// one run at a time, passing each result to `sink` as soon as it finishes.
///
/// Repetition `r` always uses seed `base_seed + r`, so every gap/worker
/// setting sees the same seeds. Infeasible worker counts are reported as
/// [`SuiteEvent::Skipped`]; any other run error aborts the suite, as does an
/// error returned by the sink.
pub fn run_suite<F>(cfg: &ExperimentConfig, problem: &AnyProblem, mut sink: F) -> Result<()>
where
    F: FnMut(SuiteEvent) -> Result<()>,
{
    cfg.validate()?;
    let host = host_parallelism();
    for &gap in &cfg.gaps {
        let island_cfg = cfg.island_config(gap);
        for &workers in &cfg.worker_counts {
            for rep in 0..cfg.repetitions {
                let seed = cfg.base_seed.wrapping_add(rep as u64);
                if workers > island_cfg.island_count {
                    sink(SuiteEvent::Skipped(SkippedRun {
                        gap,
                        workers,
                        rep,
                        reason: format!("{workers} workers > {} islands", island_cfg.island_count),
                    }))?;
                    continue;
                }
                let outcome = run_distributed(&island_cfg, workers, problem, seed, cfg.schedule)?;
                let mut record = outcome.to_record(&cfg.problem, &island_cfg, workers, rep, seed);
                record.oversubscribed = workers > host;
                sink(SuiteEvent::Completed(record))?;
            }
        }
    }
    Ok(())
}

/// Convenience wrapper collecting completed records and skips.
pub fn run_suite_collect(cfg: &ExperimentConfig, problem: &AnyProblem) -> Result<(Vec<RunRecord>, Vec<SkippedRun>)> {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    run_suite(cfg, problem, |ev| {
        match ev {
            SuiteEvent::Completed(r) => records.push(r),
            SuiteEvent::Skipped(s) => skipped.push(s),
        }
        Ok(())
    })?;
    Ok((records, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::islands::Schedule;

    fn tiny(gaps: Vec<Option<u64>>, workers: Vec<usize>, reps: u32) -> ExperimentConfig {
        ExperimentConfig {
            problem: "ppeaks".into(),
            instance: InstanceSource::PPeaks { peaks: 4, bits: 24, seed: 1 },
            gaps,
            worker_counts: workers,
            repetitions: reps,
            base_seed: 100,
            island_count: 4,
            pop_size: 4,
            schedule: Schedule::Deterministic,
            ..Default::default()
        }
    }

    #[test]
    fn seed_schedule() {
        let cfg = tiny(vec![Some(16)], vec![1], 3);
        let problem = cfg.load_problem().unwrap();
        let (records, skipped) = run_suite_collect(&cfg, &problem).unwrap();
        assert!(skipped.is_empty());
        let seeds: Vec<u64> = records.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, vec![100, 101, 102]);
    }

    #[test]
    fn cartesian_count_and_replay() {
        let cfg = tiny(vec![Some(16), Some(256)], vec![1, 4], 2);
        let problem = cfg.load_problem().unwrap();
        let (a, _) = run_suite_collect(&cfg, &problem).unwrap();
        assert_eq!(a.len(), 8);
        let (b, _) = run_suite_collect(&cfg, &problem).unwrap();
        let evals = |rs: &[RunRecord]| rs.iter().map(|r| r.evals).collect::<Vec<_>>();
        assert_eq!(evals(&a), evals(&b));
        // same rep seed across settings
        assert!(a.iter().filter(|r| r.rep == 1).all(|r| r.seed == 101));
    }

    #[test]
    fn infeasible_worker_count_is_skipped() {
        let cfg = tiny(vec![Some(16)], vec![1, 8], 2);
        let problem = cfg.load_problem().unwrap();
        let (records, skipped) = run_suite_collect(&cfg, &problem).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(skipped.len(), 2);
        assert_eq!(skipped[0].workers, 8);
    }
}
