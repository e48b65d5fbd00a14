//! Distributed island runtime: asynchronous uni-directional ring migration
//! between steady-state islands, global termination and effort accounting.

mod island;
mod runtime;

pub use island::{accept_migrant, ring_successor, select_migrant, Island, IslandSummary, MigrantMessage};
pub use runtime::{run_distributed, run_island, RunOutcome, RunRecord, Schedule};

use crate::ga::OperatorConfig;
use crate::{Error, Result};

/// Default safety cap on total evaluations per run.
pub const DEFAULT_MAX_EVALUATIONS: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct IslandConfig {
    pub island_count: usize,
    pub pop_size: usize,
    /// Local evaluations between migrant sends; `None` disables migration.
    pub migration_gap: Option<u64>,
    pub operators: OperatorConfig,
    /// A run stops once any island's best fitness is `<=` this value.
    pub termination_target: f64,
    /// Total budget across islands; each island gets an equal share.
    pub max_evaluations: u64,
    /// Whether the initial population evaluations are counted in totals.
    pub count_initial_evaluations: bool,
}

impl Default for IslandConfig {
    fn default() -> Self {
        Self {
            island_count: 64,
            pop_size: 16,
            migration_gap: Some(16),
            operators: OperatorConfig::binary(),
            termination_target: 0.0,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            count_initial_evaluations: true,
        }
    }
}

impl IslandConfig {
    pub fn validate(&self) -> Result<()> {
        if self.island_count < 1 {
            return Err(Error::InvalidParameter("island_count must be >= 1".into()));
        }
        if self.pop_size < 2 {
            return Err(Error::InvalidParameter("pop_size must be >= 2".into()));
        }
        if self.migration_gap == Some(0) {
            return Err(Error::InvalidParameter("migration gap must be >= 1".into()));
        }
        if self.max_evaluations == 0 {
            return Err(Error::InvalidParameter("max_evaluations must be positive".into()));
        }
        self.operators.validate()
    }

    /// Evaluation budget of a single island.
    pub(crate) fn island_budget(&self) -> u64 {
        self.max_evaluations.div_ceil(self.island_count as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_reference_settings() {
        let cfg = IslandConfig::default();
        assert_eq!(cfg.island_count, 64);
        assert_eq!(cfg.pop_size, 16);
        assert_eq!(cfg.max_evaluations, 50_000_000);
        cfg.validate().unwrap();
    }

    #[test]
    fn validation() {
        let bad = [
            IslandConfig { island_count: 0, ..Default::default() },
            IslandConfig { pop_size: 1, ..Default::default() },
            IslandConfig { migration_gap: Some(0), ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err());
        }
        assert!(IslandConfig { migration_gap: None, ..Default::default() }.validate().is_ok());
    }
}
