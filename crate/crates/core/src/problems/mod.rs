//! Benchmark fitness functions: P-PEAKS and the capacitated VRP.

mod cvrp;
mod ppeaks;

pub use cvrp::CvrpInstance;
pub use ppeaks::{hamming, PPeaksInstance};

use rand::RngCore;

use crate::ga::{Genome, OperatorConfig};
use crate::{Error, Result};

/// A minimization problem the GA can search.
///
/// Implementations are immutable after construction and are evaluated
/// concurrently from every island.
pub trait Problem: Sync {
    /// Fitness of a genome produced by [`Problem::random_genome`] or by the
    /// matching operators. Lower is better.
    fn evaluate(&self, genome: &Genome) -> f64;

    fn random_genome(&self, rng: &mut dyn RngCore) -> Genome;

    /// Operator settings used in the reference experiments for this encoding.
    fn default_operators(&self) -> OperatorConfig;
}

/// Either benchmark, for callers that pick the problem at run time.
#[derive(Debug, Clone)]
pub enum AnyProblem {
    PPeaks(PPeaksInstance),
    Cvrp(CvrpInstance),
}

impl Problem for AnyProblem {
    fn evaluate(&self, genome: &Genome) -> f64 {
        match self {
            AnyProblem::PPeaks(p) => p.evaluate(genome),
            AnyProblem::Cvrp(c) => c.evaluate(genome),
        }
    }

    fn random_genome(&self, rng: &mut dyn RngCore) -> Genome {
        match self {
            AnyProblem::PPeaks(p) => p.random_genome(rng),
            AnyProblem::Cvrp(c) => c.random_genome(rng),
        }
    }

    fn default_operators(&self) -> OperatorConfig {
        match self {
            AnyProblem::PPeaks(p) => p.default_operators(),
            AnyProblem::Cvrp(c) => c.default_operators(),
        }
    }
}

/// Benchmark identifiers with known termination thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemId {
    PPeaks,
    Vrp1,
    Vrp2,
}

impl std::str::FromStr for ProblemId {
    type Err = Error;

    /// Accepts ids such as `ppeaks`, `P-PEAKS 20-100`, `ppeaks-200-1000`,
    /// `vrp1`, `VRP2`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        if key.starts_with("ppeaks") && key[6..].chars().all(|c| c.is_ascii_digit()) {
            Ok(ProblemId::PPeaks)
        } else if key == "vrp1" {
            Ok(ProblemId::Vrp1)
        } else if key == "vrp2" {
            Ok(ProblemId::Vrp2)
        } else {
            Err(Error::UnknownProblem(s.to_string()))
        }
    }
}

impl ProblemId {
    pub fn termination_target(self) -> f64 {
        match self {
            ProblemId::PPeaks => 0.0,
            ProblemId::Vrp1 => 650.0,
            ProblemId::Vrp2 => 900.0,
        }
    }

    pub fn best_known_cost(self) -> f64 {
        match self {
            ProblemId::PPeaks => 0.0,
            ProblemId::Vrp1 => 524.61,
            ProblemId::Vrp2 => 835.26,
        }
    }
}

/// Fitness threshold that ends a run for the named benchmark.
pub fn termination_target(problem_id: &str) -> Result<f64> {
    problem_id.parse::<ProblemId>().map(ProblemId::termination_target)
}
