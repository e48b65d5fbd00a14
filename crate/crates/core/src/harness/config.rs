use std::path::{Path, PathBuf};

use crate::ga::OperatorConfig;
use crate::islands::{IslandConfig, Schedule, DEFAULT_MAX_EVALUATIONS};
use crate::problems::{AnyProblem, CvrpInstance, PPeaksInstance, ProblemId};
use crate::{Error, Result};

pub const DEFAULT_GAPS: [u64; 5] = [16, 32, 64, 128, 256];
const WORKER_LADDER: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];

/// Where the benchmark instance comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    /// Generate P-PEAKS on the fly.
    PPeaks { peaks: usize, bits: usize, seed: u64 },
    /// P-PEAKS audit dump written by `generate`.
    PPeaksFile(PathBuf),
    /// TSPLIB-style CVRP file.
    CvrpFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Label written to every record; also selects the termination target.
    pub problem: String,
    pub instance: InstanceSource,
    /// `None` entries run without migration.
    pub gaps: Vec<Option<u64>>,
    pub worker_counts: Vec<usize>,
    pub repetitions: u32,
    pub base_seed: u64,
    pub island_count: usize,
    pub pop_size: usize,
    /// Overrides the per-problem operator defaults when set.
    pub operators: Option<OperatorConfig>,
    /// Overrides the per-problem termination target when set.
    pub target: Option<f64>,
    pub max_evaluations: u64,
    pub schedule: Schedule,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: "ppeaks-20-100".into(),
            instance: InstanceSource::PPeaks {
                peaks: 20,
                bits: 100,
                seed: 0,
            },
            gaps: DEFAULT_GAPS.iter().map(|&g| Some(g)).collect(),
            worker_counts: default_worker_counts(host_parallelism()),
            repetitions: 30,
            base_seed: 0,
            island_count: 64,
            pop_size: 16,
            operators: None,
            target: None,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            schedule: Schedule::Threaded,
        }
    }
}

/// Number of parallel execution units on this host.
pub fn host_parallelism() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// `{1, 2, 4, …, 64}` truncated to values `<= cap` (always keeps 1).
pub fn default_worker_counts(cap: usize) -> Vec<usize> {
    WORKER_LADDER.iter().copied().filter(|&w| w == 1 || w <= cap).collect()
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        if self.repetitions < 1 {
            return bad("repetitions must be >= 1");
        }
        if self.gaps.is_empty() {
            return bad("gaps must not be empty");
        }
        if self.worker_counts.first() != Some(&1) {
            return bad("worker counts must start at 1");
        }
        if !self.worker_counts.windows(2).all(|w| w[0] < w[1]) {
            return bad("worker counts must be strictly ascending");
        }
        self.problem_id()?;
        self.island_config(self.gaps[0]).validate()
    }

    pub fn problem_id(&self) -> Result<ProblemId> {
        self.problem.parse()
    }

    pub fn island_config(&self, gap: Option<u64>) -> IslandConfig {
        let id = self.problem_id().unwrap_or(ProblemId::PPeaks);
        let operators = self.operators.unwrap_or_else(|| match id {
            ProblemId::PPeaks => OperatorConfig::binary(),
            ProblemId::Vrp1 | ProblemId::Vrp2 => OperatorConfig::permutation(),
        });
        IslandConfig {
            island_count: self.island_count,
            pop_size: self.pop_size,
            migration_gap: gap,
            operators,
            termination_target: self.target.unwrap_or_else(|| id.termination_target()),
            max_evaluations: self.max_evaluations,
            count_initial_evaluations: true,
        }
    }

    /// Loads or generates the instance. Not part of any timed region.
    pub fn load_problem(&self) -> Result<AnyProblem> {
        Ok(match &self.instance {
            InstanceSource::PPeaks { peaks, bits, seed } => {
                AnyProblem::PPeaks(PPeaksInstance::generate(*peaks, *bits, *seed)?)
            }
            InstanceSource::PPeaksFile(path) => {
                AnyProblem::PPeaks(PPeaksInstance::parse_dump(&std::fs::read_to_string(path)?)?)
            }
            InstanceSource::CvrpFile(path) => {
                AnyProblem::Cvrp(CvrpInstance::parse(&std::fs::read_to_string(path)?)?)
            }
        })
    }

    /// Parses flat `key = value` text; `#` starts a comment. Relative
    /// instance paths are resolved against `base_dir`.
    ///
    /// Keys: `problem`, `instance`, `peaks`, `bits`, `instance_seed`, `gaps`,
    /// `workers`, `repetitions`, `seed`, `islands`, `pop_size`,
    /// `crossover_prob`, `mutation_prob`, `target`, `max_evaluations`,
    /// `schedule`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut instance_path: Option<PathBuf> = None;
        let (mut peaks, mut bits, mut instance_seed) = (20usize, 100usize, 0u64);
        let mut pc = None;
        let mut pm = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, format!("expected key = value, got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let err = |what: &str| Error::parse(line_no, format!("{key}: {what} '{value}'"));
            let int = || value.parse::<u64>().map_err(|_| err("not a non-negative integer"));
            let real = || value.parse::<f64>().map_err(|_| err("not a number"));
            match key {
                "problem" => cfg.problem = value.to_string(),
                "instance" => instance_path = Some(base_dir.join(value)),
                "peaks" => peaks = int()? as usize,
                "bits" => bits = int()? as usize,
                "instance_seed" => instance_seed = int()?,
                "gaps" => {
                    cfg.gaps = value
                        .split(',')
                        .map(|g| match g.trim() {
                            "none" | "off" => Ok(None),
                            g => g.parse::<u64>().map(Some).map_err(|_| err("bad gap list")),
                        })
                        .collect::<Result<_>>()?
                }
                "workers" => {
                    cfg.worker_counts = value
                        .split(',')
                        .map(|w| w.trim().parse::<usize>().map_err(|_| err("bad worker list")))
                        .collect::<Result<_>>()?
                }
                "repetitions" => cfg.repetitions = int()? as u32,
                "seed" => cfg.base_seed = int()?,
                "islands" => cfg.island_count = int()? as usize,
                "pop_size" => cfg.pop_size = int()? as usize,
                "crossover_prob" => pc = Some(real()?),
                "mutation_prob" => pm = Some(real()?),
                "target" => cfg.target = Some(real()?),
                "max_evaluations" => cfg.max_evaluations = real()? as u64,
                "schedule" => {
                    cfg.schedule = match value {
                        "threaded" => Schedule::Threaded,
                        "deterministic" => Schedule::Deterministic,
                        _ => return Err(err("unknown schedule")),
                    }
                }
                _ => return Err(Error::parse(line_no, format!("unknown key '{key}'"))),
            }
        }

        let id = cfg.problem_id()?;
        cfg.instance = match (id, instance_path) {
            (ProblemId::PPeaks, None) => InstanceSource::PPeaks {
                peaks,
                bits,
                seed: instance_seed,
            },
            (ProblemId::PPeaks, Some(p)) => InstanceSource::PPeaksFile(p),
            (_, Some(p)) => InstanceSource::CvrpFile(p),
            (_, None) => {
                return Err(Error::InvalidParameter(format!(
                    "problem '{}' needs an instance file",
                    cfg.problem
                )))
            }
        };
        if pc.is_some() || pm.is_some() {
            let mut ops = cfg.island_config(None).operators;
            ops.crossover_prob = pc.unwrap_or(ops.crossover_prob);
            ops.mutation_prob = pm.unwrap_or(ops.mutation_prob);
            cfg.operators = Some(ops);
        }
        Ok(cfg)
    }
}
