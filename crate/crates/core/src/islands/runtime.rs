use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc::{channel, Receiver, Sender};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{ring_successor, Island, IslandConfig, IslandSummary, MigrantMessage};
use crate::ga::Individual;
use crate::problems::Problem;
use crate::{seeded_rng, Error, Result};

/// How islands are mapped onto execution units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// One OS thread per worker, islands free-running and communicating
    /// through asynchronous mailboxes.
    #[default]
    Threaded,
    /// Single-threaded round-robin: every island takes one step per round and
    /// migrants sent during a round are delivered when the round ends.
    /// Replays are bit-identical for a fixed seed.
    Deterministic,
}

/// Result of one distributed run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub wall_clock: Duration,
    pub total_evaluations: u64,
    pub best: Individual,
    pub hit_target: bool,
    pub migrants_sent: u64,
    pub islands: Vec<IslandSummary>,
    /// Global best after every round (deterministic schedule only).
    pub best_trace: Vec<f64>,
}

/// One experiment repetition, as persisted to CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    /// Empty when migration is disabled.
    pub gap: Option<u64>,
    pub workers: usize,
    pub rep: u32,
    pub seed: u64,
    pub wall_ms: f64,
    pub evals: u64,
    pub best_fitness: f64,
    pub hit_target: bool,
    pub oversubscribed: bool,
}

impl RunOutcome {
    pub fn to_record(&self, problem: &str, cfg: &IslandConfig, workers: usize, rep: u32, seed: u64) -> RunRecord {
        RunRecord {
            problem: problem.to_string(),
            gap: cfg.migration_gap,
            workers,
            rep,
            seed,
            wall_ms: self.wall_clock.as_secs_f64() * 1e3,
            evals: self.total_evaluations,
            best_fitness: self.best.fitness,
            hit_target: self.hit_target,
            oversubscribed: false,
        }
    }
}

fn island_rng(seed: u64, index: usize) -> crate::Rng {
    // stream 0 is left for instance generation
    seeded_rng(seed, index as u64 + 1)
}

struct Slot {
    island: Island,
    inbox: Receiver<MigrantMessage>,
    outbox: Sender<MigrantMessage>,
}

/// Runs a set of islands interleaved on the current thread until the stop
/// flag is raised or every island exhausts its budget.
fn run_worker<P: Problem + ?Sized>(cfg: &IslandConfig, problem: &P, mut slots: Vec<Slot>, stop: &AtomicBool) -> Vec<IslandSummary> {
    let budget = cfg.island_budget();
    let target = cfg.termination_target;
    if slots.iter().any(|s| s.island.best_fitness() <= target) {
        stop.store(true, Ordering::Release);
    }
    'outer: loop {
        // Deliver at round boundaries only: a migrant posted to an island on
        // the same worker is consumed next round, never in the same sweep,
        // so it cannot travel the whole ring in one round.
        for slot in slots.iter_mut() {
            if slot.island.evaluations() >= budget {
                continue;
            }
            while let Ok(m) = slot.inbox.try_recv() {
                slot.island.receive(m);
            }
            if slot.island.best_fitness() <= target {
                stop.store(true, Ordering::Release);
                break 'outer;
            }
        }
        let mut active = false;
        for slot in slots.iter_mut() {
            if stop.load(Ordering::Acquire) {
                break 'outer;
            }
            if slot.island.evaluations() >= budget {
                continue;
            }
            active = true;
            if let Some(m) = slot.island.step(cfg, problem) {
                // the successor's worker may already have exited
                let _ = slot.outbox.send(m);
            }
            if slot.island.best_fitness() <= target {
                stop.store(true, Ordering::Release);
                break 'outer;
            }
        }
        if !active {
            break;
        }
    }
    slots.iter().map(|s| s.island.summary()).collect()
}

/// Free-running loop of a single island wired to its ring mailboxes: drain
/// the inbox before each step, post a migrant every `gap` local steps, stop
/// when `stop` is observed or the local best reaches the target (raising
/// `stop` for everyone else).
pub fn run_island<P: Problem + ?Sized>(
    cfg: &IslandConfig,
    problem: &P,
    index: usize,
    rng: crate::Rng,
    inbox: Receiver<MigrantMessage>,
    outbox: Sender<MigrantMessage>,
    stop: &AtomicBool,
) -> IslandSummary {
    let island = Island::new(index, cfg, problem, rng);
    let slot = Slot { island, inbox, outbox };
    run_worker(cfg, problem, vec![slot], stop)
        .pop()
        .expect("one island in, one summary out")
}

/// Runs `cfg.island_count` islands on `workers` execution units (islands are
/// assigned round-robin) until global termination.
///
/// The wall clock covers island creation through the last worker observing
/// the stop flag; instance construction happens before the call.
pub fn run_distributed<P: Problem + ?Sized>(
    cfg: &IslandConfig,
    workers: usize,
    problem: &P,
    seed: u64,
    schedule: Schedule,
) -> Result<RunOutcome> {
    cfg.validate()?;
    if workers == 0 {
        return Err(Error::InvalidParameter("worker count must be >= 1".into()));
    }
    if workers > cfg.island_count {
        return Err(Error::MoreWorkersThanIslands {
            workers,
            islands: cfg.island_count,
        });
    }
    let probe = problem.random_genome(&mut island_rng(seed, 0));
    cfg.operators.check_genome(&probe)?;

    let start = Instant::now();
    let (summaries, best_trace) = match schedule {
        Schedule::Threaded => (run_threaded(cfg, workers, problem, seed), Vec::new()),
        Schedule::Deterministic => run_deterministic(cfg, problem, seed),
    };
    let wall_clock = start.elapsed();
    Ok(collect(cfg, summaries, best_trace, wall_clock))
}

fn collect(cfg: &IslandConfig, mut summaries: Vec<IslandSummary>, best_trace: Vec<f64>, wall_clock: Duration) -> RunOutcome {
    summaries.sort_by_key(|s| s.index);
    let mut total: u64 = summaries.iter().map(|s| s.evaluations).sum();
    if !cfg.count_initial_evaluations {
        total -= (cfg.pop_size * cfg.island_count) as u64;
    }
    let best = summaries
        .iter()
        .map(|s| &s.best)
        .fold(None::<&Individual>, |acc, b| match acc {
            Some(a) if a.fitness <= b.fitness => Some(a),
            _ => Some(b),
        })
        .expect("at least one island")
        .clone();
    RunOutcome {
        wall_clock,
        total_evaluations: total,
        hit_target: best.fitness <= cfg.termination_target,
        best,
        migrants_sent: summaries.iter().map(|s| s.migrants_sent).sum(),
        islands: summaries,
        best_trace,
    }
}

fn run_threaded<P: Problem + ?Sized>(cfg: &IslandConfig, workers: usize, problem: &P, seed: u64) -> Vec<IslandSummary> {
    let n = cfg.island_count;
    let (senders, receivers): (Vec<_>, Vec<_>) = (0..n).map(|_| channel::<MigrantMessage>()).unzip();
    let mut per_worker: Vec<Vec<(usize, Receiver<MigrantMessage>, Sender<MigrantMessage>)>> =
        (0..workers).map(|_| Vec::new()).collect();
    for (i, inbox) in receivers.into_iter().enumerate() {
        let outbox = senders[ring_successor(i, n)].clone();
        per_worker[i % workers].push((i, inbox, outbox));
    }
    drop(senders);

    let stop = AtomicBool::new(false);
    std::thread::scope(|scope| {
        let handles: Vec<_> = per_worker
            .into_iter()
            .map(|wiring| {
                let stop = &stop;
                scope.spawn(move || {
                    let slots = wiring
                        .into_iter()
                        .map(|(i, inbox, outbox)| Slot {
                            island: Island::new(i, cfg, problem, island_rng(seed, i)),
                            inbox,
                            outbox,
                        })
                        .collect();
                    run_worker(cfg, problem, slots, stop)
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("island worker panicked"))
            .collect()
    })
}

fn run_deterministic<P: Problem + ?Sized>(cfg: &IslandConfig, problem: &P, seed: u64) -> (Vec<IslandSummary>, Vec<f64>) {
    let n = cfg.island_count;
    let budget = cfg.island_budget();
    let target = cfg.termination_target;
    let mut islands: Vec<Island> = (0..n)
        .map(|i| Island::new(i, cfg, problem, island_rng(seed, i)))
        .collect();
    let mut mailboxes: Vec<VecDeque<MigrantMessage>> = vec![VecDeque::new(); n];
    let global_best = |islands: &[Island]| islands.iter().map(Island::best_fitness).fold(f64::INFINITY, f64::min);
    let mut trace = vec![global_best(&islands)];

    let mut stopped = trace[0] <= target;
    while !stopped {
        let mut in_flight = Vec::new();
        let mut active = false;
        for (i, island) in islands.iter_mut().enumerate() {
            if island.evaluations() >= budget {
                continue;
            }
            active = true;
            for m in mailboxes[i].drain(..) {
                island.receive(m);
            }
            if island.best_fitness() <= target {
                stopped = true;
                break;
            }
            if let Some(m) = island.step(cfg, problem) {
                in_flight.push((ring_successor(i, n), m));
            }
            if island.best_fitness() <= target {
                stopped = true;
                break;
            }
        }
        trace.push(global_best(&islands));
        if !active {
            break;
        }
        if !stopped {
            for (dest, m) in in_flight {
                mailboxes[dest].push_back(m);
            }
        }
    }
    (islands.iter().map(Island::summary).collect(), trace)
}
