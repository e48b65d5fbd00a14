use rand::Rng;

use super::IslandConfig;
use crate::ga::{steady_state_step, Genome, Individual, Population};
use crate::problems::Problem;

/// Copy of an island's best individual in transit to its ring successor.
#[derive(Debug, Clone, PartialEq)]
pub struct MigrantMessage {
    pub genome: Genome,
    /// Fitness computed by the source island; never re-evaluated on receipt.
    pub fitness: f64,
    pub source_island: usize,
}

/// Next island on the uni-directional ring.
pub fn ring_successor(i: usize, n: usize) -> usize {
    debug_assert!(i < n);
    (i + 1) % n
}

/// Copies the best member (first on ties). The population is not modified.
pub fn select_migrant(pop: &Population, source_island: usize) -> MigrantMessage {
    let best = pop.best();
    MigrantMessage {
        genome: best.genome.clone(),
        fitness: best.fitness,
        source_island,
    }
}

/// Draws a uniformly random member and replaces it with the migrant iff the
/// migrant is strictly better. Returns whether the migrant was inserted.
pub fn accept_migrant<R: Rng + ?Sized>(pop: &mut Population, migrant: MigrantMessage, rng: &mut R) -> bool {
    let target = rng.random_range(0..pop.len());
    pop.replace_if_better(target, Individual::new(migrant.genome, migrant.fitness))
}

/// One island: its population, private random stream and counters.
#[derive(Debug, Clone)]
pub struct Island {
    pub index: usize,
    population: Population,
    rng: crate::Rng,
    /// Local evaluations including the initial population.
    evaluations: u64,
    /// Steady-state steps taken (the migration clock).
    steps: u64,
    migrants_sent: u64,
    migrants_received: u64,
}

#[derive(Debug, Clone)]
pub struct IslandSummary {
    pub index: usize,
    pub evaluations: u64,
    pub best: Individual,
    pub migrants_sent: u64,
    pub migrants_received: u64,
}

impl Island {
    /// Creates and evaluates a random initial population.
    pub fn new<P: Problem + ?Sized>(index: usize, cfg: &IslandConfig, problem: &P, mut rng: crate::Rng) -> Self {
        let members = (0..cfg.pop_size)
            .map(|_| {
                let genome = problem.random_genome(&mut rng);
                let fitness = problem.evaluate(&genome);
                Individual::new(genome, fitness)
            })
            .collect();
        Self {
            index,
            population: Population::new(members).expect("pop_size validated >= 2"),
            rng,
            evaluations: cfg.pop_size as u64,
            steps: 0,
            migrants_sent: 0,
            migrants_received: 0,
        }
    }

    /// Runs one steady-state step and returns a migrant when the local step
    /// count reaches a multiple of the migration gap.
    pub fn step<P: Problem + ?Sized>(&mut self, cfg: &IslandConfig, problem: &P) -> Option<MigrantMessage> {
        let used = steady_state_step(&mut self.population, &cfg.operators, problem, &mut self.rng);
        self.evaluations += used as u64;
        self.steps += 1;
        match cfg.migration_gap {
            Some(gap) if self.steps.is_multiple_of(gap) => {
                self.migrants_sent += 1;
                Some(select_migrant(&self.population, self.index))
            }
            _ => None,
        }
    }

    pub fn receive(&mut self, migrant: MigrantMessage) -> bool {
        self.migrants_received += 1;
        accept_migrant(&mut self.population, migrant, &mut self.rng)
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn best_fitness(&self) -> f64 {
        self.population.best_fitness()
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn migrants_sent(&self) -> u64 {
        self.migrants_sent
    }

    pub fn summary(&self) -> IslandSummary {
        IslandSummary {
            index: self.index,
            evaluations: self.evaluations,
            best: self.population.best().clone(),
            migrants_sent: self.migrants_sent,
            migrants_received: self.migrants_received,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;

    fn pop(fits: &[f64]) -> Population {
        Population::new(
            fits.iter()
                .enumerate()
                .map(|(i, &f)| Individual::new(Genome::Perm(vec![i as u32 + 1]), f))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ring_wiring() {
        assert_eq!(ring_successor(0, 64), 1);
        assert_eq!(ring_successor(63, 64), 0);
        assert_eq!(ring_successor(3, 4), 0);
        assert_eq!(ring_successor(0, 1), 0);
    }

    #[test]
    fn migrant_is_best_copy() {
        let p = pop(&[4.0, 1.0, 7.0]);
        let before = p.clone();
        let m = select_migrant(&p, 5);
        assert_eq!(m.fitness, 1.0);
        assert_eq!(m.genome, Genome::Perm(vec![2]));
        assert_eq!(m.source_island, 5);
        assert_eq!(p, before);

        let tied = pop(&[2.0, 2.0, 2.0]);
        assert_eq!(select_migrant(&tied, 0).genome, Genome::Perm(vec![1]));
    }

    #[test]
    fn dominant_migrant_always_inserted() {
        let mut rng = seeded_rng(1, 0);
        for _ in 0..200 {
            let mut p = pop(&[3.0, 5.0, 4.0, 9.0]);
            let mig = MigrantMessage { genome: Genome::Perm(vec![9]), fitness: 0.0, source_island: 1 };
            assert!(accept_migrant(&mut p, mig, &mut rng));
            assert_eq!(p.best_fitness(), 0.0);
            assert_eq!(p.len(), 4);
        }
    }

    #[test]
    fn equal_migrant_never_inserted() {
        let mut rng = seeded_rng(2, 0);
        let mut p = pop(&[2.0, 2.0]);
        let before = p.clone();
        for _ in 0..100 {
            let mig = MigrantMessage { genome: Genome::Perm(vec![7]), fitness: 2.0, source_island: 0 };
            assert!(!accept_migrant(&mut p, mig, &mut rng));
        }
        assert_eq!(p, before);
    }

    #[test]
    fn acceptance_never_raises_the_minimum() {
        let mut rng = seeded_rng(3, 0);
        let mut p = pop(&[5.0; 16]);
        let mut prev = p.best_fitness();
        for _ in 0..10_000 {
            let fitness = rng.random_range(0.0..10.0);
            let mig = MigrantMessage { genome: Genome::Perm(vec![1]), fitness, source_island: 0 };
            accept_migrant(&mut p, mig, &mut rng);
            assert!(p.best_fitness() <= prev);
            assert_eq!(p.len(), 16);
            prev = p.best_fitness();
        }
    }
}
