//! Genomes, genetic operators and the steady-state iteration.

mod operators;
mod step;

pub use operators::{
    binary_tournament, bit_flip_mutation, cycle_crossover, exchange_mutation,
    random_exchange_mutation, single_point_crossover,
};
pub use step::steady_state_step;

use crate::{Error, Result};

/// A candidate solution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Genome {
    /// Fixed-length bit string, one `0`/`1` byte per bit.
    Bits(Vec<u8>),
    /// Visiting order of customers `1..=n`, each exactly once.
    Perm(Vec<u32>),
}

impl Genome {
    pub fn len(&self) -> usize {
        match self {
            Genome::Bits(b) => b.len(),
            Genome::Perm(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_bits(&self) -> Result<&[u8]> {
        match self {
            Genome::Bits(b) => Ok(b),
            Genome::Perm(_) => Err(Error::GenomeKind { expected: "bits" }),
        }
    }

    pub fn as_perm(&self) -> Result<&[u32]> {
        match self {
            Genome::Perm(p) => Ok(p),
            Genome::Bits(_) => Err(Error::GenomeKind {
                expected: "permutation",
            }),
        }
    }

    /// Parses a `0`/`1` string.
    pub fn bits_from_str(s: &str) -> Result<Genome> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidParameter(format!(
                    "bit string contains '{other}'"
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Genome::Bits)
    }
}

/// Returns true when `p` holds `1..=p.len()` exactly once each.
pub fn is_permutation(p: &[u32]) -> bool {
    let mut sorted = p.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: f64,
}

impl Individual {
    pub fn new(genome: Genome, fitness: f64) -> Self {
        Self { genome, fitness }
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitness.is_finite()
    }
}

/// Fixed-size multiset of evaluated individuals (one island's population).
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        Ok(Self { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn get(&self, index: usize) -> &Individual {
        &self.members[index]
    }

    /// Index of the minimum-fitness member, first occurrence on ties.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate().skip(1) {
            if m.fitness < self.members[best].fitness {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Individual {
        &self.members[self.best_index()]
    }

    pub fn best_fitness(&self) -> f64 {
        self.best().fitness
    }

    /// Replaces member `index` with `candidate` iff the candidate is strictly
    /// better. Returns whether the replacement happened.
    pub fn replace_if_better(&mut self, index: usize, candidate: Individual) -> bool {
        if candidate.fitness < self.members[index].fitness {
            self.members[index] = candidate;
            true
        } else {
            false
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverKind {
    SinglePoint,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    BitFlip,
    Exchange,
}

/// Variation settings for one island.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorConfig {
    /// Crossover probability `Pc`.
    pub crossover_prob: f64,
    /// Mutation gate probability `Pm`.
    pub mutation_prob: f64,
    pub crossover: CrossoverKind,
    pub mutation: MutationKind,
    /// Per-bit flip probability once the mutation gate fires. `None` means
    /// `1/N` for the genome at hand.
    pub per_bit_rate: Option<f64>,
}

impl OperatorConfig {
    /// P-PEAKS settings: single-point crossover (0.8), bit-flip mutation (0.1).
    pub fn binary() -> Self {
        Self {
            crossover_prob: 0.8,
            mutation_prob: 0.1,
            crossover: CrossoverKind::SinglePoint,
            mutation: MutationKind::BitFlip,
            per_bit_rate: None,
        }
    }

    /// VRP settings: cycle crossover (0.8), exchange mutation (1.0).
    pub fn permutation() -> Self {
        Self {
            crossover_prob: 0.8,
            mutation_prob: 1.0,
            crossover: CrossoverKind::Cycle,
            mutation: MutationKind::Exchange,
            per_bit_rate: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let probs = [
            ("crossover probability", Some(self.crossover_prob)),
            ("mutation probability", Some(self.mutation_prob)),
            ("per-bit rate", self.per_bit_rate),
        ];
        for (name, p) in probs {
            if let Some(p) = p {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter(format!(
                        "{name} {p} outside [0, 1]"
                    )));
                }
            }
        }
        let consistent = matches!(
            (self.crossover, self.mutation),
            (CrossoverKind::SinglePoint, MutationKind::BitFlip)
                | (CrossoverKind::Cycle, MutationKind::Exchange)
        );
        if !consistent {
            return Err(Error::InvalidParameter(
                "crossover and mutation kinds target different genome encodings".into(),
            ));
        }
        Ok(())
    }

    /// Checks the operator kinds against a concrete genome.
    pub fn check_genome(&self, genome: &Genome) -> Result<()> {
        match (self.crossover, genome) {
            (CrossoverKind::SinglePoint, Genome::Bits(_)) | (CrossoverKind::Cycle, Genome::Perm(_)) => {
                Ok(())
            }
            (CrossoverKind::SinglePoint, _) => Err(Error::GenomeKind { expected: "bits" }),
            (CrossoverKind::Cycle, _) => Err(Error::GenomeKind {
                expected: "permutation",
            }),
        }
    }
}
