use rand::Rng;

use super::{
    binary_tournament, bit_flip_mutation, cycle_crossover, random_exchange_mutation,
    single_point_crossover, Genome, Individual, OperatorConfig, Population,
};
use crate::problems::Problem;

/// One steady-state iteration: select two parents by binary tournament,
/// recombine with probability `Pc`, mutate with probability `Pm`, evaluate the
/// child and let it replace a uniformly drawn member iff strictly better.
///
/// Returns the number of fitness evaluations consumed (always 1).
///
/// # Panics
///
/// Panics if the population's genomes do not match the operator kinds; the
/// island runtime validates this once at start-up.
pub fn steady_state_step<P, R>(
    pop: &mut Population,
    ops: &OperatorConfig,
    problem: &P,
    rng: &mut R,
) -> usize
where
    P: Problem + ?Sized,
    R: Rng + ?Sized,
{
    let first = binary_tournament(pop, rng).expect("population is never empty");
    let second = binary_tournament(pop, rng).expect("population is never empty");
    let p1 = &pop.get(first).genome;
    let p2 = &pop.get(second).genome;

    let mut child = if rng.random::<f64>() < ops.crossover_prob {
        match (p1, p2) {
            (Genome::Bits(a), Genome::Bits(b)) => Genome::Bits(
                single_point_crossover(a, b, None, rng).expect("equal-length parents"),
            ),
            (Genome::Perm(a), Genome::Perm(b)) => {
                Genome::Perm(cycle_crossover(a, b).expect("parents are permutations"))
            }
            _ => panic!("population mixes genome encodings"),
        }
    } else {
        p1.clone()
    };

    if rng.random::<f64>() < ops.mutation_prob {
        match &mut child {
            Genome::Bits(bits) => {
                let rate = ops
                    .per_bit_rate
                    .unwrap_or(1.0 / bits.len().max(1) as f64);
                bit_flip_mutation(bits, rate, rng);
            }
            Genome::Perm(perm) => random_exchange_mutation(perm, rng),
        }
    }

    let fitness = problem.evaluate(&child);
    let target = rng.random_range(0..pop.len());
    pop.replace_if_better(target, Individual::new(child, fitness));
    1
}
