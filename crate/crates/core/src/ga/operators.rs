use rand::Rng;

use super::{is_permutation, Population};
use crate::{Error, Result};

/// Samples two members uniformly with replacement and returns the index of the
/// fitter one (lower fitness). Ties go to the first sample.
pub fn binary_tournament<R: Rng + ?Sized>(pop: &Population, rng: &mut R) -> Result<usize> {
    if pop.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let first = rng.random_range(0..pop.len());
    let second = rng.random_range(0..pop.len());
    if pop.get(second).fitness < pop.get(first).fitness {
        Ok(second)
    } else {
        Ok(first)
    }
}

/// Child = `p1[..cut] ++ p2[cut..]`. A `None` cut is drawn uniformly from
/// `1..=N-1`; for `N < 2` there is no cut point and the child copies `p1`.
pub fn single_point_crossover<R: Rng + ?Sized>(
    p1: &[u8],
    p2: &[u8],
    cut: Option<usize>,
    rng: &mut R,
) -> Result<Vec<u8>> {
    if p1.len() != p2.len() {
        return Err(Error::LengthMismatch {
            left: p1.len(),
            right: p2.len(),
        });
    }
    let n = p1.len();
    let cut = match cut {
        Some(c) if (1..n).contains(&c) => c,
        Some(c) => {
            return Err(Error::InvalidParameter(format!(
                "cut {c} outside 1..={}",
                n.saturating_sub(1)
            )))
        }
        None if n < 2 => return Ok(p1.to_vec()),
        None => rng.random_range(1..n),
    };
    let mut child = Vec::with_capacity(n);
    child.extend_from_slice(&p1[..cut]);
    child.extend_from_slice(&p2[cut..]);
    Ok(child)
}

/// Flips every bit independently with probability `per_bit_rate`.
pub fn bit_flip_mutation<R: Rng + ?Sized>(bits: &mut [u8], per_bit_rate: f64, rng: &mut R) {
    if per_bit_rate <= 0.0 {
        return;
    }
    if per_bit_rate >= 1.0 {
        bits.iter_mut().for_each(|b| *b ^= 1);
        return;
    }
    for b in bits.iter_mut() {
        if rng.random::<f64>() < per_bit_rate {
            *b ^= 1;
        }
    }
}

/// Cycle crossover (CX).
///
/// Positions are partitioned into cycles by repeatedly following
/// `p2[pos]` back to its position in `p1`. Even-numbered cycles (in order of
/// their smallest position) are copied from `p1`, odd ones from `p2`.
pub fn cycle_crossover(p1: &[u32], p2: &[u32]) -> Result<Vec<u32>> {
    if p1.len() != p2.len() {
        return Err(Error::LengthMismatch {
            left: p1.len(),
            right: p2.len(),
        });
    }
    if !is_permutation(p1) || !is_permutation(p2) {
        return Err(Error::NotPermutation(
            "cycle crossover parents must be permutations of 1..=n".into(),
        ));
    }
    let n = p1.len();
    // position_in_p1[v - 1] = index of value v in p1
    let mut position_in_p1 = vec![0usize; n];
    for (i, &v) in p1.iter().enumerate() {
        position_in_p1[v as usize - 1] = i;
    }

    let mut child = vec![0u32; n];
    let mut assigned = vec![false; n];
    let mut cycle = 0usize;
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let source = if cycle.is_multiple_of(2) { p1 } else { p2 };
        let mut pos = start;
        loop {
            assigned[pos] = true;
            child[pos] = source[pos];
            pos = position_in_p1[p2[pos] as usize - 1];
            if pos == start {
                break;
            }
        }
        cycle += 1;
    }
    Ok(child)
}

/// Swaps the values at positions `i` and `j`.
pub fn exchange_mutation(perm: &mut [u32], i: usize, j: usize) -> Result<()> {
    let len = perm.len();
    for pos in [i, j] {
        if pos >= len {
            return Err(Error::PositionOutOfRange { pos, len });
        }
    }
    perm.swap(i, j);
    Ok(())
}

/// Swaps one uniformly drawn unordered pair of distinct positions.
/// Permutations shorter than two are left untouched.
pub fn random_exchange_mutation<R: Rng + ?Sized>(perm: &mut [u32], rng: &mut R) {
    let n = perm.len();
    if n < 2 {
        return;
    }
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    perm.swap(i, j);
}
