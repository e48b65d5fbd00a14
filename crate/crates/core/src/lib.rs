//! Island-model steady-state genetic algorithm engine and the tooling used to
//! measure and model its parallel performance.
//!
//! The crate is split along the experiment pipeline:
//!
//! - [`ga`]: genomes, genetic operators and the single steady-state step.
//! - [`problems`]: P-PEAKS and capacitated VRP fitness functions.
//! - [`islands`]: the ring-connected island runtime (threaded and
//!   deterministic schedulers).
//! - [`harness`]: factorial experiment sweeps, aggregation and CSV persistence.
//! - [`analysis`]: speed-up, model fitting and ranking, Kruskal-Wallis.

pub mod analysis;
pub mod error;
pub mod ga;
pub mod harness;
pub mod islands;
pub mod problems;

pub use error::{Error, Result};

/// Random stream used by every stochastic component.
///
/// ChaCha8 gives reproducible, platform-independent streams and supports
/// independent sub-streams, which the island runtime uses for per-island RNGs.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Builds the random stream for `(seed, stream)`.
pub fn seeded_rng(seed: u64, stream: u64) -> Rng {
    use rand::SeedableRng;
    let mut rng = Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
