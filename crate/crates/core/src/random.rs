//! Seeded random ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monomial::{divides, Exponent, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomIdealSpec {
    pub n: usize,
    pub generators: usize,
    /// Exponents are drawn uniformly from `0..=max_exponent`.
    pub max_exponent: Exponent,
    pub seed: u64,
    /// Candidates to draw before giving up.
    pub max_attempts: u64,
}

impl RandomIdealSpec {
    pub fn new(n: usize, generators: usize, max_exponent: Exponent, seed: u64) -> Self {
        let max_attempts = 1000 * generators as u64 + 10_000;
        RandomIdealSpec { n, generators, max_exponent, seed, max_attempts }
    }
}

/// Draws random exponent vectors and keeps each one that neither divides
/// nor is divisible by an earlier one, until there are enough generators.
/// The monomial `1` is never kept since it would swallow everything.
pub fn random_ideal(spec: &RandomIdealSpec) -> Result<MonomialIdeal> {
    if spec.n == 0 {
        return Err(Error::Usage("the number of variables must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut gens: Vec<Vec<Exponent>> = Vec::with_capacity(spec.generators);
    let mut attempts = 0;
    while gens.len() < spec.generators {
        if attempts == spec.max_attempts {
            return Err(Error::GeneratorsUnreachable { wanted: spec.generators, got: gens.len(), attempts });
        }
        attempts += 1;
        let m: Vec<Exponent> = (0..spec.n).map(|_| rng.gen_range(0..=spec.max_exponent)).collect();
        if m.iter().all(|&e| e == 0) {
            continue;
        }
        if gens.iter().any(|g| divides(g, &m) || divides(&m, g)) {
            continue;
        }
        gens.push(m);
    }
    Ok(MonomialIdeal::from_generators(spec.n, gens))
}
