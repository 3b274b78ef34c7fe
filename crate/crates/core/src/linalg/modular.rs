use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactmath::{is_prime, Elem, FieldSpec};

use super::gfp::eliminate_mod;
use super::rational::{bareiss_rank, RationalBareiss};
use super::{IntegerMatrix, KernelSolver};

/// Characteristic-0 rank with a modular pre-screen.
///
/// The rank mod any prime is a lower bound for the rank over `Q`, so when
/// the largest modular rank already equals `min(rows, cols)` it is the exact
/// answer. Otherwise the solver falls back to exact Bareiss elimination.
pub struct ModularScreen {
    pub primes: usize,
    pub seed: u64,
}

impl Default for ModularScreen {
    fn default() -> Self {
        ModularScreen { primes: 3, seed: 0x5eed }
    }
}

impl ModularScreen {
    pub fn sample_primes(&self) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.primes);
        while out.len() < self.primes {
            let cand = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
            if is_prime(cand) {
                out.push(cand);
            }
        }
        out
    }

    fn screened_rank(&self, matrix: &dyn IntegerMatrix) -> usize {
        let bound = matrix.nrows().min(matrix.ncols());
        let mut best = 0;
        for p in self.sample_primes() {
            let mut rows = matrix.dense_mod(p);
            best = best.max(eliminate_mod(&mut rows, p, false).len());
            if best == bound {
                return best;
            }
        }
        bareiss_rank(matrix.dense_int())
    }
}

impl KernelSolver for ModularScreen {
    fn name(&self) -> &'static str {
        "modular-screen"
    }

    fn description(&self) -> &'static str {
        "rank over Q proven by full modular rank, else exact Bareiss"
    }

    fn supports(&self, field: FieldSpec) -> bool {
        field.is_rational()
    }

    fn rank(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<usize> {
        self.check(field)?;
        Ok(self.screened_rank(matrix))
    }

    fn kernel(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<Vec<Vec<Elem>>> {
        self.check(field)?;
        if self.screened_rank(matrix) == matrix.ncols() {
            return Ok(Vec::new());
        }
        RationalBareiss.kernel(matrix, field)
    }
}
