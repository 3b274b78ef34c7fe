use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactmath::{bigint_bits, Elem, FieldSpec};

use super::{null_basis_from_rref, IntegerMatrix, KernelSolver};

/// Exact elimination over the rationals: fraction-free Bareiss for the rank,
/// Gauss-Jordan over `BigRational` for kernels.
pub struct RationalBareiss;

/// Fraction-free elimination; the pivot in each column is the nonzero entry
/// of smallest bit length. Every division by the previous pivot is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let pivot = (rank..nrows)
            .filter(|&r| !a[r][c].is_zero())
            .min_by_key(|&r| bigint_bits(&a[r][c]));
        let Some(pr) = pivot else { continue };
        a.swap(rank, pr);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = &prow[c] * &row[j] - &lead * &prow[j];
                row[j] = v / &prev;
            }
        }
        prev = prow[c].clone();
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over `Q` in place; returns pivot columns.
pub(crate) fn rref_rational(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][c].recip();
        for v in rows[rank][c..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

impl RationalBareiss {
    pub fn kernel_rational(a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigRational>> {
        let mut rows: Vec<Vec<BigRational>> = a
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let pivots = rref_rational(&mut rows);
        let mut basis = null_basis_from_rref(
            ncols,
            &pivots,
            |r, c| rows[r][c].clone(),
            |v| -v,
            BigRational::zero(),
            BigRational::one(),
        );
        rref_rational(&mut basis);
        basis
    }
}

impl KernelSolver for RationalBareiss {
    fn name(&self) -> &'static str {
        "rational-bareiss"
    }

    fn description(&self) -> &'static str {
        "exact fraction-free elimination over Q"
    }

    fn supports(&self, field: FieldSpec) -> bool {
        field.is_rational()
    }

    fn rank(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<usize> {
        self.check(field)?;
        Ok(bareiss_rank(matrix.dense_int()))
    }

    fn kernel(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<Vec<Vec<Elem>>> {
        self.check(field)?;
        let basis = Self::kernel_rational(matrix.dense_int(), matrix.ncols());
        Ok(basis
            .into_iter()
            .map(|v| v.into_iter().map(Elem::Rat).collect())
            .collect())
    }
}
