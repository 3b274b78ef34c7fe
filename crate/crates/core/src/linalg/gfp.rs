use crate::error::Result;
use crate::exactmath::{inv_mod, mul_mod, Elem, FieldSpec};

use super::{null_basis_from_rref, IntegerMatrix, KernelSolver};

/// Dense Gauss-Jordan over GF(p) for any prime `p < 2^63`.
pub struct GfpDense;

/// In-place elimination mod `p`; returns pivot columns.
pub(crate) fn eliminate_mod(rows: &mut [Vec<u64>], p: u64, full: bool) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][c], p).expect("nonzero pivot");
        for v in rows[rank][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[rank].clone();
        let start = if full { 0 } else { rank + 1 };
        for (r, row) in rows.iter_mut().enumerate().skip(start) {
            if r == rank || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                // x -= factor * y
                let t = mul_mod(factor, *y, p);
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

impl GfpDense {
    pub fn kernel_mod(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
        let pivots = eliminate_mod(&mut rows, p, true);
        let mut basis = null_basis_from_rref(
            ncols,
            &pivots,
            |r, c| rows[r][c],
            |v| if *v == 0 { 0 } else { p - v },
            0,
            1,
        );
        eliminate_mod(&mut basis, p, true);
        basis
    }
}

impl KernelSolver for GfpDense {
    fn name(&self) -> &'static str {
        "gfp-dense"
    }

    fn description(&self) -> &'static str {
        "dense Gauss-Jordan over GF(p), any prime p"
    }

    fn supports(&self, field: FieldSpec) -> bool {
        field.characteristic() != 0
    }

    fn rank(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<usize> {
        self.check(field)?;
        let mut rows = matrix.dense_mod(field.characteristic());
        Ok(eliminate_mod(&mut rows, field.characteristic(), false).len())
    }

    fn kernel(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<Vec<Vec<Elem>>> {
        self.check(field)?;
        let p = field.characteristic();
        let basis = Self::kernel_mod(matrix.dense_mod(p), matrix.ncols(), p);
        Ok(basis
            .into_iter()
            .map(|v| v.into_iter().map(Elem::Mod).collect())
            .collect())
    }
}
