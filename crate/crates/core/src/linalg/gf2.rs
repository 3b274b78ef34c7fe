use crate::error::Result;
use crate::exactmath::{Elem, FieldSpec};

use super::{null_basis_from_rref, IntegerMatrix, KernelSolver};

/// Dense GF(2) matrix with rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn push_row(&mut self, bits: &[u64]) {
        assert_eq!(bits.len(), self.words);
        self.data.extend_from_slice(bits);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for i in 0..w {
            self.data.swap(a * w + i, b * w + i);
        }
    }

    /// `row[dst] ^= row[src]`, starting at word `from`.
    fn xor_into(&mut self, dst: usize, src: usize, from: usize) {
        let w = self.words;
        let (d, s) = (dst * w, src * w);
        if d < s {
            let (lo, hi) = self.data.split_at_mut(s);
            for i in from..w {
                lo[d + i] ^= hi[i];
            }
        } else {
            let (lo, hi) = self.data.split_at_mut(d);
            for i in from..w {
                hi[i] ^= lo[s + i];
            }
        }
    }

    /// In-place Gauss-Jordan; returns the pivot columns. With `full` the
    /// result is the reduced row echelon form, otherwise only the rows below
    /// each pivot are cleared (enough for the rank).
    pub fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(rank, p);
            let start = if full { 0 } else { rank + 1 };
            for r in start..self.rows {
                if r != rank && self.get(r, c) {
                    self.xor_into(r, rank, c / 64);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }
}

/// Bit-packed Gaussian elimination over GF(2).
pub struct Gf2Bitset;

impl Gf2Bitset {
    /// Kernel basis as packed bit rows in reduced row echelon form.
    pub fn kernel_bits(m: &BitMatrix) -> BitMatrix {
        let mut rref = m.clone();
        let pivots = rref.eliminate(true);
        let basis = null_basis_from_rref(
            m.cols(),
            &pivots,
            |r, c| rref.get(r, c),
            |b| *b,
            false,
            true,
        );
        let mut k = BitMatrix::new(basis.len(), m.cols());
        for (r, v) in basis.iter().enumerate() {
            for (c, b) in v.iter().enumerate() {
                if *b {
                    k.set(r, c);
                }
            }
        }
        k.eliminate(true);
        k
    }
}

impl KernelSolver for Gf2Bitset {
    fn name(&self) -> &'static str {
        "gf2-bitset"
    }

    fn description(&self) -> &'static str {
        "GF(2) Gauss-Jordan on 64-bit packed rows"
    }

    fn supports(&self, field: FieldSpec) -> bool {
        field.characteristic() == 2
    }

    fn rank(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<usize> {
        self.check(field)?;
        Ok(matrix.dense_gf2().rank())
    }

    fn kernel(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<Vec<Vec<Elem>>> {
        self.check(field)?;
        let k = Self::kernel_bits(&matrix.dense_gf2());
        Ok((0..k.rows())
            .map(|r| (0..k.cols()).map(|c| Elem::Mod(k.get(r, c) as u64)).collect())
            .collect())
    }
}
