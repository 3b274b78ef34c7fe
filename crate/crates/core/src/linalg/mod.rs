//! Exact rank and kernel computation.
//!
//! Every backend implements [`KernelSolver`] and is registered by name in a
//! [`SolverRegistry`]; callers either pick one explicitly (`--solver` on the
//! command line) or take the registry default for the coefficient field.

mod gf2;
mod gfp;
mod modular;
mod rational;

pub use gf2::{BitMatrix, Gf2Bitset};
pub use gfp::GfpDense;
pub use modular::ModularScreen;
pub use rational::RationalBareiss;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmath::{Elem, FieldSpec};

/// A matrix with integer entries, read in whatever field a solver needs.
pub trait IntegerMatrix: Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn entry(&self, row: usize, col: usize) -> BigInt;

    fn dense_int(&self) -> Vec<Vec<BigInt>> {
        (0..self.nrows())
            .map(|r| (0..self.ncols()).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    fn dense_mod(&self, p: u64) -> Vec<Vec<u64>> {
        let field = FieldSpec::new(p).expect("prime modulus");
        (0..self.nrows())
            .map(|r| {
                (0..self.ncols())
                    .map(|c| match field.from_bigint(&self.entry(r, c)) {
                        Elem::Mod(v) => v,
                        Elem::Rat(_) => unreachable!(),
                    })
                    .collect()
            })
            .collect()
    }

    fn dense_gf2(&self) -> BitMatrix {
        let rows = self.dense_mod(2);
        let mut m = BitMatrix::new(self.nrows(), self.ncols());
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if *v == 1 {
                    m.set(r, c);
                }
            }
        }
        m
    }
}

impl IntegerMatrix for Vec<Vec<BigInt>> {
    fn nrows(&self) -> usize {
        self.len()
    }

    fn ncols(&self) -> usize {
        self.first().map_or(0, Vec::len)
    }

    fn entry(&self, row: usize, col: usize) -> BigInt {
        self[row][col].clone()
    }

    fn dense_int(&self) -> Vec<Vec<BigInt>> {
        self.clone()
    }
}

pub trait KernelSolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn supports(&self, field: FieldSpec) -> bool;

    fn rank(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<usize>;

    /// Kernel basis in reduced row echelon form (one vector per row).
    fn kernel(&self, matrix: &dyn IntegerMatrix, field: FieldSpec) -> Result<Vec<Vec<Elem>>>;

    fn check(&self, field: FieldSpec) -> Result<()> {
        if self.supports(field) {
            Ok(())
        } else {
            Err(Error::UnsupportedField {
                solver: self.name().to_string(),
                characteristic: field.characteristic(),
            })
        }
    }
}

pub struct SolverRegistry {
    solvers: Vec<Box<dyn KernelSolver>>,
}

impl SolverRegistry {
    pub fn empty() -> Self {
        SolverRegistry { solvers: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Gf2Bitset));
        r.register(Box::new(GfpDense));
        r.register(Box::new(RationalBareiss));
        r.register(Box::new(ModularScreen::default()));
        r
    }

    /// Registers a solver; a later registration under the same name wins.
    pub fn register(&mut self, solver: Box<dyn KernelSolver>) {
        self.solvers.retain(|s| s.name() != solver.name());
        self.solvers.push(solver);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn KernelSolver> {
        self.solvers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: "solver",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn default_name(field: FieldSpec) -> &'static str {
        match field.characteristic() {
            0 => "rational-bareiss",
            2 => "gf2-bitset",
            _ => "gfp-dense",
        }
    }

    pub fn default_for(&self, field: FieldSpec) -> Result<&dyn KernelSolver> {
        self.get(Self::default_name(field))
    }
}

/// Registry default solver for `field`.
pub fn default_solver(field: FieldSpec) -> &'static dyn KernelSolver {
    static GF2: Gf2Bitset = Gf2Bitset;
    static GFP: GfpDense = GfpDense;
    static RAT: RationalBareiss = RationalBareiss;
    match field.characteristic() {
        0 => &RAT,
        2 => &GF2,
        _ => &GFP,
    }
}

/// Kernel basis read off a reduced row echelon form: one vector per free
/// column, with 1 at the free column.
fn null_basis_from_rref<T: Clone>(
    ncols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> T,
    neg: impl Fn(&T) -> T,
    zero: T,
    one: T,
) -> Vec<Vec<T>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !is_pivot[*c]) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = neg(&entry(r, free));
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|v| BigInt::from(*v)).collect())
            .collect()
    }

    fn apply(m: &[Vec<BigInt>], v: &[Elem], field: FieldSpec) -> Vec<Elem> {
        m.iter()
            .map(|row| {
                row.iter().zip(v).fold(field.zero(), |acc, (a, x)| {
                    field.add(&acc, &field.mul(&field.from_bigint(a), x))
                })
            })
            .collect()
    }

    #[test]
    fn registry_lookup_and_defaults() {
        let reg = SolverRegistry::builtin();
        assert_eq!(
            reg.names(),
            vec!["gf2-bitset", "gfp-dense", "rational-bareiss", "modular-screen"]
        );
        assert_eq!(reg.default_for(FieldSpec::gf2()).unwrap().name(), "gf2-bitset");
        assert_eq!(reg.default_for(FieldSpec::rationals()).unwrap().name(), "rational-bareiss");
        assert_eq!(reg.default_for(FieldSpec::new(5).unwrap()).unwrap().name(), "gfp-dense");
        assert!(matches!(reg.get("nope"), Err(Error::UnknownName { .. })));
        assert!(reg.get("gf2-bitset").unwrap().check(FieldSpec::rationals()).is_err());
    }

    #[test]
    fn small_ranks_across_solvers() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let reg = SolverRegistry::builtin();
        let q = FieldSpec::rationals();
        assert_eq!(reg.get("rational-bareiss").unwrap().rank(&m, q).unwrap(), 2);
        assert_eq!(reg.get("modular-screen").unwrap().rank(&m, q).unwrap(), 2);
        // mod 2 the first row is (1,0,1), equal to the third row
        assert_eq!(reg.get("gf2-bitset").unwrap().rank(&m, FieldSpec::gf2()).unwrap(), 1);
        assert_eq!(reg.get("gfp-dense").unwrap().rank(&m, FieldSpec::gf2()).unwrap(), 1);
        assert_eq!(reg.get("gfp-dense").unwrap().rank(&m, FieldSpec::new(3).unwrap()).unwrap(), 2);
    }

    #[test]
    fn empty_shapes() {
        let reg = SolverRegistry::builtin();
        let m: Vec<Vec<BigInt>> = Vec::new();
        for name in reg.names() {
            let s = reg.get(name).unwrap();
            let f = if s.supports(FieldSpec::rationals()) { FieldSpec::rationals() } else { FieldSpec::gf2() };
            assert_eq!(s.rank(&m, f).unwrap(), 0);
            assert!(s.kernel(&m, f).unwrap().is_empty());
        }
    }

    fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
        (1usize..7, 1usize..8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r)
                .prop_map(|rows| rows.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn kernels_are_annihilated_and_complementary(m in matrix_strategy(), fi in 0usize..4) {
            let field = [FieldSpec::rationals(), FieldSpec::gf2(), FieldSpec::new(3).unwrap(), FieldSpec::new(7).unwrap()][fi];
            let reg = SolverRegistry::builtin();
            for name in reg.names() {
                let s = reg.get(name).unwrap();
                if !s.supports(field) { continue; }
                let rank = s.rank(&m, field).unwrap();
                let ker = s.kernel(&m, field).unwrap();
                prop_assert_eq!(rank + ker.len(), m.ncols(), "{}", name);
                for v in &ker {
                    prop_assert!(apply(&m, v, field).iter().all(|e| field.is_zero(e)));
                }
                // reduced echelon: leading entries are 1, strictly increasing,
                // and zero elsewhere in their column
                let leads: Vec<usize> = ker.iter().map(|v| v.iter().position(|e| !field.is_zero(e)).unwrap()).collect();
                for (i, l) in leads.iter().enumerate() {
                    prop_assert_eq!(&ker[i][*l], &field.one());
                    for (j, w) in ker.iter().enumerate() {
                        if j != i { prop_assert!(field.is_zero(&w[*l])); }
                    }
                    if i > 0 { prop_assert!(leads[i - 1] < *l); }
                }
            }
        }

        #[test]
        fn bareiss_agrees_with_gf_large_prime_bound(m in matrix_strategy()) {
            let q = RationalBareiss.rank(&m, FieldSpec::rationals()).unwrap();
            let p = GfpDense.rank(&m, FieldSpec::new(1_000_000_007).unwrap()).unwrap();
            prop_assert!(p <= q);
            let zero_cols = (0..m.ncols()).filter(|c| m.iter().all(|r| r[*c].is_zero())).count();
            prop_assert!(q <= m.ncols() - zero_cols);
        }
    }
}
