//! Graded pieces `[p^(m)]_d` as kernels of the q-adic vanishing matrix.
//!
//! With `v = 1 + s`, `w = 1 + t`, a Laurent polynomial `Σ c·v^α w^β` lies in
//! `q^m = (v − 1, w − 1)^m` exactly when the coefficient of `s^p t^q`,
//! `Σ c·binom(α, p)·binom(β, q)`, vanishes for every `p + q < m`. Row
//! `(p, q)` of the matrix holds those binomial products, one column per
//! point of `dΔ`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{add_mod, binom_mod_p, binom_parity, binom_row, mul_mod, Elem, FieldSpec};
use crate::lattice::{denumerant, enumerate_points, monomial_to_point, point_to_monomial, LatticeRegion};
use crate::linalg::{default_solver, BitMatrix, IntegerMatrix, KernelSolver};
use crate::poly::{Monomial, SparsePoly};
use crate::presentation::CurvePresentation;

/// Row labels `(p, q)` with `p + q < m`, by total degree then `p`.
pub fn condition_rows(m: u64) -> Vec<(u64, u64)> {
    let mut rows = Vec::with_capacity((m * (m + 1) / 2) as usize);
    for total in 0..m {
        for p in 0..=total {
            rows.push((p, total - p));
        }
    }
    rows
}

#[derive(Debug, Clone)]
pub struct QAdicSystem {
    pub region: LatticeRegion,
    pub order: u64,
    pub field: FieldSpec,
    pub rows: Vec<(u64, u64)>,
}

impl QAdicSystem {
    pub fn new(pres: &CurvePresentation, field: FieldSpec, m: u64, d: u64) -> Result<Self> {
        let region = enumerate_points(pres, d)?;
        Ok(Self::from_region(region, field, m))
    }

    pub fn from_region(region: LatticeRegion, field: FieldSpec, m: u64) -> Self {
        QAdicSystem {
            region,
            order: m,
            field,
            rows: condition_rows(m),
        }
    }

    fn columns_int(&self) -> Vec<(Vec<BigInt>, Vec<BigInt>)> {
        let m = self.order as usize;
        self.region
            .points
            .iter()
            .map(|p| (binom_row(p.alpha, m), binom_row(p.beta, m)))
            .collect()
    }

    /// Row-major text dump: integers in characteristic 0, residues (bits
    /// for GF(2)) otherwise.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        match self.field.characteristic() {
            0 => {
                for row in self.dense_int() {
                    let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(out, "{}", line.join(" "));
                }
            }
            2 => {
                let m = self.dense_gf2();
                for r in 0..m.rows() {
                    let line: String = (0..m.cols()).map(|c| if m.get(r, c) { '1' } else { '0' }).collect();
                    let _ = writeln!(out, "{line}");
                }
            }
            p => {
                for row in self.dense_mod(p) {
                    let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(out, "{}", line.join(" "));
                }
            }
        }
        out
    }
}

impl IntegerMatrix for QAdicSystem {
    fn nrows(&self) -> usize {
        self.rows.len()
    }

    fn ncols(&self) -> usize {
        self.region.len()
    }

    fn entry(&self, row: usize, col: usize) -> BigInt {
        let (p, q) = self.rows[row];
        let pt = self.region.points[col];
        crate::exactmath::binom(pt.alpha, p) * crate::exactmath::binom(pt.beta, q)
    }

    fn dense_int(&self) -> Vec<Vec<BigInt>> {
        let cols = self.columns_int();
        self.rows
            .iter()
            .map(|&(p, q)| {
                cols.iter()
                    .map(|(ba, bb)| &ba[p as usize] * &bb[q as usize])
                    .collect()
            })
            .collect()
    }

    fn dense_mod(&self, modulus: u64) -> Vec<Vec<u64>> {
        let m = self.order;
        let cols: Vec<(Vec<u64>, Vec<u64>)> = self
            .region
            .points
            .iter()
            .map(|pt| {
                (
                    (0..m).map(|k| binom_mod_p(pt.alpha, k, modulus)).collect(),
                    (0..m).map(|k| binom_mod_p(pt.beta, k, modulus)).collect(),
                )
            })
            .collect();
        self.rows
            .iter()
            .map(|&(p, q)| {
                cols.iter()
                    .map(|(ba, bb)| mul_mod(ba[p as usize], bb[q as usize], modulus))
                    .collect()
            })
            .collect()
    }

    fn dense_gf2(&self) -> BitMatrix {
        let mut out = BitMatrix::new(self.rows.len(), self.region.len());
        for (c, pt) in self.region.points.iter().enumerate() {
            let pa: Vec<bool> = (0..self.order).map(|k| binom_parity(pt.alpha, k)).collect();
            let pb: Vec<bool> = (0..self.order).map(|k| binom_parity(pt.beta, k)).collect();
            for (r, &(p, q)) in self.rows.iter().enumerate() {
                if pa[p as usize] && pb[q as usize] {
                    out.set(r, c);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedPieceBasis {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub characteristic: u64,
    pub order: u64,
    pub degree: u64,
    pub dimension: u64,
    #[serde(serialize_with = "serialize_polys")]
    pub basis: Vec<SparsePoly>,
}

fn serialize_polys<S: serde::Serializer>(polys: &[SparsePoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(polys.len()))?;
    for p in polys {
        seq.serialize_element(&p.to_string())?;
    }
    seq.end()
}

/// `dim [p^(m)]_d` with the registry default solver for `field`.
pub fn graded_dim(pres: &CurvePresentation, field: FieldSpec, m: u64, d: u64) -> Result<u64> {
    graded_dim_with(default_solver(field), pres, field, m, d)
}

pub fn graded_dim_with(
    solver: &dyn KernelSolver,
    pres: &CurvePresentation,
    field: FieldSpec,
    m: u64,
    d: u64,
) -> Result<u64> {
    let sys = QAdicSystem::new(pres, field, m, d)?;
    if m == 0 || sys.region.is_empty() {
        return Ok(sys.region.len() as u64);
    }
    let rank = solver.rank(&sys, field)?;
    Ok((sys.region.len() - rank) as u64)
}

pub fn graded_basis(pres: &CurvePresentation, field: FieldSpec, m: u64, d: u64) -> Result<GradedPieceBasis> {
    graded_basis_with(default_solver(field), pres, field, m, d)
}

pub fn graded_basis_with(
    solver: &dyn KernelSolver,
    pres: &CurvePresentation,
    field: FieldSpec,
    m: u64,
    d: u64,
) -> Result<GradedPieceBasis> {
    let sys = QAdicSystem::new(pres, field, m, d)?;
    let kernel = solver.kernel(&sys, field)?;
    let mut basis = Vec::with_capacity(kernel.len());
    for v in kernel {
        let mut poly = SparsePoly::zero(field);
        for (c, coeff) in v.iter().enumerate() {
            if field.is_zero(coeff) {
                continue;
            }
            let (i, j, k) = point_to_monomial(pres, sys.region.points[c], d)?;
            poly.add_term(Monomial::new(i as u32, j as u32, k as u32), coeff);
        }
        basis.push(poly);
    }
    Ok(GradedPieceBasis {
        a: pres.a,
        b: pres.b,
        c: pres.c,
        characteristic: field.characteristic(),
        order: m,
        degree: d,
        dimension: basis.len() as u64,
        basis,
    })
}

/// Whether `poly ∈ [p^(m)]_d`, `d` being the degree of `poly`.
pub fn membership(pres: &CurvePresentation, field: FieldSpec, poly: &SparsePoly, m: u64) -> Result<bool> {
    if poly.field() != field {
        return Err(Error::FieldMismatch(field.characteristic(), poly.field().characteristic()));
    }
    pres.require_non_ci()?;
    let Some(_) = poly.degree(pres.weights())? else {
        return Ok(true);
    };
    if m == 0 {
        return Ok(true);
    }
    let mut pts = Vec::with_capacity(poly.len());
    for (mono, coeff) in poly.terms() {
        let [i, j, k] = mono.0;
        let (pt, _) = monomial_to_point(pres, i as u64, j as u64, k as u64)?;
        pts.push((pt, coeff.clone()));
    }
    let rows = condition_rows(m);
    match field.characteristic() {
        0 => {
            let tables: Vec<(Vec<BigInt>, Vec<BigInt>, BigRational)> = pts
                .iter()
                .map(|(pt, c)| {
                    let Elem::Rat(r) = c else { unreachable!() };
                    (binom_row(pt.alpha, m as usize), binom_row(pt.beta, m as usize), r.clone())
                })
                .collect();
            for (p, q) in rows {
                let mut acc = BigRational::zero();
                for (ba, bb, c) in &tables {
                    let prod = &ba[p as usize] * &bb[q as usize];
                    if !prod.is_zero() {
                        acc += c * BigRational::from_integer(prod);
                    }
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        2 => {
            // bit p of the masks = parity of binom(α, p)
            let words = (m as usize).div_ceil(64);
            let masks: Vec<(Vec<u64>, Vec<u64>)> = pts
                .iter()
                .map(|(pt, _)| {
                    let mut ma = vec![0u64; words];
                    let mut mb = vec![0u64; words];
                    for k in 0..m {
                        if binom_parity(pt.alpha, k) {
                            ma[(k / 64) as usize] |= 1 << (k % 64);
                        }
                        if binom_parity(pt.beta, k) {
                            mb[(k / 64) as usize] |= 1 << (k % 64);
                        }
                    }
                    (ma, mb)
                })
                .collect();
            let bit = |v: &[u64], k: u64| v[(k / 64) as usize] >> (k % 64) & 1;
            for (p, q) in rows {
                let mut acc = 0u64;
                for (ma, mb) in &masks {
                    acc ^= bit(ma, p) & bit(mb, q);
                }
                if acc != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        pm => {
            let tables: Vec<(Vec<u64>, Vec<u64>, u64)> = pts
                .iter()
                .map(|(pt, c)| {
                    let Elem::Mod(v) = c else { unreachable!() };
                    (
                        (0..m).map(|k| binom_mod_p(pt.alpha, k, pm)).collect(),
                        (0..m).map(|k| binom_mod_p(pt.beta, k, pm)).collect(),
                        *v,
                    )
                })
                .collect();
            for (p, q) in rows {
                let mut acc = 0u64;
                for (ba, bb, c) in &tables {
                    acc = add_mod(acc, mul_mod(mul_mod(ba[p as usize], bb[q as usize], pm), *c, pm), pm);
                }
                if acc != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `r(r+1)/2 − dim S_d`: a lower bound for `h^1(dH − rE)` that needs no
/// linear algebra.
pub fn h1_lower_bound(pres: &CurvePresentation, d: u64, r: u64) -> i64 {
    (r * (r + 1) / 2) as i64 - denumerant(pres.a, pres.b, pres.c, d) as i64
}

/// `h^1(O_Y(dH − rE)) = r(r+1)/2 − dim S_d + dim [p^(r)]_d`.
pub fn h1_dim(pres: &CurvePresentation, field: FieldSpec, d: u64, r: u64) -> Result<u64> {
    let value = h1_lower_bound(pres, d, r) + graded_dim(pres, field, r, d)? as i64;
    if value < 0 {
        return Err(Error::NegativeH1 {
            degree: d,
            order: r,
            value,
        });
    }
    Ok(value as u64)
}

/// The rationality test `[p^(r0−1)]_{d0−a−b−c} = 0` for the proper
/// transform of a curve of type `(r0, d0)`.
pub fn genus_check(pres: &CurvePresentation, field: FieldSpec, r0: u64, d0: u64) -> Result<bool> {
    let sum = pres.weight_sum();
    if d0 <= sum {
        return Err(Error::DegreeTooSmall { d0, sum });
    }
    if r0 < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: r0 });
    }
    Ok(graded_dim(pres, field, r0 - 1, d0 - sum)? == 0)
}
