//! Sparse polynomials in `x, y, z` over a [`FieldSpec`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{add_mod, mul_mod, Elem, FieldSpec};

/// Exponent triple `(i, j, k)` of `x^i y^j z^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Monomial([i, j, k])
    }

    pub fn x(&self) -> u32 {
        self.0[0]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn degree(&self, w: (u64, u64, u64)) -> u64 {
        w.0 * self.0[0] as u64 + w.1 * self.0[1] as u64 + w.2 * self.0[2] as u64
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in ["x", "y", "z"].iter().zip(self.0) {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Elem>,
}

impl SparsePoly {
    pub fn zero(field: FieldSpec) -> Self {
        SparsePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(field, field.one(), Monomial::ONE)
    }

    pub fn constant(field: FieldSpec, c: i64) -> Self {
        Self::monomial(field, field.from_i64(c), Monomial::ONE)
    }

    pub fn monomial(field: FieldSpec, coeff: Elem, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&coeff) {
            terms.insert(m, coeff);
        }
        SparsePoly { field, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Elem)>>(field: FieldSpec, terms: I) -> Self {
        let mut p = SparsePoly::zero(field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: &Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_field(&self, other: &SparsePoly) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> SparsePoly {
        if self.field.is_zero(c) {
            return SparsePoly::zero(self.field);
        }
        SparsePoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, self.field.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> SparsePoly {
        SparsePoly {
            field: self.field,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(SparsePoly::zero(self.field));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            return Ok(large.mul_monomial(m).scale(c));
        }
        let p = self.field.characteristic();
        let terms: BTreeMap<Monomial, Elem> = if p == 0 {
            let mut acc: HashMap<Monomial, BigRational> =
                HashMap::with_capacity(self.len() * other.len() / 2);
            for (m1, c1) in &small.terms {
                let Elem::Rat(r1) = c1 else { unreachable!() };
                for (m2, c2) in &large.terms {
                    let Elem::Rat(r2) = c2 else { unreachable!() };
                    *acc.entry(m1.mul(m2)).or_insert_with(BigRational::zero) += r1 * r2;
                }
            }
            acc.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Elem::Rat(c)))
                .collect()
        } else {
            let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(large.len() * 4);
            for (m1, c1) in &small.terms {
                let Elem::Mod(v1) = c1 else { unreachable!() };
                for (m2, c2) in &large.terms {
                    let Elem::Mod(v2) = c2 else { unreachable!() };
                    let e = acc.entry(m1.mul(m2)).or_insert(0);
                    *e = if p == 2 { *e ^ 1 } else { add_mod(*e, mul_mod(*v1, *v2, p), p) };
                }
            }
            acc.into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (m, Elem::Mod(c)))
                .collect()
        };
        Ok(SparsePoly {
            field: self.field,
            terms,
        })
    }

    /// Squaring; in characteristic 2 this is the Frobenius map on terms.
    pub fn square(&self) -> SparsePoly {
        if self.field.characteristic() == 2 {
            return SparsePoly {
                field: self.field,
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (m.mul(m), c.clone()))
                    .collect(),
            };
        }
        self.mul(self).expect("same field")
    }

    pub fn pow(&self, mut n: u64) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = SparsePoly::one(self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Weighted degree; `None` for the zero polynomial.
    pub fn degree(&self, w: (u64, u64, u64)) -> Result<Option<u64>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(w);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::NotHomogeneous(e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Divides by `x^e`; every term must carry at least `x^e`.
    pub fn exact_div_x(&self, e: u32, context: &str) -> Result<SparsePoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[0] < e {
                return Err(Error::NotDivisible {
                    context: context.to_string(),
                    term: m.to_string(),
                    exponent: e as u64,
                });
            }
            terms.insert(Monomial([m.0[0] - e, m.0[1], m.0[2]]), c.clone());
        }
        Ok(SparsePoly {
            field: self.field,
            terms,
        })
    }

    /// The terms free of `x`, i.e. the image modulo `x`.
    pub fn mod_x(&self) -> SparsePoly {
        SparsePoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[0] == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms.keys().copied().collect()
    }

    /// Same polynomial read in another field (integer/rational
    /// coefficients are reduced).
    pub fn reduce_into(&self, field: FieldSpec) -> Option<SparsePoly> {
        let mut out = SparsePoly::zero(field);
        for (m, c) in &self.terms {
            let v = match c {
                Elem::Rat(r) => field.from_rational(r)?,
                Elem::Mod(v) => field.from_i64(*v as i64),
            };
            out.add_term(*m, &v);
        }
        Some(out)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = self.field.one();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = match c {
                Elem::Rat(r) if *r < BigRational::zero() => (true, Elem::Rat(-r)),
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_one = mag == one || matches!(&mag, Elem::Rat(r) if r.is_one());
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if is_one {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2() -> FieldSpec {
        FieldSpec::gf2()
    }

    fn naive_mul(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
        let field = f.field();
        let mut out = SparsePoly::zero(field);
        for (m1, c1) in f.terms() {
            for (m2, c2) in g.terms() {
                out.add_term(m1.mul(m2), &field.mul(c1, c2));
            }
        }
        out
    }

    fn poly_strategy(field: FieldSpec) -> impl Strategy<Value = SparsePoly> {
        proptest::collection::vec(((0u32..6, 0u32..6, 0u32..6), -3i64..4), 0..20).prop_map(move |ts| {
            SparsePoly::from_terms(
                field,
                ts.into_iter().map(|((i, j, k), c)| (Monomial::new(i, j, k), field.from_i64(c))),
            )
        })
    }

    #[test]
    fn self_sum_vanishes_over_gf2() {
        let f = SparsePoly::from_terms(
            gf2(),
            [(Monomial::new(0, 3, 0), Elem::Mod(1)), (Monomial::new(28, 0, 1), Elem::Mod(1))],
        );
        assert!(f.add(&f).unwrap().is_zero());
    }

    #[test]
    fn degree_is_additive() {
        let w = (5, 103, 169);
        let a01 = SparsePoly::from_terms(
            gf2(),
            [(Monomial::new(0, 3, 0), Elem::Mod(1)), (Monomial::new(28, 0, 1), Elem::Mod(1))],
        );
        let b01 = SparsePoly::from_terms(
            gf2(),
            [(Monomial::new(0, 0, 2), Elem::Mod(1)), (Monomial::new(47, 1, 0), Elem::Mod(1))],
        );
        assert_eq!(a01.degree(w).unwrap(), Some(309));
        assert_eq!(b01.degree(w).unwrap(), Some(338));
        assert_eq!(a01.mul(&b01).unwrap().degree(w).unwrap(), Some(647));
    }

    #[test]
    fn exact_division_by_x() {
        let f = SparsePoly::from_terms(
            gf2(),
            [(Monomial::new(3, 1, 0), Elem::Mod(1)), (Monomial::new(5, 0, 0), Elem::Mod(1))],
        );
        assert_eq!(f.exact_div_x(0, "id").unwrap(), f);
        let g = f.exact_div_x(3, "ok").unwrap();
        assert_eq!(g.monomials(), vec![Monomial::new(0, 1, 0), Monomial::new(2, 0, 0)]);
        let err = f.exact_div_x(4, "bad").unwrap_err();
        assert!(matches!(err, Error::NotDivisible { ref term, .. } if term == "x^3*y"));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let f = SparsePoly::one(gf2());
        let g = SparsePoly::one(FieldSpec::rationals());
        assert!(matches!(f.add(&g), Err(Error::FieldMismatch(2, 0))));
        assert!(matches!(f.mul(&g), Err(Error::FieldMismatch(2, 0))));
    }

    #[test]
    fn non_homogeneous_detected() {
        let f = SparsePoly::from_terms(
            gf2(),
            [(Monomial::new(1, 0, 0), Elem::Mod(1)), (Monomial::new(0, 1, 0), Elem::Mod(1))],
        );
        assert!(matches!(f.degree((5, 103, 169)), Err(Error::NotHomogeneous(..))));
    }

    #[test]
    fn display_is_readable() {
        let q = FieldSpec::rationals();
        let f = SparsePoly::from_terms(
            q,
            [(Monomial::new(0, 3, 0), q.from_i64(1)), (Monomial::new(28, 0, 1), q.from_i64(-2))],
        );
        assert_eq!(f.to_string(), "-2*x^28*z + y^3");
    }

    proptest! {
        #[test]
        fn mul_matches_naive_gf2(f in poly_strategy(FieldSpec::gf2()), g in poly_strategy(FieldSpec::gf2())) {
            prop_assert_eq!(f.mul(&g).unwrap(), naive_mul(&f, &g));
        }

        #[test]
        fn mul_matches_naive_rational(f in poly_strategy(FieldSpec::rationals()), g in poly_strategy(FieldSpec::rationals())) {
            prop_assert_eq!(f.mul(&g).unwrap(), naive_mul(&f, &g));
        }

        #[test]
        fn mul_matches_naive_gf7(f in poly_strategy(FieldSpec::new(7).unwrap()), g in poly_strategy(FieldSpec::new(7).unwrap())) {
            prop_assert_eq!(f.mul(&g).unwrap(), naive_mul(&f, &g));
        }

        #[test]
        fn pow_matches_repeated_mul(f in poly_strategy(FieldSpec::gf2()), n in 0u64..6) {
            let mut acc = SparsePoly::one(FieldSpec::gf2());
            for _ in 0..n {
                acc = naive_mul(&acc, &f);
            }
            prop_assert_eq!(f.pow(n), acc);
        }
    }
}
