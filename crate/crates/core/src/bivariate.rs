//! Dense polynomials in `K[v]` and `K[v][w]`, enough for a bivariate GCD
//! by contents and primitive pseudo-remainder sequences.

use crate::exactmath::{Elem, FieldSpec};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    pub coeffs: Vec<Elem>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(field: FieldSpec, c: Elem) -> Self {
        UPoly::new(field, vec![c])
    }

    pub fn new(field: FieldSpec, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UPoly, field: FieldSpec) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = field.zero();
        let c = (0..n)
            .map(|i| {
                field.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        UPoly::new(field, c)
    }

    pub fn sub(&self, other: &UPoly, field: FieldSpec) -> UPoly {
        self.add(&other.scale(&field.from_i64(-1), field), field)
    }

    pub fn scale(&self, c: &Elem, field: FieldSpec) -> UPoly {
        UPoly::new(field, self.coeffs.iter().map(|x| field.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &UPoly, field: FieldSpec) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                c[i + j] = field.add(&c[i + j], &field.mul(x, y));
            }
        }
        UPoly::new(field, c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly, field: FieldSpec) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = field.inv(d.lead().unwrap()).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        let mut q = vec![field.zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = field.mul(r.last().unwrap(), &inv);
            for (i, y) in d.coeffs.iter().enumerate() {
                r[k + i] = field.sub(&r[k + i], &field.mul(&t, y));
            }
            q[k] = t;
            while r.last().is_some_and(|c| field.is_zero(c)) {
                r.pop();
            }
        }
        (UPoly::new(field, q), UPoly::new(field, r))
    }

    pub fn monic(&self, field: FieldSpec) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(&field.inv(l).expect("nonzero lead"), field),
        }
    }

    /// Monic GCD.
    pub fn gcd(&self, other: &UPoly, field: FieldSpec) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, field);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn eval(&self, x: &Elem, field: FieldSpec) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }
}

/// `Σ c_j(v) w^j`, lowest `w`-degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPoly {
    pub field: FieldSpec,
    pub coeffs: Vec<UPoly>,
}

impl BPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        BPoly { field, coeffs }
    }

    /// From `(v-exponent, w-exponent, coefficient)` triples with
    /// nonnegative exponents.
    pub fn from_terms(field: FieldSpec, terms: &[(usize, usize, Elem)]) -> Self {
        let dw = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let dv = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut grid = vec![vec![field.zero(); dv]; dw];
        for (i, j, c) in terms {
            grid[*j][*i] = field.add(&grid[*j][*i], c);
        }
        BPoly::new(field, grid.into_iter().map(|row| UPoly::new(field, row)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_w(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_v(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UPoly::degree).max()
    }

    /// GCD of the coefficients in `K[v]`, monic.
    pub fn content(&self) -> UPoly {
        let f = self.field;
        self.coeffs.iter().fold(UPoly::zero(), |g, c| g.gcd(c, f))
    }

    pub fn primitive_part(&self) -> BPoly {
        let cont = self.content();
        if cont.is_zero() {
            return self.clone();
        }
        let f = self.field;
        BPoly::new(f, self.coeffs.iter().map(|c| c.divrem(&cont, f).0).collect())
    }

    pub fn scale(&self, c: &UPoly) -> BPoly {
        BPoly::new(self.field, self.coeffs.iter().map(|x| x.mul(c, self.field)).collect())
    }

    /// Pseudo-remainder of `self` by `b` with respect to `w`.
    pub fn prem(&self, b: &BPoly) -> BPoly {
        let f = self.field;
        let db = b.degree_w().expect("nonzero divisor");
        let lb = b.coeffs[db].clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree_w() {
            if dr < db {
                break;
            }
            let lr = r.coeffs[dr].clone();
            let shift = dr - db;
            let mut next: Vec<UPoly> = r.coeffs.iter().map(|c| c.mul(&lb, f)).collect();
            for (i, c) in b.coeffs.iter().enumerate() {
                next[i + shift] = next[i + shift].sub(&c.mul(&lr, f), f);
            }
            r = BPoly::new(f, next);
        }
        r
    }

    pub fn eval(&self, v: &Elem, w: &Elem) -> Elem {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, w), &c.eval(v, f)))
    }
}

/// GCD in `K[v][w]`, normalized to a monic content and primitive part.
pub fn gcd(a: &BPoly, b: &BPoly) -> BPoly {
    let field = a.field;
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let cont = a.content().gcd(&b.content(), field);
    let (mut p, mut q) = (a.primitive_part(), b.primitive_part());
    if p.degree_w() < q.degree_w() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = p.prem(&q);
        p = q;
        q = if r.is_zero() { r } else { r.primitive_part() };
    }
    let mut g = p.primitive_part();
    // make the leading coefficient monic in v
    if let Some(lead) = g.coeffs.last().and_then(|c| c.lead()).cloned() {
        let inv = field.inv(&lead).expect("nonzero");
        g = g.scale(&UPoly::constant(field, inv));
    }
    g.scale(&cont)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn bp(terms: &[(usize, usize, i64)]) -> BPoly {
        let f = q();
        let t: Vec<(usize, usize, Elem)> = terms.iter().map(|&(i, j, c)| (i, j, f.from_i64(c))).collect();
        BPoly::from_terms(f, &t)
    }

    fn mul(a: &BPoly, b: &BPoly) -> BPoly {
        let f = a.field;
        let mut out = vec![UPoly::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y, f), f);
            }
        }
        BPoly::new(f, out)
    }

    #[test]
    fn univariate_gcd() {
        let f = q();
        // (v - 1)(v + 2) and (v - 1)(v - 3)
        let a = UPoly::new(f, vec![f.from_i64(-2), f.from_i64(1), f.from_i64(1)]);
        let b = UPoly::new(f, vec![f.from_i64(3), f.from_i64(-4), f.from_i64(1)]);
        assert_eq!(a.gcd(&b, f), UPoly::new(f, vec![f.from_i64(-1), f.from_i64(1)]));
    }

    #[test]
    fn common_factor_is_found() {
        let h = bp(&[(0, 0, 1), (1, 1, 1), (2, 0, -3)]);
        let a = mul(&h, &bp(&[(0, 1, 2), (1, 0, 1)]));
        let b = mul(&h, &bp(&[(0, 2, 1), (3, 0, 1), (0, 0, 5)]));
        let g = gcd(&a, &b);
        assert_eq!(g.degree_w(), Some(1));
        assert_eq!(g.degree_v(), Some(2));
        // g is a scalar multiple of h
        assert!(a.prem(&g).is_zero());
    }

    #[test]
    fn coprime_pair_has_constant_gcd() {
        let a = bp(&[(0, 0, 1), (1, 1, 1)]);
        let b = bp(&[(0, 1, 1), (1, 0, -1), (0, 0, 7)]);
        let g = gcd(&a, &b);
        assert_eq!(g.degree_w(), Some(0));
        assert_eq!(g.degree_v(), Some(0));
    }

    #[test]
    fn content_in_v() {
        // (v + 1)·(w + v)
        let a = bp(&[(0, 1, 1), (1, 1, 1), (1, 0, 1), (2, 0, 1)]);
        let b = bp(&[(0, 0, 1), (1, 0, 1)]);
        let g = gcd(&a, &b);
        assert_eq!(g.degree_w(), Some(0));
        assert_eq!(g.degree_v(), Some(1));
    }
}
