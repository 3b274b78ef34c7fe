//! Exact arithmetic: big integers, rationals, prime fields and generalized
//! binomial coefficients `binom(n, k)` with a possibly negative upper index.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field: the rationals (characteristic 0) or GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
}

/// Element of a [`FieldSpec`]. GF(p) values are canonical in `[0, p)`,
/// rationals are kept in lowest terms by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn gf2() -> Self {
        FieldSpec { characteristic: 2 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Elem {
        match self.characteristic {
            0 => Elem::Rat(BigRational::zero()),
            _ => Elem::Mod(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self.characteristic {
            0 => Elem::Rat(BigRational::one()),
            _ => Elem::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self.characteristic {
            0 => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
            p => Elem::Mod((v as i128).rem_euclid(p as i128) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self.characteristic {
            0 => Elem::Rat(BigRational::from_integer(v.clone())),
            p => {
                let r = v.mod_floor(&BigInt::from(p));
                Elem::Mod(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    pub fn from_rational(&self, v: &BigRational) -> Option<Elem> {
        match self.characteristic {
            0 => Some(Elem::Rat(v.clone())),
            _ => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = self.inv(&den)?;
                Some(self.mul(&num, &inv))
            }
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(v) => *v == 0,
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (x, y) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Mod(a), Elem::Mod(b)) => Elem::Mod(add_mod(*a, *b, self.characteristic)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match x {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Mod(0) => Elem::Mod(0),
            Elem::Mod(a) => Elem::Mod(self.characteristic - a),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (x, y) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Mod(a), Elem::Mod(b)) => Elem::Mod(mul_mod(*a, *b, self.characteristic)),
            _ => panic!("mixed field elements"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: &Elem) -> Option<Elem> {
        if self.is_zero(x) {
            return None;
        }
        match x {
            Elem::Rat(a) => Some(Elem::Rat(a.recip())),
            Elem::Mod(a) => Some(Elem::Mod(inv_mod(*a, self.characteristic)?)),
        }
    }

    pub fn pow(&self, x: &Elem, mut n: u64) -> Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "GF({p})"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => write!(f, "{r}"),
            Elem::Mod(v) => write!(f, "{v}"),
        }
    }
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut n: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        n >>= 1;
    }
    acc
}

/// Inverse modulo `p` by extended Euclid.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % p as i128, p as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(p as i128) as u64)
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A generalized binomial coefficient `binom(upper, lower)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenBinomial {
    pub upper: i64,
    pub lower: u64,
}

impl GenBinomial {
    pub fn value(&self) -> BigInt {
        binom(self.upper, self.lower)
    }

    pub fn reduce(&self, field: FieldSpec) -> Elem {
        binom_mod(self.upper, self.lower, field)
    }
}

/// `upper·(upper−1)···(upper−lower+1) / lower!` as an exact integer.
///
/// Each partial quotient is itself a binomial coefficient, so every
/// division below is exact.
pub fn binom(upper: i64, lower: u64) -> BigInt {
    if upper >= 0 && lower > upper as u64 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let n = BigInt::from(upper);
    for i in 0..lower {
        acc *= &n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// All of `binom(upper, 0), ..., binom(upper, count-1)` in one pass.
pub fn binom_row(upper: i64, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut acc = BigInt::one();
    let n = BigInt::from(upper);
    for i in 0..count as u64 {
        out.push(acc.clone());
        acc *= &n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    out
}

/// `binom(upper, lower)` reduced into `field`.
pub fn binom_mod(upper: i64, lower: u64, field: FieldSpec) -> Elem {
    match field.characteristic() {
        0 => Elem::Rat(BigRational::from_integer(binom(upper, lower))),
        p => Elem::Mod(binom_mod_p(upper, lower, p)),
    }
}

/// Parity of `binom(upper, lower)`; negative uppers use
/// `binom(n, k) = (-1)^k binom(k - n - 1, k)`.
#[inline]
pub fn binom_parity(upper: i64, lower: u64) -> bool {
    if upper >= 0 {
        let n = upper as u64;
        n & lower == lower
    } else {
        let n = (lower as i128 - upper as i128 - 1) as u64;
        n & lower == lower
    }
}

/// `binom(upper, lower) mod p` via Lucas' theorem.
pub fn binom_mod_p(upper: i64, lower: u64, p: u64) -> u64 {
    if p == 2 {
        return binom_parity(upper, lower) as u64;
    }
    let (n, negate) = if upper >= 0 {
        (upper as u128, false)
    } else {
        ((lower as i128 - upper as i128 - 1) as u128, lower % 2 == 1)
    };
    let mut k = lower as u128;
    let mut n = n;
    let pp = p as u128;
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = ((n % pp) as u64, (k % pp) as u64);
        if kd > nd {
            return 0;
        }
        acc = mul_mod(acc, small_binom_mod(nd, kd, p), p);
        n /= pp;
        k /= pp;
    }
    if negate && acc != 0 {
        p - acc
    } else {
        acc
    }
}

fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = mul_mod(num, (n - i) % p, p);
        den = mul_mod(den, (i + 1) % p, p);
    }
    mul_mod(num, inv_mod(den, p).expect("k! is a unit for k < p"), p)
}

/// Integer square-free comparison helper: `num/den < sqrt(n)` by
/// cross-multiplication.
pub fn ratio_below_sqrt(num: u64, den: u64, n: u64) -> bool {
    (num as u128) * (num as u128) < (n as u128) * (den as u128) * (den as u128)
}

pub fn bigint_bits(v: &BigInt) -> u64 {
    v.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(-1, 3), BigInt::from(-1));
        assert_eq!(binom(7, 0), BigInt::one());
        assert_eq!(binom(-9, 0), BigInt::one());
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn binom_mod_examples() {
        let gf2 = FieldSpec::gf2();
        assert_eq!(binom_mod(413, 1, gf2), Elem::Mod(1));
        assert_eq!(binom_mod(-1, 3, gf2), Elem::Mod(1));
        assert_eq!(
            binom_mod(28, 2, FieldSpec::rationals()),
            Elem::Rat(BigRational::from_integer(BigInt::from(378)))
        );
    }

    #[test]
    fn lucas_parity_matches_pascal_triangle() {
        let mut row = vec![1u8];
        for n in 0..=64u64 {
            for k in 0..=n {
                assert_eq!(binom_parity(n as i64, k) as u8, row[k as usize], "n={n} k={k}");
            }
            let mut next = vec![1u8; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] ^ row[k];
            }
            row = next;
        }
    }

    #[test]
    fn large_upper_index_exceeds_u128() {
        let v = binom(17407, 59);
        assert!(v.bits() > 128);
        let r = binom_row(17407, 60);
        assert_eq!(r[59], v);
    }

    #[test]
    fn gf_p_inverses_exhaustive() {
        for p in [2u64, 3, 5, 7, 11, 13, 17] {
            let f = FieldSpec::new(p).unwrap();
            for x in 1..p {
                let e = Elem::Mod(x);
                let inv = f.inv(&e).unwrap();
                assert_eq!(f.mul(&e, &inv), f.one(), "p={p} x={x}");
            }
            assert!(f.inv(&Elem::Mod(0)).is_none());
        }
    }

    #[test]
    fn gf_p_ring_axioms_exhaustive() {
        for p in [2u64, 3, 5, 7] {
            let f = FieldSpec::new(p).unwrap();
            let all: Vec<Elem> = (0..p).map(Elem::Mod).collect();
            for x in &all {
                for y in &all {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in &all {
                        assert_eq!(f.mul(x, &f.add(y, z)), f.add(&f.mul(x, y), &f.mul(x, z)));
                        assert_eq!(f.add(x, &f.add(y, z)), f.add(&f.add(x, y), z));
                    }
                }
                assert!(f.is_zero(&f.add(x, &f.neg(x))));
            }
        }
    }

    #[test]
    fn field_spec_rejects_composites() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(4611686018427387847).is_ok());
    }

    #[test]
    fn primality_small_range() {
        let sieve: Vec<u64> = (2..2000u64)
            .filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0))
            .collect();
        let fast: Vec<u64> = (2..2000u64).filter(|n| is_prime(*n)).collect();
        assert_eq!(sieve, fast);
    }

    #[test]
    fn ext_gcd_small() {
        assert_eq!(ext_gcd(2, 3), (1, -1, 1));
        let (g, x, y) = ext_gcd(5, 103);
        assert_eq!(g, 1);
        assert_eq!(5 * x + 103 * y, 1);
    }

    proptest! {
        #[test]
        fn pascal_identity(n in -50i64..=50, k in 1u64..=20) {
            prop_assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
        }

        #[test]
        fn binom_vanishes_above_upper(n in 0i64..60, extra in 1u64..30) {
            prop_assert!(binom(n, n as u64 + extra).is_zero());
        }

        #[test]
        fn lucas_matches_exact_reduction(n in -300i64..300, k in 0u64..25, pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 1_000_000_007][pi];
            let exact = binom(n, k).mod_floor(&BigInt::from(p)).to_u64().unwrap();
            prop_assert_eq!(binom_mod_p(n, k, p), exact);
        }
    }
}
