//! Herzog presentation of the space monomial prime `p_K(a,b,c)`.
//!
//! In the three-generator case the prime is generated by the 2-minors of
//!
//! ```text
//!   x^s2  y^t3  z^u1
//!   y^t1  z^u2  x^s3
//! ```
//!
//! with `s = s2 + s3`, `t = t1 + t3`, `u = u1 + u2`.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::ext_gcd;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CurvePresentation {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub s2: u64,
    pub s3: u64,
    pub t1: u64,
    pub t3: u64,
    pub u1: u64,
    pub u2: u64,
    pub s: u64,
    pub t: u64,
    pub u: u64,
    /// Unit exponents `(a', b', c')` with `a'a + b'b + c'c = 1`.
    pub a_p: i64,
    pub b_p: i64,
    pub c_p: i64,
    /// Set when the prime is a complete intersection (two generators).
    pub ci: bool,
}

/// One affine inequality `A·α + B·β + C·d >= 0` of the scaled triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HalfPlane {
    pub alpha: i64,
    pub beta: i64,
    pub constant: i64,
}

impl HalfPlane {
    /// Value of the left-hand side at `(alpha, beta)` in `d·Δ`.
    pub fn eval(&self, alpha: i64, beta: i64, d: u64) -> i64 {
        self.alpha * alpha + self.beta * beta + self.constant * d as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Triangle {
    /// Rows in the fixed order `(s2, −s3, a')`, `(−t, −t3, b')`, `(u2, u, c')`.
    pub rows: [HalfPlane; 3],
}

pub type Q128 = Ratio<i128>;

impl Triangle {
    /// Vertices of `d·Δ`; vertex `k` is opposite to row `k`.
    pub fn vertices(&self, d: u64) -> [(Q128, Q128); 3] {
        let meet = |i: usize, j: usize| -> (Q128, Q128) {
            let (r1, r2) = (self.rows[i], self.rows[j]);
            let (a1, b1, c1) = (r1.alpha as i128, r1.beta as i128, r1.constant as i128 * d as i128);
            let (a2, b2, c2) = (r2.alpha as i128, r2.beta as i128, r2.constant as i128 * d as i128);
            let det = a1 * b2 - a2 * b1;
            let x = Q128::new(-c1 * b2 + c2 * b1, det);
            let y = Q128::new(-a1 * c2 + a2 * c1, det);
            (x, y)
        };
        [meet(1, 2), meet(0, 2), meet(0, 1)]
    }

    /// Exact area of `d·Δ`.
    pub fn area(&self, d: u64) -> Q128 {
        let [(x0, y0), (x1, y1), (x2, y2)] = self.vertices(d);
        let twice = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
        let twice = if twice < Q128::from_integer(0) { -twice } else { twice };
        twice / Q128::from_integer(2)
    }
}

fn check_weights(a: u64, b: u64, c: u64) -> Result<()> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::NonPositiveWeight(a, b, c));
    }
    if a.gcd(&b) != 1 || b.gcd(&c) != 1 || a.gcd(&c) != 1 {
        return Err(Error::NotPairwiseCoprime(a, b, c));
    }
    Ok(())
}

/// Smallest `n >= 1` with `n·w` in the semigroup `<p, q>`, together with the
/// witness `n·w = i·p + j·q` of minimal `i`.
fn minimal_relation(w: u64, p: u64, q: u64) -> (u64, u64, u64) {
    let mut n = 1;
    loop {
        let target = n * w;
        let mut i = 0;
        while i * p <= target {
            let rest = target - i * p;
            if rest.is_multiple_of(q) {
                return (n, i, rest / q);
            }
            i += 1;
        }
        n += 1;
    }
}

/// `(a', b', c')` with `a'a + b'b + c'c = 1`: extended Euclid on `(a, b)`,
/// then on `(gcd(a,b), c)`, composed; `b'` is then reduced modulo the
/// syzygy `(0, c, −b)` to minimal absolute value (ties to the smaller value).
pub fn unit_exponents(a: u64, b: u64, c: u64) -> Result<(i64, i64, i64)> {
    check_weights(a, b, c)?;
    let (g1, x1, y1) = ext_gcd(a as i128, b as i128);
    let (g2, x2, y2) = ext_gcd(g1, c as i128);
    debug_assert_eq!(g2, 1);
    let a_p = x1 * x2;
    let mut b_p = y1 * x2;
    let mut c_p = y2;
    // Shift along (0, c, -b) so |b'| is minimal.
    let (bi, ci) = (b as i128, c as i128);
    let k = Integer::div_floor(&b_p, &ci);
    b_p -= k * ci;
    c_p += k * bi;
    // b_p in [0, c); the other candidate is b_p - c. Ties go to the smaller.
    if b_p >= ci - b_p {
        b_p -= ci;
        c_p += bi;
    }
    debug_assert_eq!(a_p * a as i128 + b_p * bi + c_p * ci, 1);
    Ok((a_p as i64, b_p as i64, c_p as i64))
}

/// Herzog exponents of `p_K(a,b,c)`.
pub fn herzog_present(a: u64, b: u64, c: u64) -> Result<CurvePresentation> {
    check_weights(a, b, c)?;
    let (s, t1, u1) = minimal_relation(a, b, c);
    let (t, s2, u2) = minimal_relation(b, a, c);
    let (u, s3, t3) = minimal_relation(c, a, b);
    let (a_p, b_p, c_p) = unit_exponents(a, b, c)?;
    let ci = [s2, s3, t1, t3, u1, u2].contains(&0)
        || s != s2 + s3
        || t != t1 + t3
        || u != u1 + u2;
    Ok(CurvePresentation {
        a,
        b,
        c,
        s2,
        s3,
        t1,
        t3,
        u1,
        u2,
        s,
        t,
        u,
        a_p,
        b_p,
        c_p,
        ci,
    })
}

impl CurvePresentation {
    pub fn weights(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }

    pub fn abc(&self) -> u64 {
        self.a * self.b * self.c
    }

    pub fn weight_sum(&self) -> u64 {
        self.a + self.b + self.c
    }

    pub fn degree_of(&self, i: u64, j: u64, k: u64) -> u64 {
        self.a * i + self.b * j + self.c * k
    }

    pub fn require_non_ci(&self) -> Result<()> {
        if self.ci {
            Err(Error::CompleteIntersection(self.a, self.b, self.c))
        } else {
            Ok(())
        }
    }

    /// Same presentation with another valid unit-exponent triple.
    pub fn with_unit_exponents(&self, a_p: i64, b_p: i64, c_p: i64) -> Result<Self> {
        let lhs = a_p as i128 * self.a as i128 + b_p as i128 * self.b as i128 + c_p as i128 * self.c as i128;
        if lhs != 1 {
            return Err(Error::Parse(format!(
                "({a_p}, {b_p}, {c_p}) does not satisfy a'a + b'b + c'c = 1"
            )));
        }
        Ok(CurvePresentation {
            a_p,
            b_p,
            c_p,
            ..self.clone()
        })
    }

    /// Shifts the unit exponents by `k1·e(v) + k2·e(w)`, where `e(v)`,
    /// `e(w)` are the exponent vectors of the degree-0 monomials `v`, `w`.
    pub fn shifted_unit_exponents(&self, k1: i64, k2: i64) -> Self {
        let (s2, s3, t, t3, u2, u) = (
            self.s2 as i64,
            self.s3 as i64,
            self.t as i64,
            self.t3 as i64,
            self.u2 as i64,
            self.u as i64,
        );
        CurvePresentation {
            a_p: self.a_p + k1 * s2 - k2 * s3,
            b_p: self.b_p - k1 * t - k2 * t3,
            c_p: self.c_p + k1 * u2 + k2 * u,
            ..self.clone()
        }
    }

    /// The three generators as exponent pairs `(lhs, rhs)` of binomials
    /// `lhs − rhs`: `x^s − y^t1 z^u1`, `y^t − z^u2 x^s2`, `z^u − x^s3 y^t3`.
    pub fn generator_exponents(&self) -> [([u64; 3], [u64; 3]); 3] {
        [
            ([self.s, 0, 0], [0, self.t1, self.u1]),
            ([0, self.t, 0], [self.s2, 0, self.u2]),
            ([0, 0, self.u], [self.s3, self.t3, 0]),
        ]
    }
}

/// Defining inequalities of Δ.
pub fn triangle(pres: &CurvePresentation) -> Result<Triangle> {
    pres.require_non_ci()?;
    Ok(Triangle {
        rows: [
            HalfPlane {
                alpha: pres.s2 as i64,
                beta: -(pres.s3 as i64),
                constant: pres.a_p,
            },
            HalfPlane {
                alpha: -(pres.t as i64),
                beta: -(pres.t3 as i64),
                constant: pres.b_p,
            },
            HalfPlane {
                alpha: pres.u2 as i64,
                beta: pres.u as i64,
                constant: pres.c_p,
            },
        ],
    })
}
