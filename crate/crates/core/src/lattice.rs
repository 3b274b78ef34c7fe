//! Lattice points of `dΔ` and the monomial dictionary.
//!
//! `v^α w^β T^d` is the monomial `x^i y^j z^k` with
//! `(i, j, k) = (s2·α − s3·β + a'd, −t·α − t3·β + b'd, u2·α + u·β + c'd)`,
//! so the degree-`d` monomials are exactly the integer points of `dΔ`.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{triangle, CurvePresentation, HalfPlane, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePoint {
    pub alpha: i64,
    pub beta: i64,
}

impl LatticePoint {
    pub const fn new(alpha: i64, beta: i64) -> Self {
        LatticePoint { alpha, beta }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeRegion {
    pub degree: u64,
    /// Ordered by `β` descending, then `α` ascending.
    pub points: Vec<LatticePoint>,
    pub interior: bool,
    pub triangle: Triangle,
}

impl LatticeRegion {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points on each horizontal row, top row first.
    pub fn row_profile(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut last = None;
        for p in &self.points {
            if last == Some(p.beta) {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
                last = Some(p.beta);
            }
        }
        out
    }

    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.points
            .binary_search_by(|q| p.beta.cmp(&q.beta).then(q.alpha.cmp(&p.alpha)))
            .ok()
    }

    /// One `alpha beta i j k` line per point.
    pub fn dump(&self, pres: &CurvePresentation) -> String {
        let mut out = String::new();
        for p in &self.points {
            let (i, j, k) = point_to_monomial(pres, *p, self.degree).expect("region point");
            let _ = writeln!(out, "{} {} {} {} {}", p.alpha, p.beta, i, j, k);
        }
        out
    }
}

/// Range of `α` allowed by one half-plane at fixed `β`, as `(lower, upper)`
/// bounds where `None` means unbounded on that side.
fn alpha_bounds(row: &HalfPlane, beta: i64, d: u64, strict: bool) -> Option<(Option<i128>, Option<i128>)> {
    let a = row.alpha as i128;
    let rest = row.beta as i128 * beta as i128 + row.constant as i128 * d as i128;
    if a == 0 {
        let ok = if strict { rest > 0 } else { rest >= 0 };
        return if ok { Some((None, None)) } else { None };
    }
    if a > 0 {
        // a·α >= -rest
        let lo = if strict {
            Integer::div_floor(&-rest, &a) + 1
        } else {
            Integer::div_ceil(&-rest, &a)
        };
        Some((Some(lo), None))
    } else {
        // |a|·α <= rest
        let m = -a;
        let hi = if strict {
            Integer::div_ceil(&rest, &m) - 1
        } else {
            Integer::div_floor(&rest, &m)
        };
        Some((None, Some(hi)))
    }
}

fn collect_points(pres: &CurvePresentation, d: u64, strict: bool) -> Result<LatticeRegion> {
    let tri = triangle(pres)?;
    let verts = tri.vertices(d);
    let beta_hi = verts.iter().map(|v| v.1).max().unwrap().floor().to_integer();
    let beta_lo = verts.iter().map(|v| v.1).min().unwrap().ceil().to_integer();
    let mut points = Vec::new();
    let mut beta = beta_hi;
    while beta >= beta_lo {
        let mut lo: Option<i128> = None;
        let mut hi: Option<i128> = None;
        let mut feasible = true;
        for row in &tri.rows {
            match alpha_bounds(row, beta as i64, d, strict) {
                None => {
                    feasible = false;
                    break;
                }
                Some((l, h)) => {
                    if let Some(l) = l {
                        lo = Some(lo.map_or(l, |x| x.max(l)));
                    }
                    if let Some(h) = h {
                        hi = Some(hi.map_or(h, |x| x.min(h)));
                    }
                }
            }
        }
        if feasible {
            let (lo, hi) = (lo.expect("bounded triangle"), hi.expect("bounded triangle"));
            for alpha in lo..=hi {
                points.push(LatticePoint::new(alpha as i64, beta as i64));
            }
        }
        beta -= 1;
    }
    Ok(LatticeRegion {
        degree: d,
        points,
        interior: strict,
        triangle: tri,
    })
}

/// All integer points of `dΔ`.
pub fn enumerate_points(pres: &CurvePresentation, d: u64) -> Result<LatticeRegion> {
    collect_points(pres, d, false)
}

/// Integer points strictly inside `dΔ`.
pub fn interior_points(pres: &CurvePresentation, d: u64) -> Result<LatticeRegion> {
    collect_points(pres, d, true)
}

/// Exponents `(i, j, k)` of the monomial at `p ∈ dΔ`.
pub fn point_to_monomial(pres: &CurvePresentation, p: LatticePoint, d: u64) -> Result<(u64, u64, u64)> {
    let tri = triangle(pres)?;
    let e = tri.rows.map(|r| r.eval(p.alpha, p.beta, d));
    if e.iter().any(|&x| x < 0) {
        return Err(Error::OutsideRegion {
            alpha: p.alpha,
            beta: p.beta,
            degree: d,
            exponents: e,
        });
    }
    Ok((e[0] as u64, e[1] as u64, e[2] as u64))
}

/// Inverse of [`point_to_monomial`]: returns the point and the degree.
pub fn monomial_to_point(pres: &CurvePresentation, i: u64, j: u64, k: u64) -> Result<(LatticePoint, u64)> {
    let tri = triangle(pres)?;
    let d = pres.degree_of(i, j, k);
    let (p, q) = laurent_point(&tri, i as i64, j as i64, k as i64, d as i64)?;
    Ok((LatticePoint::new(p, q), d))
}

/// Solves for `(α, β)` given an exponent triple that may contain negative
/// entries (a Laurent monomial of degree `d`).
pub(crate) fn laurent_point(tri: &Triangle, i: i64, j: i64, k: i64, d: i64) -> Result<(i64, i64)> {
    let [r0, r1, r2] = tri.rows;
    let rhs0 = i as i128 - r0.constant as i128 * d as i128;
    let rhs1 = j as i128 - r1.constant as i128 * d as i128;
    let (a0, b0, a1, b1) = (r0.alpha as i128, r0.beta as i128, r1.alpha as i128, r1.beta as i128);
    let det = a0 * b1 - a1 * b0;
    let an = rhs0 * b1 - b0 * rhs1;
    let bn = a0 * rhs1 - a1 * rhs0;
    let bad = || {
        Error::Parse(format!(
            "exponents ({i}, {j}, {k}) do not define a lattice point of degree {d}"
        ))
    };
    if an % det != 0 || bn % det != 0 {
        return Err(bad());
    }
    let (alpha, beta) = ((an / det) as i64, (bn / det) as i64);
    if r2.eval(alpha, beta, d as u64) != k {
        return Err(bad());
    }
    Ok((alpha, beta))
}

/// Number of `(i, j, k) >= 0` with `a·i + b·j + c·k = d`.
pub fn denumerant(a: u64, b: u64, c: u64, d: u64) -> u64 {
    let mut count = 0;
    for k in 0..=d / c {
        let rest = d - k * c;
        for j in 0..=rest / b {
            if (rest - j * b).is_multiple_of(a) {
                count += 1;
            }
        }
    }
    count
}
