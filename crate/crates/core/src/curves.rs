//! Negative curves, Huneke's condition and the `(r2, d2)` candidate test.

use num_integer::Integer;
use serde::Serialize;

use crate::bivariate::{gcd, BPoly};
use crate::error::{Error, Result};
use crate::exactmath::FieldSpec;
use crate::lattice::{denumerant, monomial_to_point};
use crate::linalg::{default_solver, KernelSolver, ModularScreen};
use crate::poly::SparsePoly;
use crate::presentation::CurvePresentation;
use crate::qadic::{genus_check, graded_basis, graded_dim_with, h1_dim, h1_lower_bound};

#[derive(Debug, Clone, Serialize)]
pub struct NegativeCurveWitness {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub characteristic: u64,
    pub r0: u64,
    pub d0: u64,
    /// `d0/r0` in lowest terms.
    pub slope: Fraction,
    pub dimension: u64,
    #[serde(serialize_with = "serialize_display")]
    pub basis_poly: SparsePoly,
}

/// A nonnegative rational in lowest terms, serialized as `{num, den}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        let g = num.gcd(&den).max(1);
        Fraction {
            num: num / g,
            den: den / g,
        }
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn serialize_display<S: serde::Serializer>(p: &SparsePoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Which of `(y,z)S`, `(z,x)S`, `(x,y)S` contain `f`: membership fails
/// exactly when a pure power of the remaining variable occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupportFlags {
    pub in_yz: bool,
    pub in_zx: bool,
    pub in_xy: bool,
}

impl SupportFlags {
    pub fn of(f: &SparsePoly) -> Self {
        let pure = |axis: usize| {
            f.monomials()
                .iter()
                .any(|m| (0..3).all(|v| v == axis || m.0[v] == 0))
        };
        SupportFlags {
            in_yz: !pure(0),
            in_zx: !pure(1),
            in_xy: !pure(2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HunekePair {
    pub r1: u64,
    pub d1: u64,
    pub r2: u64,
    pub d2: u64,
    pub coprime_checked: bool,
}

/// `d²  < abc·r²`, i.e. `d/r < √(abc)`.
pub fn below_sqrt_abc(abc: u64, r: u64, d: u64) -> bool {
    (d as u128) * (d as u128) < (abc as u128) * (r as u128) * (r as u128)
}

/// First `(r, d)` in the order `r = 1..max_order`, `d` ascending with
/// `d/r < √(abc)`, where `[p^(r)]_d ≠ 0`.
pub fn negative_curve_search(
    pres: &CurvePresentation,
    field: FieldSpec,
    max_order: u64,
) -> Result<NegativeCurveWitness> {
    pres.require_non_ci()?;
    if max_order < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: max_order });
    }
    let screen = ModularScreen::default();
    let solver: &dyn KernelSolver = if field.is_rational() { &screen } else { default_solver(field) };
    let (a, b, c) = pres.weights();
    let abc = pres.abc();
    for r in 1..=max_order {
        let mut d = 0;
        while below_sqrt_abc(abc, r, d) {
            if denumerant(a, b, c, d) > 0 && graded_dim_with(solver, pres, field, r, d)? > 0 {
                let basis = graded_basis(pres, field, r, d)?;
                return Ok(NegativeCurveWitness {
                    a,
                    b,
                    c,
                    characteristic: field.characteristic(),
                    r0: r,
                    d0: d,
                    slope: Fraction::new(d, r),
                    dimension: basis.dimension,
                    basis_poly: basis.basis[0].clone(),
                });
            }
            d += 1;
        }
    }
    Err(Error::NotFound { max_order })
}

/// `(d1/r1)·(d2/r2) = abc` without division.
pub fn huneke_ratio_check(abc: u64, (r1, d1): (u64, u64), (r2, d2): (u64, u64)) -> bool {
    (d1 as u128) * (d2 as u128) == (abc as u128) * (r1 as u128) * (r2 as u128)
}

/// Laurent image of a homogeneous polynomial, shifted to nonnegative
/// exponents with no monomial factor.
fn dehomogenize(pres: &CurvePresentation, f: &SparsePoly) -> Result<BPoly> {
    let mut pts = Vec::with_capacity(f.len());
    for (m, coeff) in f.terms() {
        let (p, _) = monomial_to_point(pres, m.0[0] as u64, m.0[1] as u64, m.0[2] as u64)?;
        pts.push((p.alpha, p.beta, coeff.clone()));
    }
    let amin = pts.iter().map(|t| t.0).min().unwrap_or(0);
    let bmin = pts.iter().map(|t| t.1).min().unwrap_or(0);
    let terms: Vec<_> = pts
        .into_iter()
        .map(|(al, be, c)| ((al - amin) as usize, (be - bmin) as usize, c))
        .collect();
    Ok(BPoly::from_terms(f.field(), &terms))
}

/// Whether `f, g` have no common factor in `S`: no shared variable factor
/// and a monomial GCD of their images in `K[v^±1, w^±1]`.
pub fn coprimality_check(pres: &CurvePresentation, f: &SparsePoly, g: &SparsePoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    pres.require_non_ci()?;
    let w = pres.weights();
    f.degree(w)?;
    g.degree(w)?;
    let divides = |p: &SparsePoly, v: usize| p.monomials().iter().all(|m| m.0[v] > 0);
    if (0..3).any(|v| divides(f, v) && divides(g, v)) {
        return Ok(false);
    }
    let h = gcd(&dehomogenize(pres, f)?, &dehomogenize(pres, g)?);
    Ok(h.degree_w() == Some(0) && h.degree_v() == Some(0))
}

/// Smallest `r2` (and its `d2`) with `d0·d2 = abc·r0·r2` and the
/// divisibility constraints attached to the support flags.
pub fn huneke_candidate(
    pres: &CurvePresentation,
    witness: &NegativeCurveWitness,
    flags: SupportFlags,
) -> Result<(u64, u64)> {
    let abc = pres.abc() as u128;
    let (r0, d0) = (witness.r0 as u128, witness.d0 as u128);
    let step = d0 / d0.gcd(&(abc * r0));
    let limit = step * abc;
    let mut r2 = step;
    while r2 <= limit {
        let d2 = abc * r0 * r2 / d0;
        let ok = (!flags.in_yz || d2.is_multiple_of(pres.a as u128))
            && (!flags.in_zx || d2.is_multiple_of(pres.b as u128))
            && (!flags.in_xy || d2.is_multiple_of(pres.c as u128));
        if ok {
            return Ok((r2 as u64, d2 as u64));
        }
        r2 += step;
    }
    Err(Error::NoCandidate { limit: limit as u64 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Check {
    pub ell: u64,
    pub r_prime: i64,
    pub d_prime: i64,
    /// `h^1` when it was needed; `None` when the sign of `r'` decides.
    pub h1: Option<u64>,
    /// True when `r'(r'+1)/2 > dim S_d'` already forces `h^1 > 0`.
    pub by_lower_bound: bool,
    pub vanishes: bool,
}

/// The vanishing of `H^1(O_Y(d2·H − r2·E − ℓC))`.
pub fn h1_condition_detail(
    pres: &CurvePresentation,
    field: FieldSpec,
    (r2, d2): (u64, u64),
    (r0, d0): (u64, u64),
    ell: u64,
) -> Result<H1Check> {
    if ell < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: ell });
    }
    let r_prime = r2 as i64 - (ell * r0) as i64;
    let d_prime = d2 as i64 - (ell * d0) as i64;
    let mut out = H1Check {
        ell,
        r_prime,
        d_prime,
        h1: None,
        by_lower_bound: false,
        vanishes: false,
    };
    if r_prime <= -2 {
        return Ok(out);
    }
    if r_prime <= 0 {
        out.vanishes = true;
        return Ok(out);
    }
    let r = r_prime as u64;
    if d_prime < 0 {
        // S_d' = 0, so h^1 = r'(r'+1)/2
        out.h1 = Some(r * (r + 1) / 2);
        out.by_lower_bound = true;
        return Ok(out);
    }
    let d = d_prime as u64;
    if h1_lower_bound(pres, d, r) > 0 {
        out.by_lower_bound = true;
        return Ok(out);
    }
    let h = h1_dim(pres, field, d, r)?;
    out.h1 = Some(h);
    out.vanishes = h == 0;
    Ok(out)
}

pub fn h1_condition(
    pres: &CurvePresentation,
    field: FieldSpec,
    pair2: (u64, u64),
    pair0: (u64, u64),
    ell: u64,
) -> Result<bool> {
    Ok(h1_condition_detail(pres, field, pair2, pair0, ell)?.vanishes)
}

/// `ℓ = 1..=ell_max`, stopping at the first vanishing.
pub fn h1_sweep(
    pres: &CurvePresentation,
    field: FieldSpec,
    pair2: (u64, u64),
    pair0: (u64, u64),
    ell_max: u64,
) -> Result<Vec<H1Check>> {
    let mut out = Vec::new();
    for ell in 1..=ell_max {
        let chk = h1_condition_detail(pres, field, pair2, pair0, ell)?;
        let done = chk.vanishes;
        out.push(chk);
        if done {
            break;
        }
    }
    Ok(out)
}

/// The JSON witness record of `huneke`.
#[derive(Debug, Clone, Serialize)]
pub struct HunekeRecord {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub r0: u64,
    pub d0: u64,
    pub slope: Fraction,
    pub support: SupportFlags,
    pub genus_ok: bool,
    pub r2: u64,
    pub d2: u64,
    pub ratio_ok: bool,
    pub ell: Option<u64>,
    pub h1_ok: bool,
    pub sweep: Vec<H1Check>,
}

/// Runs the whole chain in characteristic 0: negative curve search up to
/// `max_order`, genus check, candidate `(r2, d2)` and the `h^1` sweep.
pub fn huneke_record(pres: &CurvePresentation, max_order: u64, ell_max: u64) -> Result<HunekeRecord> {
    let q = FieldSpec::rationals();
    let w = negative_curve_search(pres, q, max_order)?;
    let support = SupportFlags::of(&w.basis_poly);
    let genus_ok = genus_check(pres, q, w.r0, w.d0)?;
    let (r2, d2) = huneke_candidate(pres, &w, support)?;
    let ratio_ok = huneke_ratio_check(pres.abc(), (w.r0, w.d0), (r2, d2));
    let sweep = h1_sweep(pres, q, (r2, d2), (w.r0, w.d0), ell_max)?;
    let ell = sweep.last().filter(|c| c.vanishes).map(|c| c.ell);
    Ok(HunekeRecord {
        a: pres.a,
        b: pres.b,
        c: pres.c,
        r0: w.r0,
        d0: w.d0,
        slope: w.slope,
        support,
        genus_ok,
        r2,
        d2,
        ratio_ok,
        ell,
        h1_ok: ell.is_some(),
        sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Elem;
    use crate::poly::Monomial;
    use crate::presentation::herzog_present;

    #[test]
    fn ratio_examples() {
        assert!(huneke_ratio_check(990, (7, 220), (4, 126)));
        assert!(huneke_ratio_check(87035, (7, 2065), (59, 17407)));
        assert!(!huneke_ratio_check(990, (7, 220), (4, 127)));
    }

    #[test]
    fn slope_comparison_is_exact() {
        // 295^2 = 87025 < 87035 < 296^2
        assert!(below_sqrt_abc(87035, 1, 295));
        assert!(!below_sqrt_abc(87035, 1, 296));
        assert!(below_sqrt_abc(87035, 7, 2065));
        assert!(!below_sqrt_abc(990, 7, 221));
    }

    #[test]
    fn support_flags() {
        let f = SparsePoly::from_terms(
            FieldSpec::gf2(),
            [(Monomial::new(3, 0, 0), Elem::Mod(1)), (Monomial::new(0, 1, 1), Elem::Mod(1))],
        );
        let s = SupportFlags::of(&f);
        assert_eq!((s.in_yz, s.in_zx, s.in_xy), (false, true, true));
    }

    #[test]
    fn h1_sign_cases() {
        let pres = herzog_present(5, 103, 169).unwrap();
        let q = FieldSpec::rationals();
        // r' = 59 - 9·7 = -4
        assert!(!h1_condition(&pres, q, (59, 17407), (7, 2065), 9).unwrap());
        // r' = 0 and r' = -1
        assert!(h1_condition(&pres, q, (14, 4130), (7, 2065), 2).unwrap());
        assert!(h1_condition(&pres, q, (13, 4130), (7, 2065), 2).unwrap());
        assert!(matches!(
            h1_condition(&pres, q, (59, 17407), (7, 2065), 0),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn coprimality_rejects_zero_and_self() {
        let pres = herzog_present(5, 11, 18).unwrap();
        let f = SparsePoly::from_terms(
            FieldSpec::rationals(),
            [
                (Monomial::new(3, 0, 1), FieldSpec::rationals().one()),
                (Monomial::new(0, 3, 0), FieldSpec::rationals().from_i64(-1)),
            ],
        );
        assert!(matches!(
            coprimality_check(&pres, &f, &SparsePoly::zero(FieldSpec::rationals())),
            Err(Error::ZeroPolynomial)
        ));
        assert!(!coprimality_check(&pres, &f, &f).unwrap());
    }
}
