//! Property checks shared by the integration tests and the acceptance
//! runner. Each returns a one-line summary or a description of the first
//! counterexample.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smc_core::exactmath::FieldSpec;
use smc_core::lattice::{enumerate_points, interior_points, monomial_to_point, point_to_monomial, LatticePoint};
use smc_core::linalg::SolverRegistry;
use smc_core::peeling::{certify_dim, Conclusion, StrategyRegistry};
use smc_core::poly::Monomial;
use smc_core::presentation::{herzog_present, CurvePresentation};
use smc_core::qadic::{graded_basis, graded_dim, graded_dim_with, membership};
use smc_core::verifier::data::{parse_degree_table, parse_generators, parse_table, DataSet, GeneratorSpec};
use smc_core::verifier::expr::{parse_monomial, Expr};
use smc_core::verifier::{build_ideal_i, build_named_generators};
use smc_core::Error;

pub type Check = Result<String, String>;

pub fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn falling(x: i64, p: u64) -> BigInt {
    (0..p as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

/// Rank over Q by plain Gaussian elimination on fractions.
pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the space of polynomials supported on `pts` whose
/// derivatives `∂_u^p ∂_v^q`, `p + q < m`, all vanish at `(1,1)`.
pub fn oracle_dim(pts: &[LatticePoint], m: u64) -> u64 {
    if m == 0 || pts.is_empty() {
        return pts.len() as u64;
    }
    let mut rows = Vec::new();
    for s in 0..m {
        for p in 0..=s {
            rows.push(
                pts.iter()
                    .map(|pt| BigRational::from_integer(falling(pt.alpha, p) * falling(pt.beta, s - p)))
                    .collect(),
            );
        }
    }
    (pts.len() - rank_q(rows)) as u64
}

/// Fixed sample of `(m, d)` pairs over `p(5,11,18)`.
pub fn instances(n: usize) -> Vec<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2545_f491);
    (0..n).map(|_| (rng.gen_range(1..=7), rng.gen_range(40..540))).collect()
}

fn p51118() -> CurvePresentation {
    herzog_present(5, 11, 18).unwrap()
}

pub fn derivative_rank(max_d: u64, max_m: u64) -> Check {
    let pres = p51118();
    let mut n = 0;
    for d in 0..=max_d {
        let pts = enumerate_points(&pres, d).unwrap().points;
        for m in 1..=max_m {
            let (got, want) = (graded_dim(&pres, q(), m, d).unwrap(), oracle_dim(&pts, m));
            if got != want {
                return Err(format!("d={d} m={m}: binomial {got}, derivative {want}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} pieces, d <= {max_d}, m <= {max_m}"))
}

pub fn semicontinuity(n: usize) -> Check {
    let pres = p51118();
    for (m, d) in instances(n) {
        let d0 = graded_dim(&pres, q(), m, d).unwrap();
        for p in [2, 3, 5, 7, 32003] {
            let dp = graded_dim(&pres, FieldSpec::new(p).unwrap(), m, d).unwrap();
            if d0 > dp {
                return Err(format!("m={m} d={d} p={p}: dim_Q {d0} > dim_F{p} {dp}"));
            }
        }
    }
    Ok(format!("{n} instances, p in {{2,3,5,7,32003}}"))
}

pub fn monotonicity(n: usize) -> Check {
    let pres = p51118();
    for (m, d) in instances(n) {
        let base = graded_dim(&pres, q(), m, d).unwrap();
        let next = graded_dim(&pres, q(), m + 1, d).unwrap();
        if next > base {
            return Err(format!("d={d}: dim at m={} is {next} > {base}", m + 1));
        }
        for w in [5, 11, 18] {
            // multiplication by a variable is injective
            if graded_dim(&pres, q(), m, d + w).unwrap() < base {
                return Err(format!("m={m}: dim drops from d={d} to d={}", d + w));
            }
        }
    }
    Ok(format!("{n} instances, in m and under multiplication by x, y, z"))
}

pub fn choice_invariance(n: usize) -> Check {
    let reg = SolverRegistry::builtin();
    let p = p51118();
    // a different set of unit exponents and a shifted origin for the same prime
    let alt = p.shifted_unit_exponents(3, -2);
    for (m, d) in instances(n) {
        let want = oracle_dim(&enumerate_points(&p, d).unwrap().points, m);
        for name in ["rational-bareiss", "modular-screen"] {
            let got = graded_dim_with(reg.get(name).unwrap(), &p, q(), m, d).unwrap();
            if got != want {
                return Err(format!("{name} m={m} d={d}: {got} vs {want}"));
            }
        }
        let shifted = graded_dim(&alt, q(), m, d).unwrap();
        if shifted != want {
            return Err(format!("shifted exponents m={m} d={d}: {shifted} vs {want}"));
        }
        for pr in [2, 3] {
            let f = FieldSpec::new(pr).unwrap();
            let dense = graded_dim_with(reg.get("gfp-dense").unwrap(), &p, f, m, d).unwrap();
            let default = graded_dim(&p, f, m, d).unwrap();
            if dense != default || graded_dim(&alt, f, m, d).unwrap() != dense {
                return Err(format!("char {pr} m={m} d={d}: solvers or exponents disagree"));
            }
        }
        let basis = graded_basis(&p, q(), m, d).unwrap();
        if basis.dimension != want || !basis.basis.iter().all(|f| membership(&p, q(), f, m).unwrap()) {
            return Err(format!("basis of m={m} d={d} is wrong"));
        }
    }
    Ok(format!("{n} instances, 4 solvers, 2 choices of unit exponents"))
}

pub fn round_trip(n: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let presentations = [herzog_present(5, 103, 169).unwrap(), p51118(), herzog_present(7, 15, 26).unwrap()];
    for _ in 0..n {
        let pres = &presentations[rng.gen_range(0..presentations.len())];
        let (i, j, k) = (rng.gen_range(0..400), rng.gen_range(0..60), rng.gen_range(0..60));
        let (pt, d) = monomial_to_point(pres, i, j, k).unwrap();
        if d != pres.a * i + pres.b * j + pres.c * k || point_to_monomial(pres, pt, d).unwrap() != (i, j, k) {
            return Err(format!("x^{i} y^{j} z^{k} over {:?}", pres.weights()));
        }
    }
    Ok(format!("{n} random monomials over 3 weight triples"))
}

/// Every nonzero `[p^(r)]_d` with `d/r < sqrt(abc)`, `r <= max_r`, has
/// `d/r >= 2065/7`.
pub fn slope_gap(max_r: u64) -> Check {
    let pres = herzog_present(5, 103, 169).unwrap();
    let abc = pres.abc();
    let screen = FieldSpec::new(32003).unwrap();
    let mut nonzero = 0;
    for r in 1..=max_r {
        let mut d = 1;
        while d * d < abc * r * r {
            // dim over Q never exceeds dim over GF(p)
            if graded_dim(&pres, screen, r, d).unwrap() > 0 && graded_dim(&pres, q(), r, d).unwrap() > 0 {
                if 7 * d < 2065 * r {
                    return Err(format!("[p^({r})]_{d} is nonzero"));
                }
                nonzero += 1;
            }
            d += 1;
        }
    }
    Ok(format!("r <= {max_r}: nonzero pieces below sqrt(abc): {nonzero}, all of slope >= 295"))
}

pub fn peeling_soundness(max_d: u64, max_m: u64) -> Check {
    let pres = p51118();
    let strategies = StrategyRegistry::builtin();
    let (mut total, mut exact) = (0, 0);
    for d in 0..=max_d {
        for region in [enumerate_points(&pres, d).unwrap(), interior_points(&pres, d).unwrap()] {
            if region.is_empty() {
                continue;
            }
            for m in 1..=max_m {
                let truth = oracle_dim(&region.points, m);
                for name in strategies.names() {
                    let cert = certify_dim(&region.points, m, strategies.get(name).unwrap(), q()).unwrap();
                    let ok = match cert.conclusion {
                        Conclusion::Exact(v) => {
                            exact += 1;
                            truth == v
                        }
                        Conclusion::AtMost(v) => truth <= v,
                        Conclusion::AtLeast(v) => truth >= v,
                        Conclusion::Inconclusive => true,
                    };
                    if !ok {
                        return Err(format!("{name} d={d} m={m}: {:?} but dim is {truth}", cert.conclusion));
                    }
                    total += 1;
                }
            }
        }
    }
    Ok(format!("{total} certificates, {exact} exact"))
}

pub struct Tables {
    pub pres: CurvePresentation,
    pub specs: Vec<GeneratorSpec>,
    pub products: Vec<Vec<String>>,
    pub degrees: Vec<Vec<u64>>,
    pub l: Vec<Vec<Monomial>>,
}

pub fn tables() -> Tables {
    let data = DataSet::embedded();
    Tables {
        pres: herzog_present(5, 103, 169).unwrap(),
        specs: parse_generators(&data.generators).unwrap(),
        products: parse_table(&data.ideal_i),
        degrees: parse_degree_table(&data.degrees).unwrap(),
        l: parse_table(&data.ideal_l)
            .iter()
            .map(|r| r.iter().map(|s| parse_monomial(s).unwrap()).collect())
            .collect(),
    }
}

fn position(e: &Error) -> Option<(usize, usize)> {
    match e {
        Error::DegreeMismatch { row, col, .. }
        | Error::ModXMismatch { row, col, .. }
        | Error::OrderMismatch { row, col, .. } => Some((*row, *col)),
        _ => None,
    }
}

/// Corrupts each entry of the degree table, of `L` and of `I` in turn and
/// expects an error naming that entry.
pub fn table_mutations() -> Check {
    let t = tables();
    let gens = build_named_generators(&t.pres, FieldSpec::gf2(), &t.specs).map_err(|e| e.to_string())?;
    let build = |products: &[Vec<String>], degrees: &[Vec<u64>], l: &[Vec<Monomial>]| {
        build_ideal_i(&t.pres, &gens, products, degrees, l, 59)
    };
    let mut n = 0;
    for r in 0..t.products.len() {
        for c in 0..t.products[r].len() {
            let at = Some((r + 1, c + 1));
            let mut failures = Vec::new();

            let mut degrees = t.degrees.clone();
            degrees[r][c] += 1;
            failures.push(("degree", build(&t.products, &degrees, &t.l), "DegreeMismatch"));

            let mut l = t.l.clone();
            l[r][c].0[1] += 1;
            failures.push(("L", build(&t.products, &t.degrees, &l), "ModXMismatch"));

            // an extra factor of z keeps the order and changes the degree
            let mut products = t.products.clone();
            products[r][c].push_str(" z");
            failures.push(("I (degree)", build(&products, &t.degrees, &t.l), "DegreeMismatch"));

            let mut products = t.products.clone();
            products[r][c].push_str(" A01");
            failures.push(("I (order)", build(&products, &t.degrees, &t.l), "OrderMismatch"));

            for (what, res, kind) in failures {
                match res {
                    Err(e) if position(&e) == at && format!("{e:?}").starts_with(kind) => n += 1,
                    Err(e) => return Err(format!("{what} entry ({},{}): reported as {e}", r + 1, c + 1)),
                    Ok(_) => return Err(format!("{what} entry ({},{}): corruption not detected", r + 1, c + 1)),
                }
            }
        }
    }
    Ok(format!("{n} single-entry corruptions of I, L and the degree table, each reported at its position"))
}

/// Corrupts each generator's annotations and divisor in turn and expects
/// an error naming that generator.
pub fn generator_mutations() -> Check {
    let t = tables();
    let mut n = 0;
    for i in 0..t.specs.len() {
        let name = t.specs[i].name.clone();
        let mut variants = Vec::new();
        let mut s = t.specs.clone();
        s[i].degree += 1;
        variants.push(("degree", s));
        let mut s = t.specs.clone();
        s[i].lead.0[2] += 1;
        variants.push(("lead", s));
        let mut s = t.specs.clone();
        s[i].order += 1;
        variants.push(("order", s));
        if let Expr::Div(num, den) = &t.specs[i].expr {
            let e = den.x_power().unwrap();
            let mut s = t.specs.clone();
            s[i].expr = Expr::Div(num.clone(), Box::new(Expr::Pow(Box::new(Expr::Name("x".into())), e + 1)));
            variants.push(("divisor", s));
        }
        for (what, specs) in variants {
            match build_named_generators(&t.pres, FieldSpec::gf2(), &specs) {
                Err(Error::GeneratorCheck { name: got, .. }) if got == name && what != "divisor" => n += 1,
                Err(Error::NotDivisible { context, .. }) if context == name => n += 1,
                Err(e) => return Err(format!("{name} {what}: reported as {e}")),
                Ok(_) => return Err(format!("{name} {what}: corruption not detected")),
            }
        }
    }
    Ok(format!("{n} generator corruptions, each reported against its generator"))
}
