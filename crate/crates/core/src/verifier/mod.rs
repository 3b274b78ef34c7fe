//! Replays the GF(2) computation showing `[p(5,103,169)^(59)]_17407 = 0`
//! and the surrounding chain of checks.
//!
//! Generators are rebuilt from their formulas with exact divisions by
//! powers of `x`; the 105 products spanning `I` are checked against the
//! degree table and, modulo `x`, against the monomial ideal `L`.

pub mod data;
pub mod expr;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_integer::Integer;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{h1_condition_detail, huneke_candidate, huneke_ratio_check, negative_curve_search, SupportFlags};
use crate::error::{Error, Result};
use crate::exactmath::{binom_row, FieldSpec};
use crate::lattice::{denumerant, enumerate_points, point_to_monomial};
use crate::linalg::IntegerMatrix;
use crate::poly::{Monomial, SparsePoly};
use crate::presentation::{herzog_present, CurvePresentation};
use crate::qadic::{genus_check, graded_dim, membership, QAdicSystem};

use data::{check_shape, parse_degree_table, parse_generators, parse_table, DataSet, GeneratorSpec};
use data::{DEGREES_FILE, IDEAL_I_FILE, IDEAL_L_FILE};
use expr::{parse, parse_monomial, Env};

pub const TABLE_ROWS: usize = 21;
pub const TABLE_COLS: usize = 5;

#[derive(Debug, Clone)]
pub struct NamedGenerator {
    pub name: String,
    pub order: u64,
    pub degree: u64,
    pub poly: SparsePoly,
    pub leading_mod_x: Monomial,
    pub division_exponent: Option<u64>,
    /// Whether the element also lies in the next symbolic power.
    pub in_next_power: bool,
}

/// Evaluates every generator formula over `field` and checks the degree,
/// the reduction mod `x` and membership in `p^(order)`.
pub fn build_named_generators(
    pres: &CurvePresentation,
    field: FieldSpec,
    specs: &[GeneratorSpec],
) -> Result<Vec<NamedGenerator>> {
    let mut env = Env::new(field);
    let mut out = Vec::with_capacity(specs.len());
    let w = pres.weights();
    for spec in specs {
        let fail = |what: String| Error::GeneratorCheck {
            name: spec.name.clone(),
            what,
        };
        let poly = spec.expr.eval(&env, &spec.name)?;
        let degree = poly.degree(w).map_err(|e| fail(e.to_string()))?;
        if degree != Some(spec.degree) {
            return Err(fail(format!("degree {degree:?}, expected {}", spec.degree)));
        }
        let modx = poly.mod_x();
        if modx != SparsePoly::monomial(field, field.one(), spec.lead) {
            return Err(fail(format!("reduction mod x is {modx}, expected {}", spec.lead)));
        }
        if poly.len() as u64 > denumerant(pres.a, pres.b, pres.c, spec.degree) {
            return Err(fail(format!("{} terms exceed dim S_{}", poly.len(), spec.degree)));
        }
        if !membership(pres, field, &poly, spec.order)? {
            return Err(fail(format!("not in p^({})", spec.order)));
        }
        let in_next_power = membership(pres, field, &poly, spec.order + 1)?;
        let division_exponent = match &spec.expr {
            expr::Expr::Div(_, d) => d.x_power(),
            _ => None,
        };
        env.names.insert(spec.name.clone(), poly.clone());
        out.push(NamedGenerator {
            name: spec.name.clone(),
            order: spec.order,
            degree: spec.degree,
            poly,
            leading_mod_x: spec.lead,
            division_exponent,
            in_next_power,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct IdealProduct {
    /// 1-based table position.
    pub row: usize,
    pub col: usize,
    pub source: String,
    pub poly: SparsePoly,
    pub order: u64,
    pub degree: u64,
    pub mod_x: Monomial,
}

/// Builds the products of `ideal_I.txt` and checks each against the order
/// sum, the degree table and the table of `L`.
pub fn build_ideal_i(
    pres: &CurvePresentation,
    gens: &[NamedGenerator],
    products: &[Vec<String>],
    degrees: &[Vec<u64>],
    l_table: &[Vec<Monomial>],
    target_order: u64,
) -> Result<Vec<IdealProduct>> {
    let field = gens.first().map_or(FieldSpec::gf2(), |g| g.poly.field());
    let mut env = Env::new(field);
    let mut orders = HashMap::new();
    for g in gens {
        env.names.insert(g.name.clone(), g.poly.clone());
        orders.insert(g.name.clone(), g.order);
    }
    let cells: Vec<(usize, usize)> = (0..products.len())
        .flat_map(|r| (0..products[r].len()).map(move |c| (r, c)))
        .collect();
    let results: Vec<Result<IdealProduct>> = cells
        .par_iter()
        .map(|&(r, c)| {
            let (row, col) = (r + 1, c + 1);
            let src = &products[r][c];
            let e = parse(src)?;
            let order = e
                .product_order(&orders)
                .ok_or_else(|| Error::Parse(format!("{IDEAL_I_FILE} ({row},{col}): '{src}' is not a product of generators")))?;
            if order != target_order {
                return Err(Error::OrderMismatch {
                    row,
                    col,
                    got: order,
                    expected: target_order,
                });
            }
            let poly = e.eval(&env, src)?;
            let degree = poly.degree(pres.weights())?.unwrap_or(0);
            if degree != degrees[r][c] {
                return Err(Error::DegreeMismatch {
                    row,
                    col,
                    got: degree,
                    expected: degrees[r][c],
                });
            }
            if poly.len() as u64 > denumerant(pres.a, pres.b, pres.c, degree) {
                return Err(Error::Parse(format!(
                    "{IDEAL_I_FILE} ({row},{col}): {} terms exceed dim S_{degree}",
                    poly.len()
                )));
            }
            let modx = poly.mod_x();
            let want = l_table[r][c];
            if modx != SparsePoly::monomial(field, field.one(), want) {
                return Err(Error::ModXMismatch {
                    row,
                    col,
                    got: modx.to_string(),
                    expected: want.to_string(),
                });
            }
            Ok(IdealProduct {
                row,
                col,
                source: src.clone(),
                poly,
                order,
                degree,
                mod_x: want,
            })
        })
        .collect();
    results.into_iter().collect()
}

/// A monomial ideal of `k[y,z]` given by exponent pairs `(j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal2D {
    /// Minimal generators, `j` ascending (so `k` descending).
    pub gens: Vec<(u32, u32)>,
}

impl MonomialIdeal2D {
    pub fn new(gens: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut all: Vec<(u32, u32)> = gens.into_iter().collect();
        all.sort_unstable();
        all.dedup();
        let mut minimal: Vec<(u32, u32)> = Vec::new();
        for g in all {
            // earlier entries have j <= g.0, so g is redundant iff one has k <= g.1
            if minimal.iter().all(|m| m.1 > g.1) {
                minimal.push(g);
            }
        }
        MonomialIdeal2D { gens: minimal }
    }
}

/// `dim k[y,z]/L` by walking the staircase.
pub fn colength_2d(l: &MonomialIdeal2D) -> Result<u64> {
    let first = l.gens.first().ok_or(Error::InfiniteColength('y'))?;
    let last = l.gens.last().unwrap();
    if first.0 != 0 {
        return Err(Error::InfiniteColength('z'));
    }
    if last.1 != 0 {
        return Err(Error::InfiniteColength('y'));
    }
    Ok(l.gens
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) as u64 * w[0].1 as u64)
        .sum())
}

/// Smallest entry of the degree matrix and its 1-based position.
pub fn min_generator_degree(products: &[IdealProduct]) -> Option<(u64, usize, usize)> {
    products
        .iter()
        .min_by_key(|p| (p.degree, p.row, p.col))
        .map(|p| (p.degree, p.row, p.col))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub timings: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub order: u64,
    pub degree: u64,
    pub lead: String,
    pub terms: usize,
    pub division_exponent: Option<u64>,
    pub in_next_power: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductsSummary {
    pub count: usize,
    pub order: u64,
    pub min_degree: u64,
    pub argmin: [usize; 2],
    pub argmin_expr: String,
    pub max_terms: usize,
    pub degree_matrix: Vec<Vec<u64>>,
    /// Entries additionally checked by direct membership in `p^(59)`.
    pub spot_checks: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DataSummary {
    pub source: String,
    pub checksums: std::collections::BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub weights: [u64; 3],
    pub verdict: bool,
    pub data: DataSummary,
    pub steps: Vec<StepRecord>,
    pub generators: Vec<GeneratorRecord>,
    pub products: ProductsSummary,
    pub colength: u64,
    pub target: [u64; 2],
    pub target_dimension: u64,
    pub target_matrix: [usize; 2],
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let [a, b, c] = self.weights;
        let _ = writeln!(out, "verify-main for p({a},{b},{c})");
        let _ = writeln!(out, "data: {}", self.data.source);
        for (name, sum) in &self.data.checksums {
            let _ = writeln!(out, "  {name} sha256 {sum}");
        }
        for s in &self.steps {
            let t = s.millis.map(|m| format!(" [{m} ms]")).unwrap_or_default();
            let _ = writeln!(
                out,
                "[{}] {}. {}: {}{t}",
                if s.passed { "ok" } else { "FAIL" },
                s.index,
                s.name,
                s.detail
            );
        }
        let _ = writeln!(out, "generators:");
        for g in &self.generators {
            let _ = writeln!(
                out,
                "  {} order {} degree {} lead {} terms {}",
                g.name, g.order, g.degree, g.lead, g.terms
            );
        }
        let _ = writeln!(out, "notes:");
        for n in &self.notes {
            let _ = writeln!(out, "  - {n}");
        }
        let _ = writeln!(out, "verdict: {}", if self.verdict { "PASS" } else { "FAIL" });
        out
    }
}

struct Steps {
    timings: bool,
    records: Vec<StepRecord>,
}

impl Steps {
    /// Runs one step; `f` returns a detail line or the reason it failed.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<std::result::Result<String, String>>) -> Result<()> {
        let start = Instant::now();
        let outcome = f()?;
        let millis = self.timings.then(|| start.elapsed().as_millis() as u64);
        match outcome {
            Ok(detail) => {
                self.records.push(StepRecord {
                    index: self.records.len() + 1,
                    name: name.to_string(),
                    passed: true,
                    detail,
                    millis,
                });
                Ok(())
            }
            Err(detail) => Err(Error::StepFailed {
                step: format!("{} ({name})", self.records.len() + 1),
                detail,
            }),
        }
    }
}

/// Checks that the GF(2) matrix of `sys` is the reduction of its integer
/// matrix, computing each binomial exactly.
fn gf2_matrix_is_reduction(sys: &QAdicSystem) -> bool {
    let m = sys.order as usize;
    let bits = sys.dense_gf2();
    let mut rows_cache: HashMap<i64, Vec<bool>> = HashMap::new();
    let mut parity = |v: i64| -> Vec<bool> {
        rows_cache
            .entry(v)
            .or_insert_with(|| binom_row(v, m).iter().map(|x| x.is_odd()).collect())
            .clone()
    };
    for (c, pt) in sys.region.points.iter().enumerate() {
        let pa = parity(pt.alpha);
        let pb = parity(pt.beta);
        for (r, &(p, q)) in sys.rows.iter().enumerate() {
            if bits.get(r, c) != (pa[p as usize] && pb[q as usize]) {
                return false;
            }
        }
    }
    true
}

const SPOT_SEED: u64 = 0x5eed_0059;

/// Runs the whole chain for `p(5,103,169)` against `data`.
pub fn verify_main_theorem(data: &DataSet, opts: VerifyOptions) -> Result<VerificationReport> {
    let (a, b, c) = (5, 103, 169);
    let (r0, d0) = (7u64, 2065u64);
    let ell = 8;
    let pres = herzog_present(a, b, c)?;
    let q = FieldSpec::rationals();
    let f2 = FieldSpec::gf2();
    let mut steps = Steps {
        timings: opts.timings,
        records: Vec::new(),
    };

    let specs = parse_generators(&data.generators)?;
    let prod_table = parse_table(&data.ideal_i);
    check_shape(IDEAL_I_FILE, &prod_table, TABLE_ROWS, TABLE_COLS)?;
    let degree_table = parse_degree_table(&data.degrees)?;
    check_shape(DEGREES_FILE, &degree_table, TABLE_ROWS, TABLE_COLS)?;
    let l_table: Vec<Vec<Monomial>> = parse_table(&data.ideal_l)
        .iter()
        .map(|row| row.iter().map(|s| parse_monomial(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    check_shape(IDEAL_L_FILE, &l_table, TABLE_ROWS, TABLE_COLS)?;
    if let Some((r, cidx)) = l_table
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, m)| (r, c, m)))
        .find(|(_, _, m)| m.0[0] != 0)
        .map(|(r, c, _)| (r + 1, c + 1))
    {
        return Err(Error::Parse(format!("{IDEAL_L_FILE} ({r},{cidx}): entry involves x")));
    }

    let mut witness = None;
    steps.run("negative curve", || {
        let w = negative_curve_search(&pres, q, r0)?;
        if (w.r0, w.d0, w.dimension) != (r0, d0, 1) {
            return Ok(Err(format!(
                "first nonzero piece below sqrt(abc) is ({}, {}) of dimension {}",
                w.r0, w.d0, w.dimension
            )));
        }
        let region = enumerate_points(&pres, d0)?;
        let top = point_to_monomial(&pres, region.points[0], d0)?;
        let bottom = point_to_monomial(&pres, *region.points.last().unwrap(), d0)?;
        for (i, j, k) in [top, bottom] {
            let m = Monomial::new(i as u32, j as u32, k as u32);
            if q.is_zero(&w.basis_poly.coeff(&m)) {
                return Ok(Err(format!("coefficient of {m} vanishes")));
            }
        }
        let detail = format!(
            "[p^(7)]_2065 = K f with d0/r0 = 2065/7 < sqrt(87035); f has nonzero coefficients at {} and {}",
            Monomial::new(bottom.0 as u32, bottom.1 as u32, bottom.2 as u32),
            Monomial::new(top.0 as u32, top.1 as u32, top.2 as u32)
        );
        witness = Some(w);
        Ok(Ok(detail))
    })?;
    let witness = witness.expect("set by step 1");

    steps.run("genus check", || {
        Ok(if genus_check(&pres, q, r0, d0)? {
            Ok("[p^(6)]_1788 = 0, so the proper transform is rational".into())
        } else {
            Err("[p^(6)]_1788 is nonzero".into())
        })
    })?;

    let mut pair2 = (0, 0);
    steps.run("candidate (r2, d2)", || {
        let flags = SupportFlags::of(&witness.basis_poly);
        let (r2, d2) = huneke_candidate(&pres, &witness, flags)?;
        pair2 = (r2, d2);
        if !huneke_ratio_check(pres.abc(), (r0, d0), (r2, d2)) {
            return Ok(Err(format!("({r2}, {d2}) fails the ratio check")));
        }
        Ok(if (r2, d2) == (59, b * c) {
            Ok(format!(
                "(r2, d2) = (59, 17407) with 2065·17407 = 87035·7·59; f in (y,z)S: {}, (z,x)S: {}, (x,y)S: {}",
                flags.in_yz, flags.in_zx, flags.in_xy
            ))
        } else {
            Err(format!("candidate is ({r2}, {d2})"))
        })
    })?;
    let (r2, d2) = pair2;

    steps.run("h1 vanishing", || {
        let chk = h1_condition_detail(&pres, q, (r2, d2), (r0, d0), ell)?;
        Ok(if chk.vanishes {
            Ok(format!(
                "l = {ell}: h^1({}H - {}E) = {}",
                chk.d_prime,
                chk.r_prime,
                chk.h1.map_or("0 (r' <= 0)".to_string(), |h| h.to_string())
            ))
        } else {
            Err(format!("l = {ell}: {chk:?}"))
        })
    })?;

    let target = QAdicSystem::new(&pres, f2, r2, d2)?;
    steps.run("semicontinuity", || {
        Ok(if gf2_matrix_is_reduction(&target) {
            Ok(format!(
                "the {}x{} GF(2) matrix is the mod-2 image of the exact integer binomial matrix, so rank over Q >= rank over GF(2) and dim_Q <= dim_GF(2)",
                target.nrows(),
                target.ncols()
            ))
        } else {
            Err("GF(2) matrix differs from the reduction of the integer matrix".into())
        })
    })?;

    let mut gens = Vec::new();
    let mut products = Vec::new();
    let mut spot = Vec::new();
    steps.run("generators and I", || {
        gens = build_named_generators(&pres, f2, &specs)?;
        let herzog: Vec<SparsePoly> = pres
            .generator_exponents()
            .iter()
            .map(|(l, r)| {
                let m = |e: &[u64; 3]| Monomial::new(e[0] as u32, e[1] as u32, e[2] as u32);
                SparsePoly::from_terms(f2, [(m(l), f2.one()), (m(r), f2.one())])
            })
            .collect();
        for g in gens.iter().filter(|g| g.order == 1) {
            if !herzog.contains(&g.poly) {
                return Ok(Err(format!("{} is not a generator of the Herzog presentation", g.name)));
            }
        }
        products = build_ideal_i(&pres, &gens, &prod_table, &degree_table, &l_table, r2)?;
        let mut rng = ChaCha8Rng::seed_from_u64(SPOT_SEED);
        let mut idx: Vec<usize> = sample(&mut rng, products.len(), 5).into_vec();
        idx.sort_unstable();
        for i in idx {
            let p = &products[i];
            if !membership(&pres, f2, &p.poly, r2)? {
                return Ok(Err(format!("product ({},{}) is not in p^({r2})", p.row, p.col)));
            }
            spot.push([p.row, p.col]);
        }
        let divisions = gens.iter().filter(|g| g.division_exponent.is_some()).count();
        Ok(Ok(format!(
            "{} generators ({divisions} exact divisions) with the tabulated degrees and leads, each in its symbolic power; {} products of order {r2} with the tabulated degrees and reductions mod x",
            gens.len(),
            products.len()
        )))
    })?;

    let mut colength = 0;
    steps.run("colength of L", || {
        let l = MonomialIdeal2D::new(l_table.iter().flatten().map(|m| (m.0[1], m.0[2])));
        colength = colength_2d(&l)?;
        let expected = r2 * (r2 + 1) / 2 * a;
        Ok(if colength == expected {
            Ok(format!("l(k[y,z]/L) = {colength} = (59·60/2)·5"))
        } else {
            Err(format!("colength {colength}, expected {expected}"))
        })
    })?;

    let mut target_dim = 0;
    steps.run("target vanishing over GF(2)", || {
        target_dim = graded_dim(&pres, f2, r2, d2)?;
        let cols = denumerant(a, b, c, d2);
        if target.ncols() as u64 != cols {
            return Ok(Err(format!("{} columns but dim S_{d2} = {cols}", target.ncols())));
        }
        Ok(if target_dim == 0 {
            Ok(format!(
                "[p^(59)]_17407 = 0 over GF(2): {} rows, {} columns, full column rank",
                target.nrows(),
                target.ncols()
            ))
        } else {
            Err(format!("dimension {target_dim}"))
        })
    })?;

    let mut argmin = (0, 0, 0);
    steps.run("minimal degree of I", || {
        argmin = min_generator_degree(&products).ok_or_else(|| Error::Parse("no products".into()))?;
        let (deg, r, cc) = argmin;
        Ok(if deg > d2 {
            Ok(format!(
                "min degree {deg} at ({r},{cc}) {} exceeds {d2}",
                products[(r - 1) * TABLE_COLS + cc - 1].source
            ))
        } else {
            Err(format!("generator of degree {deg} <= {d2} at ({r},{cc})"))
        })
    })?;

    let verdict = steps.records.iter().all(|s| s.passed);
    let (deg, r, cc) = argmin;
    Ok(VerificationReport {
        schema: 1,
        generated_at: None,
        weights: [a, b, c],
        verdict,
        data: DataSummary {
            source: data.source.clone(),
            checksums: data.checksums(),
        },
        steps: steps.records,
        generators: gens
            .iter()
            .map(|g| GeneratorRecord {
                name: g.name.clone(),
                order: g.order,
                degree: g.degree,
                lead: g.leading_mod_x.to_string(),
                terms: g.poly.len(),
                division_exponent: g.division_exponent,
                in_next_power: g.in_next_power,
            })
            .collect(),
        products: ProductsSummary {
            count: products.len(),
            order: r2,
            min_degree: deg,
            argmin: [r, cc],
            argmin_expr: products[(r - 1) * TABLE_COLS + cc - 1].source.clone(),
            max_terms: products.iter().map(|p| p.poly.len()).max().unwrap_or(0),
            degree_matrix: products
                .chunks(TABLE_COLS)
                .map(|row| row.iter().map(|p| p.degree).collect())
                .collect(),
            spot_checks: spot,
        },
        colength,
        target: [r2, d2],
        target_dimension: target_dim,
        target_matrix: [target.nrows(), target.ncols()],
        notes: vec![
            "computed: steps 1-9 as listed; each step's claim is checked by exact arithmetic".into(),
            "steps 6, 7 and 9 re-check the reduction mod x: I + xS = (L, x)S with l(k[y,z]/L) = 8850, and every generator of I has degree above 17407".into(),
            "cited, not machine-checked: l(S/p^(59) + xS) = e((x), S/p^(59)) = (59·60/2)·5, and Nakayama's lemma giving I = p^(59)".into(),
            "step 8 checks [p^(59)]_17407 = 0 over GF(2) directly, independently of the route through I".into(),
            "cited, not machine-checked: the geometric criterion turning steps 1-4 and the vanishing into non-Noetherianity of the symbolic Rees algebra".into(),
        ],
    })
}
