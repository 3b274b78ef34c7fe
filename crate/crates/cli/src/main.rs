//! `smc`: command-line front end for `smc-core`.
//!
//! Exit status is 0 when the requested computation or check succeeds, 1
//! on a mathematical failure and 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use smc_core::curves::{huneke_record, negative_curve_search};
use smc_core::exactmath::FieldSpec;
use smc_core::lattice::{denumerant, enumerate_points, interior_points, point_to_monomial};
use smc_core::linalg::{IntegerMatrix, SolverRegistry};
use smc_core::peeling::{certify_dim, Conclusion, ExplicitStrategy, Line, PeelStrategy, StrategyRegistry};
use smc_core::presentation::{herzog_present, CurvePresentation};
use smc_core::qadic::{graded_basis_with, QAdicSystem};
use smc_core::verifier::data::DataSet;
use smc_core::verifier::{verify_main_theorem, VerifyOptions};
use smc_core::Error;

#[derive(Parser, Debug)]
#[command(name = "smc", version, about = "Symbolic powers of space monomial curves")]
struct Cli {
    /// Output format; `verify-main` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
struct Weights {
    a: u64,
    b: u64,
    c: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Herzog presentation of p(a,b,c).
    Herzog {
        #[command(flatten)]
        w: Weights,
    },
    /// Lattice points of dΔ.
    Points {
        #[command(flatten)]
        w: Weights,
        #[arg(long)]
        degree: u64,
        /// Only points strictly inside the triangle.
        #[arg(long)]
        interior: bool,
        /// Print one `alpha beta i j k` line per point.
        #[arg(long)]
        dump_points: bool,
    },
    /// dim [p^(m)]_d over Q (char 0) or GF(q).
    Dim {
        #[command(flatten)]
        w: Weights,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        degree: u64,
        /// Also print a basis.
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        dump_matrix: bool,
        /// Kernel solver; defaults to the registry choice for the field.
        #[arg(long)]
        solver: Option<String>,
        /// Exit 1 unless the dimension equals this value.
        #[arg(long)]
        expect: Option<u64>,
    },
    /// Peeling certificate for dim [p^(m)]_d over Q.
    Peel {
        #[command(flatten)]
        w: Weights,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        order: u64,
        #[arg(long, default_value = "rows")]
        strategy: String,
        #[arg(long)]
        interior: bool,
        /// Explicit lines, peeled in order: `alpha=K`, `beta=K` or
        /// `DA,DB@A0,B0` (direction and a point on the line).
        #[arg(long = "line", value_name = "LINE")]
        lines: Vec<String>,
    },
    /// Smallest (r, d) with [p^(r)]_d != 0 and d/r < sqrt(abc).
    Negcurve {
        #[command(flatten)]
        w: Weights,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = 8)]
        max_order: u64,
    },
    /// Negative curve, candidate partner and h^1 sweep.
    Huneke {
        #[command(flatten)]
        w: Weights,
        #[arg(long, default_value_t = 8)]
        ell_max: u64,
        #[arg(long, default_value_t = 8)]
        max_order: u64,
    },
    /// Replay the GF(2) computation for p(5,103,169).
    VerifyMain {
        /// Directory holding generators.txt, ideal_I.txt, ideal_L.txt and
        /// degrees.txt; the embedded copies are used otherwise.
        #[arg(long, value_name = "PATH")]
        data_dir: Option<PathBuf>,
        /// Include per-step wall-clock times.
        #[arg(long)]
        timings: bool,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPairwiseCoprime(..)
            | Error::NonPositiveWeight(..)
            | Error::InvalidCharacteristic(_)
            | Error::UnknownName { .. }
            | Error::UnsupportedField { .. }
            | Error::OrderTooSmall { .. }
            | Error::EmptyLine(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

fn presentation(w: Weights) -> Result<CurvePresentation, Failure> {
    herzog_present(w.a, w.b, w.c).map_err(|e| Failure::Usage(format!("invalid value for <A> <B> <C>: {e}")))
}

fn field(q: u64) -> Result<FieldSpec, Failure> {
    FieldSpec::new(q).map_err(|e| Failure::Usage(format!("invalid value for '--char': {e}")))
}

fn monomial(e: &[u64; 3]) -> String {
    let parts: Vec<String> = ["x", "y", "z"]
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn herzog(w: Weights) -> Result<Outcome, Failure> {
    let p = presentation(w)?;
    let gens: Vec<String> = if p.ci {
        Vec::new()
    } else {
        p.generator_exponents()
            .iter()
            .map(|(l, r)| format!("{} - {}", monomial(l), monomial(r)))
            .collect()
    };
    let mut text = format!("p({},{},{})", p.a, p.b, p.c);
    text += if p.ci { ": complete intersection\n" } else { ": three generators\n" };
    for g in &gens {
        text += &format!("  {g}\n");
    }
    text += &format!(
        "s2={} s3={} t1={} t3={} u1={} u2={}\ns={} t={} u={}\nunit exponents ({}, {}, {})\n",
        p.s2, p.s3, p.t1, p.t3, p.u1, p.u2, p.s, p.t, p.u, p.a_p, p.b_p, p.c_p
    );
    let mut json = serde_json::to_value(&p).expect("serializable");
    json["generators"] = json!(gens);
    Ok(Outcome {
        text,
        json,
        passed: true,
    })
}

fn points(w: Weights, degree: u64, interior: bool, dump: bool) -> Result<Outcome, Failure> {
    let pres = presentation(w)?;
    let region = if interior {
        interior_points(&pres, degree)?
    } else {
        enumerate_points(&pres, degree)?
    };
    let count = region.len() as u64;
    let expected = (!interior).then(|| denumerant(w.a, w.b, w.c, degree));
    let mut text = format!("{count}\n");
    if dump {
        text += &region.dump(&pres);
    }
    let mut json = json!({
        "a": w.a, "b": w.b, "c": w.c,
        "degree": degree,
        "interior": interior,
        "count": count,
        "row_profile": region.row_profile(),
    });
    if let Some(e) = expected {
        json["denumerant"] = json!(e);
    }
    if dump {
        json["points"] = serde_json::to_value(&region.points).expect("serializable");
    }
    Ok(Outcome {
        text,
        json,
        passed: expected.is_none_or(|e| e == count),
    })
}

#[allow(clippy::too_many_arguments)]
fn dim(
    w: Weights,
    q: u64,
    order: u64,
    degree: u64,
    basis: bool,
    dump_matrix: bool,
    solver: Option<String>,
    expect: Option<u64>,
) -> Result<Outcome, Failure> {
    let pres = presentation(w)?;
    let f = field(q)?;
    let reg = SolverRegistry::builtin();
    let solver = match solver {
        Some(name) => reg.get(&name).map_err(|e| Failure::Usage(format!("invalid value for '--solver': {e}")))?,
        None => reg.default_for(f)?,
    };
    solver
        .check(f)
        .map_err(|e| Failure::Usage(format!("invalid value for '--solver': {e}")))?;
    let sys = QAdicSystem::new(&pres, f, order, degree)?;
    let result = graded_basis_with(solver, &pres, f, order, degree)?;
    let mut text = format!("{}\n", result.dimension);
    if basis {
        for p in &result.basis {
            text += &format!("{p}\n");
        }
    }
    if dump_matrix {
        text += &sys.dump();
    }
    let mut json = json!({
        "a": w.a, "b": w.b, "c": w.c,
        "characteristic": q,
        "order": order,
        "degree": degree,
        "dimension": result.dimension,
        "rows": sys.nrows(),
        "columns": sys.ncols(),
        "solver": solver.name(),
    });
    if basis {
        json["basis"] = json!(result.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    if dump_matrix {
        json["matrix"] = json!(sys.dump());
    }
    let passed = expect.is_none_or(|e| e == result.dimension);
    if let Some(e) = expect {
        json["expected"] = json!(e);
        if !passed {
            text += &format!("expected {e}, got {}\n", result.dimension);
        }
    }
    Ok(Outcome { text, json, passed })
}

fn parse_line(s: &str) -> Result<Line, Failure> {
    let bad = || Failure::Usage(format!("invalid value for '--line': '{s}'"));
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let pair = |t: &str| -> Result<(i64, i64), Failure> {
        let (x, y) = t.split_once(',').ok_or_else(bad)?;
        Ok((int(x)?, int(y)?))
    };
    if let Some(k) = s.strip_prefix("alpha=") {
        return Ok(Line::vertical(int(k)?));
    }
    if let Some(k) = s.strip_prefix("beta=") {
        return Ok(Line::horizontal(int(k)?));
    }
    let (dir, base) = s.split_once('@').ok_or_else(bad)?;
    let dir = pair(dir)?;
    if dir == (0, 0) {
        return Err(bad());
    }
    Ok(Line::new(dir, pair(base)?))
}

fn peel(
    w: Weights,
    degree: u64,
    order: u64,
    strategy: &str,
    interior: bool,
    lines: &[String],
) -> Result<Outcome, Failure> {
    let pres = presentation(w)?;
    let region = if interior {
        interior_points(&pres, degree)?
    } else {
        enumerate_points(&pres, degree)?
    };
    let reg = StrategyRegistry::builtin();
    let explicit;
    let strat: &dyn PeelStrategy = if lines.is_empty() {
        reg.get(strategy)
            .map_err(|e| Failure::Usage(format!("invalid value for '--strategy': {e}")))?
    } else {
        explicit = ExplicitStrategy {
            lines: lines.iter().map(|l| parse_line(l)).collect::<Result<_, _>>()?,
        };
        &explicit
    };
    let q = FieldSpec::rationals();
    let cert = certify_dim(&region.points, order, strat, q)?;
    // cross-check against elimination on the same point set
    let sys = QAdicSystem::from_region(region.clone(), q, order);
    let la = if order == 0 || region.is_empty() {
        region.len() as u64
    } else {
        (region.len() - SolverRegistry::builtin().default_for(q)?.rank(&sys, q)?) as u64
    };
    let agrees = match cert.conclusion {
        Conclusion::Exact(v) => v == la,
        Conclusion::AtMost(v) => la <= v,
        Conclusion::AtLeast(v) => la >= v,
        Conclusion::Inconclusive => true,
    };
    let mut text = cert.to_text();
    if !interior && !cert.tracked_points.is_empty() {
        let monos: Vec<String> = cert
            .tracked_points
            .iter()
            .map(|p| point_to_monomial(&pres, *p, degree).map(|(i, j, k)| monomial(&[i, j, k])))
            .collect::<Result<_, _>>()?;
        text += &format!("tracked monomials: {}\n", monos.join(" "));
    }
    text += &format!("linear algebra: {la} ({})\n", if agrees { "agrees" } else { "DISAGREES" });
    let mut json = serde_json::to_value(&cert).expect("serializable");
    json["linear_algebra_dimension"] = json!(la);
    json["agrees"] = json!(agrees);
    Ok(Outcome {
        text,
        json,
        passed: agrees,
    })
}

fn negcurve(w: Weights, q: u64, max_order: u64) -> Result<Outcome, Failure> {
    let pres = presentation(w)?;
    let f = field(q)?;
    let wit = negative_curve_search(&pres, f, max_order)?;
    let text = format!(
        "r0={} d0={} slope={} dim={}\n{}\n",
        wit.r0, wit.d0, wit.slope, wit.dimension, wit.basis_poly
    );
    Ok(Outcome {
        text,
        json: serde_json::to_value(&wit).expect("serializable"),
        passed: true,
    })
}

fn huneke(w: Weights, ell_max: u64, max_order: u64) -> Result<Outcome, Failure> {
    let pres = presentation(w)?;
    let rec = huneke_record(&pres, max_order, ell_max)?;
    let mut text = format!(
        "negative curve (r0, d0) = ({}, {}), slope {}\ngenus check: {}\ncandidate (r2, d2) = ({}, {}), ratio check: {}\n",
        rec.r0, rec.d0, rec.slope, rec.genus_ok, rec.r2, rec.d2, rec.ratio_ok
    );
    for chk in &rec.sweep {
        let h1 = chk.h1.map_or("-".to_string(), |h| h.to_string());
        text += &format!(
            "  l={} d'={} r'={} h1={} {}\n",
            chk.ell,
            chk.d_prime,
            chk.r_prime,
            h1,
            if chk.vanishes { "vanishes" } else if chk.by_lower_bound { "positive (lower bound)" } else { "positive" }
        );
    }
    text += &format!(
        "h1 condition: {}\n",
        rec.ell.map_or("not met".to_string(), |l| format!("met at l={l}"))
    );
    let passed = rec.genus_ok && rec.ratio_ok && rec.h1_ok;
    Ok(Outcome {
        text,
        json: serde_json::to_value(&rec).expect("serializable"),
        passed,
    })
}

fn verify_main(data_dir: Option<PathBuf>, timings: bool) -> Result<Outcome, Failure> {
    let data = match data_dir {
        Some(dir) => {
            if !dir.is_dir() {
                return Err(Failure::Usage(format!(
                    "invalid value for '--data-dir': {} is not a directory",
                    dir.display()
                )));
            }
            DataSet::from_dir(&dir)?
        }
        None => DataSet::embedded(),
    };
    let mut report = verify_main_theorem(&data, VerifyOptions { timings })?;
    report.generated_at = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    Ok(Outcome {
        text: report.to_text(),
        json: serde_json::to_value(&report).expect("serializable"),
        passed: report.verdict,
    })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("SMC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Usage(format!("invalid value for SMC_THREADS: '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("SMC_THREADS: {e}")))
}

fn run(cli: Cli) -> Result<(Outcome, Format), Failure> {
    configure_threads()?;
    let default = if matches!(cli.command, Command::VerifyMain { .. }) {
        Format::Json
    } else {
        Format::Text
    };
    let out = match cli.command {
        Command::Herzog { w } => herzog(w)?,
        Command::Points {
            w,
            degree,
            interior,
            dump_points,
        } => points(w, degree, interior, dump_points)?,
        Command::Dim {
            w,
            characteristic,
            order,
            degree,
            basis,
            dump_matrix,
            solver,
            expect,
        } => dim(w, characteristic, order, degree, basis, dump_matrix, solver, expect)?,
        Command::Peel {
            w,
            degree,
            order,
            strategy,
            interior,
            lines,
        } => peel(w, degree, order, &strategy, interior, &lines)?,
        Command::Negcurve {
            w,
            characteristic,
            max_order,
        } => negcurve(w, characteristic, max_order)?,
        Command::Huneke { w, ell_max, max_order } => huneke(w, ell_max, max_order)?,
        Command::VerifyMain { data_dir, timings } => verify_main(data_dir, timings)?,
    };
    Ok((out, cli.format.unwrap_or(default)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok((out, format)) => {
            let body = match format {
                Format::Text => out.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            let written = match &output {
                Some(path) => std::fs::write(path, body),
                None => std::io::stdout().write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
