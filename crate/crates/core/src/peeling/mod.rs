//! Line-peeling dimension certificates in characteristic 0.
//!
//! Removing the points of a lattice line `L` from `Q` gives a linear map
//! `KQ ∩ q^m → KQ' ∩ q^(m−1)` that is injective when `#(L∩Q) ≤ m` and
//! surjective when `#(L∩Q) ≥ m`, and that preserves whether the
//! coefficient at each surviving point is zero. Chaining such steps down
//! to `m ≤ 1` (where the dimension is read off directly) bounds or pins
//! `dim KQ ∩ q^m`.

mod strategy;

pub use strategy::{ColumnsStrategy, ExplicitStrategy, GreedyStrategy, PeelStrategy, RowsStrategy, StrategyRegistry};

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::FieldSpec;
use crate::lattice::LatticePoint;

/// A lattice line: all `base + t·direction`, `direction` primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Line {
    pub direction: (i64, i64),
    pub base: (i64, i64),
}

impl Line {
    pub fn new(direction: (i64, i64), base: (i64, i64)) -> Self {
        let (dx, dy) = direction;
        assert!(dx != 0 || dy != 0, "zero direction");
        let g = dx.gcd(&dy);
        let (mut dx, mut dy) = (dx / g, dy / g);
        // normalize the sign so equal lines compare equal
        if dx < 0 || (dx == 0 && dy < 0) {
            dx = -dx;
            dy = -dy;
        }
        Line {
            direction: (dx, dy),
            base,
        }
    }

    pub fn horizontal(beta: i64) -> Self {
        Line::new((1, 0), (0, beta))
    }

    pub fn vertical(alpha: i64) -> Self {
        Line::new((0, 1), (alpha, 0))
    }

    /// `(n1, n2, c)` with the line being `n1·α + n2·β = c`.
    pub fn equation(&self) -> (i64, i64, i64) {
        let (dx, dy) = self.direction;
        (dy, -dx, dy * self.base.0 - dx * self.base.1)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let (n1, n2, c) = self.equation();
        n1 * p.alpha + n2 * p.beta == c
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n1, n2, c) = self.equation();
        match (n1, n2) {
            (0, n) => write!(f, "beta = {}", c / n),
            (n, 0) => write!(f, "alpha = {}", c / n),
            _ => write!(f, "{n1}*alpha + {n2}*beta = {c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeelMode {
    Injective,
    Surjective,
    Bijective,
}

impl PeelMode {
    pub fn of(hits: usize, m: u64) -> Self {
        match (hits as u64).cmp(&m) {
            std::cmp::Ordering::Less => PeelMode::Injective,
            std::cmp::Ordering::Equal => PeelMode::Bijective,
            std::cmp::Ordering::Greater => PeelMode::Surjective,
        }
    }

    fn injective(self) -> bool {
        self != PeelMode::Surjective
    }

    fn surjective(self) -> bool {
        self != PeelMode::Injective
    }
}

impl fmt::Display for PeelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeelMode::Injective => "injective",
            PeelMode::Surjective => "surjective",
            PeelMode::Bijective => "bijective",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub line: Line,
    pub equation: String,
    /// Order before the step.
    pub order: u64,
    pub hits: usize,
    pub mode: PeelMode,
    pub removed: Vec<LatticePoint>,
}

/// What the chain proves about `dim KQ ∩ q^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Conclusion {
    Exact(u64),
    AtMost(u64),
    AtLeast(u64),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelCertificate {
    pub strategy: String,
    pub initial_order: u64,
    pub initial_points: usize,
    pub steps: Vec<PeelStep>,
    pub terminal_order: u64,
    pub terminal_points: Vec<LatticePoint>,
    pub conclusion: Conclusion,
    /// Points where every nonzero element has a nonzero coefficient.
    pub tracked_points: Vec<LatticePoint>,
}

impl PeelCertificate {
    pub fn exact(&self) -> Option<u64> {
        match self.conclusion {
            Conclusion::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "strategy {}: start with {} points, m = {}",
            self.strategy, self.initial_points, self.initial_order
        );
        for (n, s) in self.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "step {}: {} hits {} at m = {} ({})",
                n + 1,
                s.equation,
                s.hits,
                s.order,
                s.mode
            );
        }
        let _ = writeln!(
            out,
            "terminal: m = {}, {} points",
            self.terminal_order,
            self.terminal_points.len()
        );
        let _ = match self.conclusion {
            Conclusion::Exact(v) => writeln!(out, "dimension = {v}"),
            Conclusion::AtMost(v) => writeln!(out, "dimension <= {v}"),
            Conclusion::AtLeast(v) => writeln!(out, "dimension >= {v}"),
            Conclusion::Inconclusive => writeln!(out, "inconclusive"),
        };
        if !self.tracked_points.is_empty() {
            let pts: Vec<String> = self
                .tracked_points
                .iter()
                .map(|p| format!("({}, {})", p.alpha, p.beta))
                .collect();
            let _ = writeln!(out, "nonzero coefficients at {}", pts.join(" "));
        }
        out
    }
}

/// One peeling step: removes the points of `line` from `q`.
pub fn peel(q: &[LatticePoint], m: u64, line: Line) -> Result<(Vec<LatticePoint>, u64, PeelStep)> {
    if m == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    let (removed, rest): (Vec<LatticePoint>, Vec<LatticePoint>) = q.iter().partition(|p| line.contains(**p));
    if removed.is_empty() {
        return Err(Error::EmptyLine(line.to_string()));
    }
    let step = PeelStep {
        line,
        equation: line.to_string(),
        order: m,
        hits: removed.len(),
        mode: PeelMode::of(removed.len(), m),
        removed,
    };
    Ok((rest, m - 1, step))
}

/// `dim KQ ∩ q^m` where it is known without elimination.
fn terminal_dim(q: &[LatticePoint], m: u64) -> Option<u64> {
    if q.is_empty() {
        Some(0)
    } else if m == 0 {
        Some(q.len() as u64)
    } else if m == 1 {
        // one condition: the coefficients sum to zero
        Some(q.len() as u64 - 1)
    } else {
        None
    }
}

/// Runs `strategy` from `(q, m)` until the dimension is known directly.
pub fn certify_dim(
    q: &[LatticePoint],
    m: u64,
    strategy: &dyn PeelStrategy,
    field: FieldSpec,
) -> Result<PeelCertificate> {
    if !field.is_rational() {
        return Err(Error::PositiveCharacteristic(field.characteristic()));
    }
    let distinct: BTreeSet<LatticePoint> = q.iter().copied().collect();
    let mut cur: Vec<LatticePoint> = distinct.into_iter().collect();
    let mut order = m;
    let mut steps: Vec<PeelStep> = Vec::new();
    let terminal = loop {
        if let Some(v) = terminal_dim(&cur, order) {
            break Some(v);
        }
        let Some(line) = strategy.next_line(&cur, order, &steps) else {
            break None;
        };
        let (rest, next, step) = peel(&cur, order, line)?;
        steps.push(step);
        cur = rest;
        order = next;
    };
    let all_inj = steps.iter().all(|s| s.mode.injective());
    let all_surj = steps.iter().all(|s| s.mode.surjective());
    let conclusion = match terminal {
        None => Conclusion::Inconclusive,
        Some(v) if all_inj && all_surj => Conclusion::Exact(v),
        Some(0) if all_inj => Conclusion::Exact(0),
        Some(v) if all_inj => Conclusion::AtMost(v),
        Some(v) if all_surj => Conclusion::AtLeast(v),
        Some(_) => Conclusion::Inconclusive,
    };
    // the terminal spaces K·e and K·(e1 − e2) have no zero coordinates
    let tracked_points = match (terminal, order, cur.len()) {
        (Some(_), 0, 1) | (Some(_), 1, 2) if all_inj => cur.clone(),
        _ => Vec::new(),
    };
    Ok(PeelCertificate {
        strategy: strategy.name().to_string(),
        initial_order: m,
        initial_points: q.len(),
        steps,
        terminal_order: order,
        terminal_points: cur,
        conclusion,
        tracked_points,
    })
}
