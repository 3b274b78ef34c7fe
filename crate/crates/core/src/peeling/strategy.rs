use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

use super::{Line, PeelMode, PeelStep};

/// Chooses the next line to peel, or `None` to stop.
pub trait PeelStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn next_line(&self, q: &[LatticePoint], m: u64, history: &[PeelStep]) -> Option<Line>;
}

/// All lines of direction `dir` meeting `q`, with their hit counts.
fn lines_in_direction(q: &[LatticePoint], dir: (i64, i64)) -> Vec<(Line, usize)> {
    let probe = Line::new(dir, (0, 0));
    let (n1, n2, _) = probe.equation();
    let mut by_value: BTreeMap<i64, (LatticePoint, usize)> = BTreeMap::new();
    for p in q {
        let e = by_value.entry(n1 * p.alpha + n2 * p.beta).or_insert((*p, 0));
        e.1 += 1;
    }
    by_value
        .into_values()
        .map(|(p, n)| (Line::new(dir, (p.alpha, p.beta)), n))
        .collect()
}

/// Prefers a line with exactly `m` hits; otherwise a line whose mode does
/// not contradict the earlier non-bijective steps, injective by default.
fn pick(candidates: Vec<(Line, usize)>, m: u64, history: &[PeelStep]) -> Option<Line> {
    if let Some((l, _)) = candidates.iter().find(|(_, n)| *n as u64 == m) {
        return Some(*l);
    }
    let had_surj = history.iter().any(|s| s.mode == PeelMode::Surjective);
    let below = candidates.iter().filter(|(_, n)| (*n as u64) < m).max_by_key(|(_, n)| *n);
    let above = candidates.iter().filter(|(_, n)| (*n as u64) > m).min_by_key(|(_, n)| *n);
    let chosen = if had_surj { above.or(below) } else { below.or(above) };
    chosen.map(|(l, _)| *l)
}

/// Horizontal lines `β = const`.
pub struct RowsStrategy;

impl PeelStrategy for RowsStrategy {
    fn name(&self) -> &'static str {
        "rows"
    }

    fn next_line(&self, q: &[LatticePoint], m: u64, history: &[PeelStep]) -> Option<Line> {
        pick(lines_in_direction(q, (1, 0)), m, history)
    }
}

/// Vertical lines `α = const`.
pub struct ColumnsStrategy;

impl PeelStrategy for ColumnsStrategy {
    fn name(&self) -> &'static str {
        "columns"
    }

    fn next_line(&self, q: &[LatticePoint], m: u64, history: &[PeelStep]) -> Option<Line> {
        pick(lines_in_direction(q, (0, 1)), m, history)
    }
}

/// Horizontal, vertical and both diagonal directions.
pub struct GreedyStrategy;

impl PeelStrategy for GreedyStrategy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn next_line(&self, q: &[LatticePoint], m: u64, history: &[PeelStep]) -> Option<Line> {
        let mut all = Vec::new();
        for dir in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            all.extend(lines_in_direction(q, dir));
        }
        pick(all, m, history)
    }
}

/// A fixed list of lines, used in order.
pub struct ExplicitStrategy {
    pub lines: Vec<Line>,
}

impl PeelStrategy for ExplicitStrategy {
    fn name(&self) -> &'static str {
        "explicit"
    }

    fn next_line(&self, _q: &[LatticePoint], _m: u64, history: &[PeelStep]) -> Option<Line> {
        self.lines.get(history.len()).copied()
    }
}

pub struct StrategyRegistry {
    strategies: Vec<Box<dyn PeelStrategy>>,
}

impl StrategyRegistry {
    pub fn builtin() -> Self {
        StrategyRegistry {
            strategies: vec![Box::new(RowsStrategy), Box::new(ColumnsStrategy), Box::new(GreedyStrategy)],
        }
    }

    pub fn register(&mut self, strategy: Box<dyn PeelStrategy>) {
        self.strategies.retain(|s| s.name() != strategy.name());
        self.strategies.push(strategy);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn PeelStrategy> {
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: "strategy",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }
}
