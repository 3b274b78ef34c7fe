//! The four table files behind `verify-main`.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::poly::Monomial;

use super::expr::{parse, parse_monomial, Expr};

pub const GENERATORS_FILE: &str = "generators.txt";
pub const IDEAL_I_FILE: &str = "ideal_I.txt";
pub const IDEAL_L_FILE: &str = "ideal_L.txt";
pub const DEGREES_FILE: &str = "degrees.txt";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataSet {
    /// `"embedded"` or the directory the files were read from.
    pub source: String,
    pub generators: String,
    pub ideal_i: String,
    pub ideal_l: String,
    pub degrees: String,
}

impl DataSet {
    pub fn embedded() -> Self {
        DataSet {
            source: "embedded".into(),
            generators: include_str!("../../data/generators.txt").into(),
            ideal_i: include_str!("../../data/ideal_I.txt").into(),
            ideal_l: include_str!("../../data/ideal_L.txt").into(),
            degrees: include_str!("../../data/degrees.txt").into(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name)).map_err(|e| Error::Io(format!("{}: {e}", dir.join(name).display())))
        };
        Ok(DataSet {
            source: dir.display().to_string(),
            generators: read(GENERATORS_FILE)?,
            ideal_i: read(IDEAL_I_FILE)?,
            ideal_l: read(IDEAL_L_FILE)?,
            degrees: read(DEGREES_FILE)?,
        })
    }

    /// SHA-256 of each file, hex encoded.
    pub fn checksums(&self) -> BTreeMap<String, String> {
        [
            (GENERATORS_FILE, &self.generators),
            (IDEAL_I_FILE, &self.ideal_i),
            (IDEAL_L_FILE, &self.ideal_l),
            (DEGREES_FILE, &self.degrees),
        ]
        .into_iter()
        .map(|(n, s)| (n.to_string(), hex::encode(Sha256::digest(s.as_bytes()))))
        .collect()
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub source: String,
    pub expr: Expr,
    pub order: u64,
    pub degree: u64,
    pub lead: Monomial,
}

/// `NAME = expr ; order=<m> degree=<d> lead=<monomial>`, continued on
/// indented lines.
pub fn parse_generators(text: &str) -> Result<Vec<GeneratorSpec>> {
    let mut statements: Vec<String> = Vec::new();
    for raw in text.lines() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            let last = statements
                .last_mut()
                .ok_or_else(|| Error::Parse(format!("continuation line without a statement: '{}'", line.trim())))?;
            last.push(' ');
            last.push_str(line.trim());
        } else {
            statements.push(line.trim().to_string());
        }
    }
    statements.iter().map(|s| parse_generator(s)).collect()
}

fn parse_generator(stmt: &str) -> Result<GeneratorSpec> {
    let bad = |what: &str| Error::Parse(format!("{what} in generator line '{stmt}'"));
    let (lhs, rest) = stmt.split_once('=').ok_or_else(|| bad("missing '='"))?;
    let name = lhs.trim().to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
        return Err(bad("bad name"));
    }
    let (formula, meta) = rest.split_once(';').ok_or_else(|| bad("missing ';' before annotations"))?;
    let (mut order, mut degree, mut lead) = (None, None, None);
    for kv in meta.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad("bad annotation"))?;
        match k {
            "order" => order = Some(v.parse().map_err(|_| bad("bad order"))?),
            "degree" => degree = Some(v.parse().map_err(|_| bad("bad degree"))?),
            "lead" => lead = Some(parse_monomial(v)?),
            _ => return Err(bad(&format!("unknown annotation '{k}'"))),
        }
    }
    Ok(GeneratorSpec {
        name,
        source: formula.trim().to_string(),
        expr: parse(formula)?,
        order: order.ok_or_else(|| bad("missing order"))?,
        degree: degree.ok_or_else(|| bad("missing degree"))?,
        lead: lead.ok_or_else(|| bad("missing lead"))?,
    })
}

/// Comma-separated rows; comments and blank lines skipped.
pub fn parse_table(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(strip_comment)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect())
        .collect()
}

pub fn check_shape<T>(name: &str, table: &[Vec<T>], rows: usize, cols: usize) -> Result<()> {
    if table.len() != rows {
        return Err(Error::Parse(format!("{name}: expected {rows} rows, found {}", table.len())));
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "{name}: row {} has {} entries, expected {cols}",
                r + 1,
                row.len()
            )));
        }
    }
    Ok(())
}

pub fn parse_degree_table(text: &str) -> Result<Vec<Vec<u64>>> {
    parse_table(text)
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|c| c.parse().map_err(|_| Error::Parse(format!("{DEGREES_FILE}: bad integer '{c}'"))))
                .collect()
        })
        .collect()
}
