//! Polynomial expressions in the data-file syntax.
//!
//! Names are a letter followed by digits (`x`, `A01`, `D56`), so `yz^3`
//! reads as `y·z^3`. Juxtaposition and `*` multiply, `^` takes a
//! nonnegative integer exponent, `(…)` and `{…}` group, and `/` is allowed
//! only with a power of `x` on the right, where it must divide exactly.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactmath::FieldSpec;
use crate::poly::{Monomial, SparsePoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(u64),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            out.push(Tok::Name(chars[i..j].iter().collect()));
            i = j;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let v = s.parse().map_err(|_| Error::Parse(format!("integer '{s}' out of range")))?;
            out.push(Tok::Int(v));
            i = j;
        } else if "+-*/^(){}".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in '{src}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in '{}'", self.pos, self.src.trim()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Name(_)) | Some(Tok::Int(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('{'))
        )
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else if self.starts_factor() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = *n;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                Some(Tok::Sym('{')) => {
                    // x^{28}
                    self.pos += 1;
                    let Some(Tok::Int(n)) = self.peek().cloned() else {
                        return Err(self.err("expected an exponent"));
                    };
                    self.pos += 1;
                    if !self.eat('}') {
                        return Err(self.err("expected '}'"));
                    }
                    Ok(Expr::Pow(Box::new(base), n))
                }
                _ => Err(self.err("expected an exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Name(s)) => {
                self.pos += 1;
                Ok(Expr::Name(s))
            }
            Some(Tok::Sym(open @ ('(' | '{'))) => {
                self.pos += 1;
                let e = self.expr()?;
                let close = if open == '(' { ')' } else { '}' };
                if !self.eat(close) {
                    return Err(self.err(&format!("expected '{close}'")));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a name, number or '('")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Named polynomials available to [`Expr::eval`]; `x`, `y`, `z` are
/// always defined.
pub struct Env {
    pub field: FieldSpec,
    pub names: HashMap<String, SparsePoly>,
}

impl Env {
    pub fn new(field: FieldSpec) -> Self {
        Env {
            field,
            names: HashMap::new(),
        }
    }

    fn lookup(&self, name: &str) -> Result<SparsePoly> {
        let var = |m: Monomial| SparsePoly::monomial(self.field, self.field.one(), m);
        match name {
            "x" => Ok(var(Monomial::new(1, 0, 0))),
            "y" => Ok(var(Monomial::new(0, 1, 0))),
            "z" => Ok(var(Monomial::new(0, 0, 1))),
            _ => self
                .names
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("undefined name '{name}'"))),
        }
    }
}

impl Expr {
    /// Evaluates over `env.field`; `context` labels division failures.
    pub fn eval(&self, env: &Env, context: &str) -> Result<SparsePoly> {
        let f = env.field;
        Ok(match self {
            Expr::Int(n) => SparsePoly::constant(f, *n as i64),
            Expr::Name(s) => env.lookup(s)?,
            Expr::Neg(e) => e.eval(env, context)?.neg(),
            Expr::Add(a, b) => a.eval(env, context)?.add(&b.eval(env, context)?)?,
            Expr::Sub(a, b) => a.eval(env, context)?.sub(&b.eval(env, context)?)?,
            Expr::Mul(a, b) => a.eval(env, context)?.mul(&b.eval(env, context)?)?,
            Expr::Pow(a, n) => a.eval(env, context)?.pow(*n),
            Expr::Div(a, b) => {
                let e = b.x_power().ok_or_else(|| {
                    Error::Parse(format!("{context}: only division by a power of x is supported"))
                })?;
                a.eval(env, context)?.exact_div_x(e as u32, context)?
            }
        })
    }

    /// `Some(e)` if this is literally `x` or `x^e`.
    pub fn x_power(&self) -> Option<u64> {
        match self {
            Expr::Name(s) if s == "x" => Some(1),
            Expr::Pow(b, n) if matches!(b.as_ref(), Expr::Name(s) if s == "x") => Some(*n),
            _ => None,
        }
    }

    /// Total order of a product of names, `x`, `y`, `z` counting 0.
    /// `None` unless the expression is a pure product.
    pub fn product_order(&self, orders: &HashMap<String, u64>) -> Option<u64> {
        match self {
            Expr::Name(s) if matches!(s.as_str(), "x" | "y" | "z") => Some(0),
            Expr::Name(s) => orders.get(s).copied(),
            Expr::Pow(b, n) => b.product_order(orders).map(|o| o * n),
            Expr::Mul(a, b) => Some(a.product_order(orders)? + b.product_order(orders)?),
            _ => None,
        }
    }
}

/// Parses a single monomial with coefficient one, such as `y^2*z^11`.
pub fn parse_monomial(src: &str) -> Result<Monomial> {
    let field = FieldSpec::gf2();
    let p = parse(src)?.eval(&Env::new(field), src)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if *c == field.one() => Ok(*m),
        _ => Err(Error::Parse(format!("'{src}' is not a monomial"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2_eval(src: &str) -> SparsePoly {
        parse(src).unwrap().eval(&Env::new(FieldSpec::gf2()), "test").unwrap()
    }

    #[test]
    fn juxtaposition_and_precedence() {
        assert_eq!(gf2_eval("yz^3"), gf2_eval("y*z*z*z"));
        assert_eq!(gf2_eval("x^28 z"), gf2_eval("x^{28}*z"));
        assert_eq!(gf2_eval("2 y"), SparsePoly::zero(FieldSpec::gf2()));
        assert_eq!(gf2_eval("(x + y)^2"), gf2_eval("x^2 + y^2"));
    }

    #[test]
    fn signs_over_q() {
        let q = FieldSpec::rationals();
        let env = Env::new(q);
        let a = parse("-(x - y) + x").unwrap().eval(&env, "t").unwrap();
        assert_eq!(a, parse("y").unwrap().eval(&env, "t").unwrap());
    }

    #[test]
    fn division_must_be_exact_and_by_x() {
        let env = Env::new(FieldSpec::gf2());
        assert_eq!(
            parse("(x^3 y + x^2 z)/x^2").unwrap().eval(&env, "t").unwrap(),
            gf2_eval("x y + z")
        );
        assert!(matches!(
            parse("(x^3 y + x z)/x^2").unwrap().eval(&env, "t"),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(parse("x / y").unwrap().eval(&env, "t"), Err(Error::Parse(_))));
        assert_eq!(parse("(y z)/x^0").unwrap().eval(&env, "t").unwrap(), gf2_eval("yz"));
    }

    #[test]
    fn parse_errors() {
        assert!(parse("").is_err());
        assert!(parse("(x + y").is_err());
        assert!(parse("x ^ y").is_err());
        assert!(parse("x $ y").is_err());
        assert!(parse("x )").is_err());
        assert!(matches!(
            parse("Q7").unwrap().eval(&Env::new(FieldSpec::gf2()), "t"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn product_orders() {
        let orders: HashMap<String, u64> = [("B01".to_string(), 1), ("D04".to_string(), 4)].into();
        assert_eq!(parse("B01^3 D04^14").unwrap().product_order(&orders), Some(59));
        assert_eq!(parse("y B01").unwrap().product_order(&orders), Some(1));
        assert_eq!(parse("B01 + D04").unwrap().product_order(&orders), None);
    }

    #[test]
    fn monomials() {
        assert_eq!(parse_monomial("y^2*z^11").unwrap(), Monomial::new(0, 2, 11));
        assert_eq!(parse_monomial("z^104").unwrap(), Monomial::new(0, 0, 104));
        assert!(parse_monomial("y + z").is_err());
    }
}
