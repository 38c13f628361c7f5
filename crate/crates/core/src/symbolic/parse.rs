//! Text parser for polynomials.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! variable := name ('_(' integer (',' (integer | 's' | 't'))? ')')?
//! ```
//!
//! Division is only accepted by a nonzero constant, which is enough to read
//! back every printed polynomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Polynomial;
use super::variable::{Branch, VarKind, Variable};
use crate::error::{Error, Result};

/// The variables a parse is allowed to mention.
#[derive(Clone, Debug, Default)]
pub struct VariableTable {
    allowed: Option<BTreeSet<Variable>>,
}

impl VariableTable {
    /// Accepts any variable name.
    pub fn open() -> Self {
        VariableTable { allowed: None }
    }

    pub fn new<I: IntoIterator<Item = Variable>>(vars: I) -> Self {
        VariableTable {
            allowed: Some(vars.into_iter().collect()),
        }
    }

    pub fn plain<S: AsRef<str>>(names: &[S]) -> Self {
        Self::new(names.iter().map(|n| Variable::plain(n.as_ref())))
    }

    pub fn contains(&self, v: &Variable) -> bool {
        self.allowed.as_ref().is_none_or(|s| s.contains(v))
    }
}

pub fn parse_polynomial(text: &str, table: &VariableTable) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        table,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a VariableTable,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                let c = match d.terms().next() {
                    Some((m, c)) if d.len() == 1 && m.is_one() => c.clone(),
                    _ => {
                        return Err(Error::Parse {
                            pos: at,
                            message: "division only by a nonzero constant".into(),
                        })
                    }
                };
                acc = acc.scale(&(BigRational::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            Ok(-&self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.bigint()?;
                Ok(Polynomial::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn bigint(&mut self) -> Result<BigInt> {
        let s = self.digits()?;
        Ok(s.parse().expect("digits parse as BigInt"))
    }

    fn integer(&mut self) -> Result<u64> {
        let at = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| Error::Parse {
            pos: at,
            message: "integer out of range".into(),
        })
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let superscript = c == b'_' && self.src.get(self.pos + 1) == Some(&b'(');
            if superscript || !(c.is_ascii_alphanumeric() || c == b'_') {
                break;
            }
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
        let name = name.to_string();
        let kind = if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 2;
            self.skip_ws();
            let a = self.small()?;
            if self.eat(b',') {
                match self.peek() {
                    Some(b's') | Some(b't') => {
                        let b = if self.src[self.pos] == b's' {
                            Branch::S
                        } else {
                            Branch::T
                        };
                        self.pos += 1;
                        self.expect(b')')?;
                        VarKind::FiberJet(a, b)
                    }
                    _ => {
                        self.skip_ws();
                        let b = self.small()?;
                        self.expect(b')')?;
                        VarKind::Wedge(a, b)
                    }
                }
            } else {
                self.expect(b')')?;
                VarKind::Jet(a)
            }
        } else {
            VarKind::Plain
        };
        let v = Variable::new(name, kind);
        if !self.table.contains(&v) {
            return Err(Error::UnknownVariable {
                name: v.to_string(),
                pos: start,
            });
        }
        Ok(Polynomial::var(v))
    }

    fn small(&mut self) -> Result<u32> {
        let at = self.pos;
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            pos: at,
            message: "superscript out of range".into(),
        })
    }
}
