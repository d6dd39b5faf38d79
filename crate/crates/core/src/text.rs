//! Textual polynomial format.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*        division only by nonzero constants
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | variable | schur | '(' expr ')'
//! variable:= name '[' integer (',' integer)* ']'     name in z, t, u, v
//! schur   := 's' '[' (integer (',' integer)*)? ']' '(' block ')'
//! block   := name | name '[' integer ']'
//! ```
//!
//! Whitespace is ignored between tokens. Variables and Schur blocks are
//! resolved through a [`Resolver`], which is how callers impose bounds.

use thiserror::Error;

use crate::poly::{Polynomial, Rational, VarId};
use crate::schur::{schur_poly, Partition};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { position: usize, name: String },
}

/// Why a name could not be resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveError {
    Unknown,
    Invalid(String),
}

/// Maps surface names to variables.
pub trait Resolver {
    fn variable(&self, name: &str, indices: &[u32]) -> Result<VarId, ResolveError>;
    /// The ordered variables of a block named in a Schur shorthand, e.g.
    /// `z` or `z[2]`.
    fn block(&self, name: &str, group: Option<u32>) -> Result<Vec<VarId>, ResolveError>;
}

/// Accepts every well-formed variable; `z[i]` means `z[1,i]`. Blocks are not
/// known without a space, so Schur shorthands are rejected.
pub struct FreeResolver;

fn to_u16(x: u32) -> Result<u16, ResolveError> {
    match u16::try_from(x) {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(ResolveError::Invalid(format!("index {x} out of range"))),
    }
}

impl Resolver for FreeResolver {
    fn variable(&self, name: &str, idx: &[u32]) -> Result<VarId, ResolveError> {
        match (name, idx) {
            ("z", [i]) => Ok(VarId::z(1, to_u16(*i)?)),
            ("z", [g, i]) => Ok(VarId::z(to_u16(*g)?, to_u16(*i)?)),
            ("t", [i]) => Ok(VarId::t(to_u16(*i)?)),
            ("u", [i]) => Ok(VarId::u(to_u16(*i)?)),
            ("v", [m, j]) => Ok(VarId::v(to_u16(*m)?, to_u16(*j)?)),
            _ => Err(ResolveError::Unknown),
        }
    }

    fn block(&self, _name: &str, _group: Option<u32>) -> Result<Vec<VarId>, ResolveError> {
        Err(ResolveError::Invalid("block size unknown without a space".into()))
    }
}

/// Parses with [`FreeResolver`].
pub fn parse_polynomial(input: &str) -> Result<Polynomial, ParseError> {
    parse_with(input, &FreeResolver)
}

pub fn parse_with(input: &str, resolver: &dyn Resolver) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        resolver,
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
    resolver: &'a dyn Resolver,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| ParseError::Syntax {
            position: start,
            message: "integer too large".into(),
        })
    }

    fn index_list(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.small()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
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

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => {
                        return Err(ParseError::Syntax {
                            position: at,
                            message: "division only by nonzero constants".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn name(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(Polynomial::constant(Rational::from_integer(self.integer()?)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.name();
                if name == "s" {
                    return self.schur(start);
                }
                let idx = self.index_list()?;
                let shown = format!(
                    "{}[{}]",
                    name,
                    idx.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                );
                match self.resolver.variable(&name, &idx) {
                    Ok(v) => Ok(Polynomial::var(v)),
                    Err(ResolveError::Unknown) => Err(ParseError::UnknownVariable {
                        position: start,
                        name: shown,
                    }),
                    Err(ResolveError::Invalid(m)) => Err(ParseError::Syntax {
                        position: start,
                        message: m,
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn schur(&mut self, start: usize) -> Result<Polynomial, ParseError> {
        let parts = self.index_list()?;
        let lambda = Partition::new(parts).map_err(|m| ParseError::Syntax {
            position: start,
            message: m,
        })?;
        self.expect(b'(')?;
        self.skip_ws();
        let bstart = self.pos;
        let name = self.name();
        if name.is_empty() {
            return Err(self.error("expected a variable block"));
        }
        let group = if self.peek() == Some(b'[') {
            let idx = self.index_list()?;
            match idx[..] {
                [g] => Some(g),
                _ => return Err(self.error("block takes a single group index")),
            }
        } else {
            None
        };
        self.expect(b')')?;
        let vars = match self.resolver.block(&name, group) {
            Ok(v) => v,
            Err(ResolveError::Unknown) => {
                return Err(ParseError::UnknownVariable {
                    position: bstart,
                    name: match group {
                        Some(g) => format!("{name}[{g}]"),
                        None => name,
                    },
                })
            }
            Err(ResolveError::Invalid(m)) => {
                return Err(ParseError::Syntax {
                    position: bstart,
                    message: m,
                })
            }
        };
        if lambda.len() > vars.len() {
            return Err(ParseError::Syntax {
                position: start,
                message: format!(
                    "partition has {} parts but the block has {} variables",
                    lambda.len(),
                    vars.len()
                ),
            });
        }
        Ok(schur_poly(&lambda, &vars))
    }
}
