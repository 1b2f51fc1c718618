//! Text syntax for polynomials and tuples.
//!
//! ```text
//! tuple  := '(' expr (',' expr)* ')'
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Variables are `z1` .. `z9` (zero-based indices 0..8). Binary forms may also
//! use `X0`, `X1`, which the caller maps to indices. Whitespace is ignored.
//! Floating literals are rejected.

use num_bigint::BigInt;

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Names of the projective coordinates of a binary form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Z(usize),
    X(usize),
}

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    Sym(Symbol),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
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
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let d = self.digits();
            if d.is_empty() {
                return self.err("expected a nonnegative integer exponent");
            }
            let k: u32 = match d.parse() {
                Ok(k) => k,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                if matches!(self.src.get(self.pos), Some(b'.') | Some(b'e') | Some(b'E')) {
                    return self.err("floating-point literals are not allowed");
                }
                Ok(Expr::Int(d.parse().expect("digit string")))
            }
            Some(b'z') => {
                self.pos += 1;
                let d = self.digits();
                match d.parse::<usize>() {
                    Ok(k) if (1..=9).contains(&k) && d.len() == 1 => Ok(Expr::Sym(Symbol::Z(k - 1))),
                    _ => self.err("variables are z1 .. z9"),
                }
            }
            Some(b'X') => {
                self.pos += 1;
                let d = self.digits();
                match d {
                    "0" => Ok(Expr::Sym(Symbol::X(0))),
                    "1" => Ok(Expr::Sym(Symbol::X(1))),
                    _ => self.err("binary form coordinates are X0, X1"),
                }
            }
            Some(b'.') => self.err("floating-point literals are not allowed"),
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn max_symbol(e: &Expr, f: &mut dyn FnMut(Symbol)) {
    match e {
        Expr::Int(_) => {}
        Expr::Sym(s) => f(*s),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            max_symbol(a, f);
            max_symbol(b, f);
        }
        Expr::Neg(a) | Expr::Pow(a, _) => max_symbol(a, f),
    }
}

fn build(e: &Expr, n: usize, map: &dyn Fn(Symbol) -> usize) -> MultiPoly {
    match e {
        Expr::Int(c) => MultiPoly::constant(n, c.clone()),
        Expr::Sym(s) => MultiPoly::var(n, map(*s)),
        Expr::Add(a, b) => &build(a, n, map) + &build(b, n, map),
        Expr::Sub(a, b) => &build(a, n, map) - &build(b, n, map),
        Expr::Mul(a, b) => &build(a, n, map) * &build(b, n, map),
        Expr::Neg(a) => -build(a, n, map),
        Expr::Pow(a, k) => build(a, n, map).pow(*k),
    }
}

fn parse_exprs(s: &str, tuple: bool) -> Result<Vec<Expr>> {
    let mut p = Parser::new(s);
    let mut out = Vec::new();
    if tuple {
        p.expect(b'(')?;
        loop {
            out.push(p.expr()?);
            if p.eat(b',') {
                continue;
            }
            p.expect(b')')?;
            break;
        }
    } else {
        out.push(p.expr()?);
    }
    if !p.at_end() {
        return p.err("trailing input");
    }
    Ok(out)
}

fn z_vars(exprs: &[Expr], num_vars: Option<usize>) -> Result<usize> {
    let mut max_z = 0usize;
    let mut has_x = false;
    for e in exprs {
        max_symbol(e, &mut |s| match s {
            Symbol::Z(i) => max_z = max_z.max(i + 1),
            Symbol::X(_) => has_x = true,
        });
    }
    if has_x {
        return Err(Error::Parse {
            offset: 0,
            message: "X0/X1 are only allowed in binary forms".into(),
        });
    }
    match num_vars {
        Some(n) if max_z > n => Err(Error::VarIndex {
            index: max_z - 1,
            num_vars: n,
        }),
        Some(n) => Ok(n),
        None => Ok(max_z),
    }
}

/// Parses a polynomial in exactly `num_vars` variables.
pub fn parse_poly_in(s: &str, num_vars: usize) -> Result<MultiPoly> {
    let exprs = parse_exprs(s, false)?;
    let n = z_vars(&exprs, Some(num_vars))?;
    Ok(build(&exprs[0], n, &|s| match s {
        Symbol::Z(i) => i,
        Symbol::X(_) => unreachable!(),
    }))
}

/// Parses a polynomial; the variable count is the largest index used.
pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let exprs = parse_exprs(s, false)?;
    let n = z_vars(&exprs, None)?;
    Ok(build(&exprs[0], n, &|s| match s {
        Symbol::Z(i) => i,
        Symbol::X(_) => unreachable!(),
    }))
}

/// Parses a parenthesized tuple. With `num_vars = None` the variable count is
/// the largest index used anywhere in the tuple.
pub fn parse_tuple(s: &str, num_vars: Option<usize>) -> Result<Vec<MultiPoly>> {
    let exprs = parse_exprs(s, true)?;
    let n = z_vars(&exprs, num_vars)?;
    Ok(exprs
        .iter()
        .map(|e| {
            build(e, n, &|s| match s {
                Symbol::Z(i) => i,
                Symbol::X(_) => unreachable!(),
            })
        })
        .collect())
}

/// Parses a binary form in `X0, X1` with coefficients in `Z[z_1..z_d]`.
/// The result has `num_vars + 2` variables: `z_1..z_d` first, then `X0, X1`.
pub fn parse_binary_form(s: &str, num_vars: Option<usize>) -> Result<(MultiPoly, usize)> {
    let exprs = parse_exprs(s, false)?;
    let mut max_z = 0usize;
    max_symbol(&exprs[0], &mut |s| {
        if let Symbol::Z(i) = s {
            max_z = max_z.max(i + 1)
        }
    });
    let d = match num_vars {
        Some(n) if max_z > n => {
            return Err(Error::VarIndex {
                index: max_z - 1,
                num_vars: n,
            })
        }
        Some(n) => n,
        None => max_z,
    };
    let f = build(&exprs[0], d + 2, &|s| match s {
        Symbol::Z(i) => i,
        Symbol::X(j) => d + j,
    });
    Ok((f, d))
}
