//! Text front end for rings, polynomials and matrices.
//!
//! ```text
//! ring    := ("QQ" | "GF(" int ")") "[" name ("," name)* "]"
//!            [ "weights=(" int ("," int)* ")" ]
//!            [ "order=" ("lex"|"grlex"|"grevlex"|"elim(" int ")") ]
//!            [ "mod=(" poly ("," poly)* ")" ]
//! poly    := term (("+"|"-") term)*
//! term    := [int "*"?] factor ("*" factor)*
//! factor  := name ["^" int] | "(" poly ")" | int
//! matrix  := "[" row ("," row)* "]" ;  row := "[" poly ("," poly)* "]"
//! ```
//!
//! Whitespace is insignificant. Coefficients may be written as fractions
//! `p/q` so that printed rational polynomials parse back.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::MonomialOrder;
use crate::poly::{FreeElement, Polynomial};
use crate::ring::{Ring, RingRef};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
    Eof,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(usize, Tok)>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            peeked: None,
        }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset,
            message: message.into(),
        })
    }

    fn lex(&mut self) -> Result<(usize, Tok)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if start >= bytes.len() {
            return Ok((start, Tok::Eof));
        }
        let c = bytes[start];
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Tok::Int(n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((start, Tok::Name(self.src[start..self.pos].to_string())));
        }
        if "+-*^/()[],=".contains(c as char) {
            self.pos += 1;
            return Ok((start, Tok::Sym(c as char)));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        self.err(start, format!("unexpected character `{ch}`"))
    }

    fn peek(&mut self) -> Result<&(usize, Tok)> {
        if self.peeked.is_none() {
            let t = self.lex()?;
            self.peeked = Some(t);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<usize> {
        let (off, t) = self.next()?;
        if t == Tok::Sym(c) {
            Ok(off)
        } else {
            self.err(off, format!("expected `{c}`, found {}", describe(&t)))
        }
    }

    fn eat_sym(&mut self, c: char) -> Result<bool> {
        if self.peek()?.1 == Tok::Sym(c) {
            self.next()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect_int(&mut self) -> Result<(usize, BigInt)> {
        let (off, t) = self.next()?;
        match t {
            Tok::Int(n) => Ok((off, n)),
            other => self.err(off, format!("expected integer, found {}", describe(&other))),
        }
    }

    fn expect_small(&mut self) -> Result<u64> {
        let (off, n) = self.expect_int()?;
        n.to_u64()
            .ok_or(Error::Syntax {
                offset: off,
                message: "integer too large".into(),
            })
    }

    fn expect_name(&mut self) -> Result<(usize, String)> {
        let (off, t) = self.next()?;
        match t {
            Tok::Name(n) => Ok((off, n)),
            other => self.err(off, format!("expected name, found {}", describe(&other))),
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        let (off, t) = self.next()?;
        if t == Tok::Eof {
            Ok(())
        } else {
            self.err(off, format!("unexpected {}", describe(&t)))
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer {n}"),
        Tok::Name(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

pub fn parse_ring(text: &str) -> Result<RingRef> {
    let mut lx = Lexer::new(text);
    let (off, head) = lx.expect_name()?;
    let field = match head.as_str() {
        "QQ" => Field::Rationals,
        "GF" => {
            lx.expect_sym('(')?;
            let p = lx.expect_small()?;
            lx.expect_sym(')')?;
            Field::prime(p)?
        }
        _ => return lx.err(off, "expected `QQ` or `GF(p)`"),
    };
    lx.expect_sym('[')?;
    let mut vars = vec![lx.expect_name()?.1];
    while lx.eat_sym(',')? {
        vars.push(lx.expect_name()?.1);
    }
    lx.expect_sym(']')?;

    let mut weights = None;
    let mut order = None;
    let mut modulus_src: Option<(usize, usize)> = None;
    loop {
        let (off, t) = lx.peek()?.clone();
        let key = match t {
            Tok::Eof => break,
            Tok::Name(k) => k,
            other => return lx.err(off, format!("unexpected {}", describe(&other))),
        };
        lx.next()?;
        lx.expect_sym('=')?;
        match key.as_str() {
            "weights" if weights.is_none() => {
                lx.expect_sym('(')?;
                let mut w = Vec::new();
                loop {
                    let (woff, t) = lx.next()?;
                    let v = match t {
                        Tok::Int(n) => n,
                        Tok::Sym('-') => {
                            lx.expect_int()?;
                            return Err(Error::BadWeights);
                        }
                        other => return lx.err(woff, format!("expected weight, found {}", describe(&other))),
                    };
                    let v = v.to_u32().ok_or(Error::BadWeights)?;
                    w.push(v);
                    if !lx.eat_sym(',')? {
                        break;
                    }
                }
                lx.expect_sym(')')?;
                weights = Some(w);
            }
            "order" if order.is_none() => {
                let (ooff, name) = lx.expect_name()?;
                order = Some(match name.as_str() {
                    "lex" => MonomialOrder::Lex,
                    "grlex" => MonomialOrder::Grlex,
                    "grevlex" => MonomialOrder::Grevlex,
                    "elim" => {
                        lx.expect_sym('(')?;
                        let k = lx.expect_small()? as usize;
                        lx.expect_sym(')')?;
                        MonomialOrder::Elimination(k)
                    }
                    _ => return lx.err(ooff, format!("unknown order `{name}`")),
                });
            }
            "mod" if modulus_src.is_none() => {
                let open = lx.expect_sym('(')?;
                // Skip to the matching parenthesis; polynomials are parsed
                // once the ring is known.
                let mut depth = 1;
                let close;
                loop {
                    let (o, t) = lx.next()?;
                    match t {
                        Tok::Sym('(') => depth += 1,
                        Tok::Sym(')') => {
                            depth -= 1;
                            if depth == 0 {
                                close = o;
                                break;
                            }
                        }
                        Tok::Eof => return lx.err(o, "unterminated `mod=(`"),
                        _ => {}
                    }
                }
                modulus_src = Some((open + 1, close));
            }
            _ => return lx.err(off, format!("unexpected option `{key}`")),
        }
    }

    let unit = weights.as_ref().map_or(true, |w: &Vec<u32>| w.iter().all(|&x| x == 1));
    let order = order.unwrap_or(if unit {
        MonomialOrder::Grevlex
    } else {
        MonomialOrder::WeightedGrevlex
    });
    if weights.as_ref().is_some_and(|w| w.len() != vars.len()) {
        return Err(Error::BadWeights);
    }
    let ring = Ring::new(field, vars, weights, order)?;
    match modulus_src {
        None => Ok(Arc::new(ring)),
        Some((a, b)) => {
            let free = Arc::new(ring.clone());
            let gens = parse_poly_list(&free, &text[a..b]).map_err(|e| shift(e, a))?;
            if gens.iter().any(|g| g.is_zero()) {
                return Err(Error::Invalid("quotient generators must be nonzero".into()));
            }
            Ok(Arc::new(ring.with_quotient(&gens)?))
        }
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { offset, message } => Error::Syntax {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

struct PolyParser<'a, 'r> {
    lx: Lexer<'a>,
    ring: &'r RingRef,
}

impl PolyParser<'_, '_> {
    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.lx.eat_sym('+')? {
                acc = &acc + &self.term()?;
            } else if self.lx.eat_sym('-')? {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            let (_, t) = self.lx.peek()?.clone();
            match t {
                Tok::Sym('*') => {
                    self.lx.next()?;
                    acc = &acc * &self.factor()?;
                }
                // implicit product such as `3x` or `2(a+b)`
                Tok::Name(_) | Tok::Sym('(') => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.lx.eat_sym('^')? {
            let e = self.lx.expect_small()?;
            let e = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            return base.checked_pow(e as i64);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (off, t) = self.lx.next()?;
        match t {
            Tok::Sym('-') => Ok(-&self.factor()?),
            Tok::Sym('+') => self.factor(),
            Tok::Sym('(') => {
                let p = self.poly()?;
                self.lx.expect_sym(')')?;
                Ok(p)
            }
            Tok::Int(n) => {
                let den = if self.lx.eat_sym('/')? {
                    let (doff, d) = self.lx.expect_int()?;
                    if d.is_zero() {
                        return self.lx.err(doff, "zero denominator");
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let c = self.ring.field().from_fraction(&n, &den).map_err(|e| match e {
                    Error::Invalid(m) => Error::Syntax {
                        offset: off,
                        message: m,
                    },
                    e => e,
                })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Name(name) => Polynomial::var_named(self.ring, &name),
            other => self.lx.err(off, format!("unexpected {}", describe(&other))),
        }
    }
}

pub fn parse_poly(ring: &RingRef, text: &str) -> Result<Polynomial> {
    let mut p = PolyParser {
        lx: Lexer::new(text),
        ring,
    };
    let f = p.poly()?;
    p.lx.expect_eof()?;
    Ok(f)
}

/// Comma-separated polynomials. An empty (or blank) string gives no polynomials.
pub fn parse_poly_list(ring: &RingRef, text: &str) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut p = PolyParser {
        lx: Lexer::new(text),
        ring,
    };
    let mut out = vec![p.poly()?];
    while p.lx.eat_sym(',')? {
        out.push(p.poly()?);
    }
    p.lx.expect_eof()?;
    Ok(out)
}

/// Parses `[[..],[..]]` into rows. Rows may be empty (`[]`) but must all
/// have the same length.
pub fn parse_matrix_rows(ring: &RingRef, text: &str) -> Result<Vec<Vec<Polynomial>>> {
    let mut p = PolyParser {
        lx: Lexer::new(text),
        ring,
    };
    p.lx.expect_sym('[')?;
    let mut rows = Vec::new();
    if !p.lx.eat_sym(']')? {
        loop {
            let off = p.lx.expect_sym('[')?;
            let mut row = Vec::new();
            if !p.lx.eat_sym(']')? {
                row.push(p.poly()?);
                while p.lx.eat_sym(',')? {
                    row.push(p.poly()?);
                }
                p.lx.expect_sym(']')?;
            }
            if let Some(first) = rows.first() {
                let first: &Vec<Polynomial> = first;
                if first.len() != row.len() {
                    return p.lx.err(off, "rows have different lengths");
                }
            }
            rows.push(row);
            if !p.lx.eat_sym(',')? {
                break;
            }
        }
        p.lx.expect_sym(']')?;
    }
    p.lx.expect_eof()?;
    Ok(rows)
}

/// Parses a single vector `[p1, p2, ...]`.
pub fn parse_vector(ring: &RingRef, text: &str) -> Result<FreeElement> {
    let wrapped = format!("[{text}]");
    let rows = parse_matrix_rows(ring, &wrapped).map_err(|e| match e {
        Error::Syntax { offset, message } => Error::Syntax {
            offset: offset.saturating_sub(1),
            message,
        },
        e => e,
    })?;
    match rows.into_iter().next() {
        Some(row) if !row.is_empty() => Ok(FreeElement::new(row)),
        _ => Err(Error::Invalid("empty vector".into())),
    }
}
