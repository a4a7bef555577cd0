//! Tokenizer and term parsers shared by polynomials, fields, forms and
//! bracket expressions.

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::superpoly::{RingRef, SuperPoly};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
}

#[derive(Clone, Debug)]
pub(crate) struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    pub(crate) fn new(s: &str) -> Result<Lexer> {
        let mut toks = Vec::new();
        let b: Vec<(usize, char)> = s.char_indices().collect();
        let mut i = 0;
        while i < b.len() {
            let (at, c) = b[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let mut j = i;
                while j < b.len() && b[j].1.is_ascii_digit() {
                    j += 1;
                }
                toks.push((at, Tok::Num(b[i..j].iter().map(|x| x.1).collect())));
                i = j;
            } else if c.is_alphabetic() || c == '_' {
                let mut j = i;
                while j < b.len() && (b[j].1.is_alphanumeric() || b[j].1 == '_') {
                    j += 1;
                }
                toks.push((at, Tok::Ident(b[i..j].iter().map(|x| x.1).collect())));
                i = j;
            } else if "[](),*+-/^;=".contains(c) {
                toks.push((at, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            end: s.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.1)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    /// Parses `digits` or `digits/digits`.
    pub(crate) fn rational(&mut self) -> Result<Q> {
        let n = match self.next() {
            Some(Tok::Num(n)) => n,
            _ => return Err(self.err("expected number")),
        };
        if self.peek() == Some(&Tok::Sym('/')) && matches!(self.peek_at(1), Some(Tok::Num(_))) {
            self.pos += 1;
            let d = match self.next() {
                Some(Tok::Num(d)) => d,
                _ => unreachable!(),
            };
            return format!("{n}/{d}")
                .parse()
                .map_err(|_| self.err("zero denominator"));
        }
        n.parse().map_err(|_| self.err("bad number"))
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.next() {
            Some(Tok::Num(n)) => n.parse().map_err(|_| self.err("exponent too large")),
            _ => Err(self.err("expected exponent")),
        }
    }
}

/// One summand of a field or form: coefficient polynomial plus an optional
/// derivation target and a list of differentials (in written order).
pub(crate) struct RawTerm {
    pub coeff: SuperPoly,
    pub deriv: Option<usize>,
    pub diffs: Vec<usize>,
}

fn parse_factor(ring: &RingRef, lx: &mut Lexer, term: &mut RawTerm, allow_geom: bool) -> Result<()> {
    match lx.peek().cloned() {
        Some(Tok::Num(_)) => {
            let q = lx.rational()?;
            term.coeff = term.coeff.scale(&q);
            Ok(())
        }
        Some(Tok::Sym('(')) => {
            lx.next();
            let inner = parse_sum(ring, lx)?;
            lx.expect(')')?;
            term.coeff = term.coeff.mul(&inner);
            Ok(())
        }
        Some(Tok::Ident(name)) => {
            let at = lx.offset();
            lx.next();
            if allow_geom && name == "d" && lx.peek() == Some(&Tok::Sym('/')) {
                lx.next();
                let target = match lx.next() {
                    Some(Tok::Ident(t)) if t.starts_with('d') => t[1..].to_string(),
                    _ => return Err(lx.err("expected d/dNAME")),
                };
                if term.deriv.is_some() {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "two derivations in one term".into(),
                    });
                }
                term.deriv = Some(ring.index(&target)?);
                return Ok(());
            }
            if let Ok(i) = ring.index(&name) {
                let mut e = 1;
                if lx.peek() == Some(&Tok::Sym('^')) && matches!(lx.peek_at(1), Some(Tok::Num(_))) {
                    lx.next();
                    e = lx.small_int()?;
                }
                let v = SuperPoly::var(ring, i);
                for _ in 0..e {
                    term.coeff = term.coeff.mul(&v);
                }
                return Ok(());
            }
            if allow_geom && name.len() > 1 && name.starts_with('d') {
                if let Ok(i) = ring.index(&name[1..]) {
                    term.diffs.push(i);
                    while lx.peek() == Some(&Tok::Sym('^')) {
                        lx.next();
                        match lx.next() {
                            Some(Tok::Ident(d)) if d.starts_with('d') => {
                                term.diffs.push(ring.index(&d[1..])?);
                            }
                            _ => return Err(lx.err("expected differential after `^`")),
                        }
                    }
                    return Ok(());
                }
            }
            Err(Error::Parse {
                pos: at,
                msg: format!("unknown symbol `{name}`"),
            })
        }
        _ => Err(lx.err("expected factor")),
    }
}

fn parse_term(ring: &RingRef, lx: &mut Lexer, allow_geom: bool) -> Result<RawTerm> {
    let mut term = RawTerm {
        coeff: SuperPoly::one(ring),
        deriv: None,
        diffs: Vec::new(),
    };
    parse_factor(ring, lx, &mut term, allow_geom)?;
    while lx.eat('*') {
        parse_factor(ring, lx, &mut term, allow_geom)?;
    }
    Ok(term)
}

/// Parses a signed sum of terms; stops at the first token that cannot
/// continue the sum.
pub(crate) fn parse_terms(ring: &RingRef, lx: &mut Lexer, allow_geom: bool) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    let mut neg = false;
    if lx.eat('-') {
        neg = true;
    } else {
        lx.eat('+');
    }
    loop {
        let mut t = parse_term(ring, lx, allow_geom)?;
        if neg {
            t.coeff = t.coeff.neg();
        }
        out.push(t);
        if lx.eat('+') {
            neg = false;
        } else if lx.eat('-') {
            neg = true;
        } else {
            break;
        }
    }
    Ok(out)
}

fn parse_sum(ring: &RingRef, lx: &mut Lexer) -> Result<SuperPoly> {
    let mut acc = SuperPoly::zero(ring);
    for t in parse_terms(ring, lx, false)? {
        acc = acc.add(&t.coeff);
    }
    Ok(acc)
}

pub(crate) fn parse_poly(ring: &RingRef, s: &str) -> Result<SuperPoly> {
    let mut lx = Lexer::new(s)?;
    let p = parse_sum(ring, &mut lx)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(p)
}

/// Parses a whole string of geometric terms (fields or forms).
pub(crate) fn parse_geom(ring: &RingRef, s: &str) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer::new(s)?;
    if lx.at_end() || (lx.peek() == Some(&Tok::Num("0".into())) && lx.toks.len() == 1) {
        return Ok(Vec::new());
    }
    let t = parse_terms(ring, &mut lx, true)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::Ring;

    #[test]
    fn parse_errors_carry_position() {
        let r = Ring::from_names(&[("u", false)]).unwrap();
        match parse_poly(&r, "u + w") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(&r, "u +").is_err());
        assert!(parse_poly(&r, "1/0").is_err());
    }

    #[test]
    fn parentheses_and_powers() {
        let r = Ring::from_names(&[("u", false), ("v", false)]).unwrap();
        let a = parse_poly(&r, "(u + v)^1*(u - v)").unwrap_err();
        assert!(matches!(a, Error::Parse { .. }));
        let b = parse_poly(&r, "(u + v)*(u - v)").unwrap();
        assert_eq!(b, parse_poly(&r, "u^2 - v^2").unwrap());
    }
}
