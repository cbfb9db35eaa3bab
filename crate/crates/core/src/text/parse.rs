//! Recursive-descent parsers for the text grammars.
//!
//! Every parser tracks 1-based line/column positions and reports them in
//! syntax errors. Whitespace is insignificant inside expressions.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::domain::{DomainExpr, Element};
use crate::emb::LocalEmbedding;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::front::{PetriNet, VecSum, VectorFamily};
use crate::gb::Basis;
use crate::monomial::Monomial;
use crate::ordinal::Ordinal;
use crate::poly::Polynomial;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t') | Some(b'\r')) {
            self.bump();
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => Err(self.err(format!(
                "expected '{}', found '{}'",
                c as char, got as char
            ))),
            None => Err(self.err(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn try_eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            for _ in 0..kw.len() {
                self.bump();
            }
            Ok(())
        } else {
            Err(self.err(format!("expected '{kw}'")))
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c as char);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            Err(self.err("expected a number"))
        } else {
            Ok(s)
        }
    }

    fn nat_u64(&mut self) -> Result<u64> {
        let s = self.digits()?;
        s.parse().map_err(|_| self.err("number too large"))
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected trailing '{}'", c as char))),
        }
    }

    fn domain(&mut self) -> Result<DomainExpr> {
        self.skip_ws();
        match self.peek() {
            Some(b'o') => {
                self.eat_keyword("ord")?;
                self.eat(b'[')?;
                let k = self.nat_u64()?;
                self.eat(b']')?;
                if k == 0 {
                    return Err(self.err("ord[k] needs k >= 1"));
                }
                Ok(DomainExpr::Ord(k as usize))
            }
            Some(b'f') => {
                self.eat_keyword("fin")?;
                self.eat(b'[')?;
                let d = self.nat_u64()?;
                self.eat(b']')?;
                if d == 0 {
                    return Err(self.err("fin[d] needs d >= 1"));
                }
                Ok(DomainExpr::Fin(d))
            }
            Some(b'l') => {
                self.eat_keyword("lex")?;
                self.eat(b'(')?;
                let left = self.domain()?;
                self.eat(b',')?;
                let right = self.domain()?;
                self.eat(b')')?;
                Ok(DomainExpr::lex(left, right))
            }
            Some(b'q') => {
                self.bump();
                Ok(DomainExpr::Rat)
            }
            Some(b'e') => {
                self.eat_keyword("eq")?;
                Ok(DomainExpr::Eq)
            }
            _ => Err(self.err("expected a domain expression")),
        }
    }

    fn element(&mut self, d: &DomainExpr) -> Result<Element> {
        self.skip_ws();
        match d {
            DomainExpr::Ord(k) => {
                if self.peek() == Some(b'<') {
                    self.bump();
                    let mut coeffs = vec![self.nat_u64()?];
                    while self.try_eat(b',') {
                        coeffs.push(self.nat_u64()?);
                    }
                    self.eat(b'>')?;
                    if coeffs.len() != *k {
                        return Err(self.err(format!(
                            "ordinal literal has {} positions, domain needs {k}",
                            coeffs.len()
                        )));
                    }
                    Ok(Element::Ord(Ordinal::new(coeffs)))
                } else if *k == 1 {
                    Ok(Element::Ord(Ordinal::new(vec![self.nat_u64()?])))
                } else {
                    Err(self.err("expected an ordinal literal <...>"))
                }
            }
            DomainExpr::Fin(dd) => {
                let n = self.nat_u64()?;
                if n >= *dd {
                    return Err(self.err(format!("element {n} out of range for fin[{dd}]")));
                }
                Ok(Element::Fin(n))
            }
            DomainExpr::Lex(l, r) => {
                self.eat(b'(')?;
                let a = self.element(l)?;
                self.eat(b'|')?;
                let b = self.element(r)?;
                self.eat(b')')?;
                Ok(Element::pair(a, b))
            }
            DomainExpr::Rat | DomainExpr::Eq => {
                let neg = self.try_eat(b'-');
                let num: BigInt = self
                    .digits()?
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                let den: BigInt = if self.try_eat(b'/') {
                    self.digits()?.parse().map_err(|_| self.err("bad integer"))?
                } else {
                    BigInt::from(1)
                };
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                let mut r = BigRational::new(num, den);
                if neg {
                    r = -r;
                }
                Ok(Element::Rat(r))
            }
        }
    }

    /// `x{<element>}` with an optional `^nat`.
    fn factor(&mut self, d: &DomainExpr) -> Result<(Element, u64)> {
        self.eat_keyword("x")?;
        self.eat(b'{')?;
        let e = self.element(d)?;
        self.eat(b'}')?;
        let deg = if self.try_eat(b'^') { self.nat_u64()? } else { 1 };
        if deg == 0 {
            return Err(self.err("zero exponent is not allowed"));
        }
        Ok((e, deg))
    }

    fn monomial(&mut self, d: &DomainExpr) -> Result<Monomial> {
        self.skip_ws();
        if self.peek() == Some(b'1') {
            self.bump();
            return Ok(Monomial::unit());
        }
        let mut degrees = vec![self.factor(d)?];
        while self.try_eat(b'*') {
            degrees.push(self.factor(d)?);
        }
        Ok(Monomial::from_degrees(degrees))
    }

    fn coeff(&mut self, field: &Field, neg: bool) -> Result<FieldElem> {
        let num = self.digits()?;
        let den = if self.try_eat(b'/') { Some(self.digits()?) } else { None };
        field
            .from_decimal(neg, &num, den.as_deref())
            .map_err(|e| self.err(e.to_string()))
    }

    /// One signed term: either `coeff ('*' factor)*` or `factor ('*' factor)*`.
    fn poly_term(&mut self, d: &DomainExpr, field: &Field, neg: bool) -> Result<Polynomial> {
        self.skip_ws();
        let mut factors = vec![];
        let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let c = self.coeff(field, neg)?;
            while self.try_eat(b'*') {
                factors.push(self.factor(d)?);
            }
            c
        } else {
            factors.push(self.factor(d)?);
            while self.try_eat(b'*') {
                factors.push(self.factor(d)?);
            }
            if neg {
                field.one().neg()
            } else {
                field.one()
            }
        };
        Ok(Polynomial::term(Monomial::from_degrees(factors), coeff))
    }

    fn polynomial(&mut self, d: &DomainExpr, field: &Field) -> Result<Polynomial> {
        let neg = self.try_eat(b'-');
        let mut acc = self.poly_term(d, field, neg)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.poly_term(d, field, false)?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.poly_term(d, field, true)?;
                    acc = acc.add(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn element_set(&mut self, d: &DomainExpr) -> Result<BTreeSet<Element>> {
        self.eat(b'{')?;
        let mut out = BTreeSet::new();
        self.skip_ws();
        if self.peek() == Some(b'}') {
            self.bump();
            return Ok(out);
        }
        loop {
            out.insert(self.element(d)?);
            if self.try_eat(b',') {
                continue;
            }
            self.eat(b'}')?;
            return Ok(out);
        }
    }

    fn local_embedding(&mut self, d: &DomainExpr) -> Result<LocalEmbedding> {
        self.eat(b'{')?;
        let mut pairs = vec![];
        self.skip_ws();
        if self.peek() == Some(b'}') {
            self.bump();
            return LocalEmbedding::from_pairs(pairs);
        }
        loop {
            let from = self.element(d)?;
            self.eat(b'-')?;
            self.eat(b'>')?;
            let to = self.element(d)?;
            pairs.push((from, to));
            if self.try_eat(b',') {
                continue;
            }
            self.eat(b'}')?;
            let line = self.line;
            let col = self.col;
            return LocalEmbedding::from_pairs(pairs).map_err(|e| Error::Parse {
                line,
                col,
                msg: e.to_string(),
            });
        }
    }

    fn tuple(&mut self, d: &DomainExpr, len: usize) -> Result<Vec<Element>> {
        self.eat(b'(')?;
        let mut out = vec![self.element(d)?];
        while self.try_eat(b',') {
            out.push(self.element(d)?);
        }
        self.eat(b')')?;
        if out.len() != len {
            return Err(self.err(format!("tuple has {} entries, expected {len}", out.len())));
        }
        Ok(out)
    }

    /// `coeff '*' u[(t,...)] | u[(t,...)]`, summed with '+'/'-'; `0` is the
    /// zero vector.
    fn vector(&mut self, d: &DomainExpr, field: &Field, dim: usize) -> Result<VecSum> {
        self.skip_ws();
        let mut sum = VecSum::zero();
        if self.peek() == Some(b'0') {
            // peek ahead: a lone zero
            let save = (self.pos, self.line, self.col);
            self.bump();
            self.skip_ws();
            if matches!(self.peek(), None | Some(b'\n') | Some(b'#')) {
                return Ok(sum);
            }
            (self.pos, self.line, self.col) = save;
        }
        let mut neg = self.try_eat(b'-');
        loop {
            self.skip_ws();
            let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let c = self.coeff(field, neg)?;
                self.eat(b'*')?;
                c
            } else if neg {
                field.one().neg()
            } else {
                field.one()
            };
            self.eat_keyword("u")?;
            self.eat(b'[')?;
            let t = self.tuple(d, dim)?;
            self.eat(b']')?;
            sum.add_term(t, coeff);
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    neg = false;
                }
                Some(b'-') => {
                    self.bump();
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(sum)
    }
}

pub fn parse_domain(src: &str) -> Result<DomainExpr> {
    let mut c = Cursor::new(src);
    let d = c.domain()?;
    c.end()?;
    Ok(d)
}

pub fn parse_element(d: &DomainExpr, src: &str) -> Result<Element> {
    let mut c = Cursor::new(src);
    let e = c.element(d)?;
    c.end()?;
    Ok(e)
}

pub fn parse_polynomial(d: &DomainExpr, field: &Field, src: &str) -> Result<Polynomial> {
    let mut c = Cursor::new(src);
    let p = c.polynomial(d, field)?;
    c.end()?;
    Ok(p)
}

pub fn parse_monomial(d: &DomainExpr, src: &str) -> Result<Monomial> {
    let mut c = Cursor::new(src);
    let m = c.monomial(d)?;
    c.end()?;
    Ok(m)
}

pub fn parse_element_set(d: &DomainExpr, src: &str) -> Result<BTreeSet<Element>> {
    let mut c = Cursor::new(src);
    let s = c.element_set(d)?;
    c.end()?;
    Ok(s)
}

pub fn parse_local_embedding(d: &DomainExpr, src: &str) -> Result<LocalEmbedding> {
    let mut c = Cursor::new(src);
    let m = c.local_embedding(d)?;
    c.end()?;
    Ok(m)
}

pub fn parse_target_vector(
    d: &DomainExpr,
    field: &Field,
    dim: usize,
    src: &str,
) -> Result<VecSum> {
    let mut c = Cursor::new(src);
    let v = c.vector(d, field, dim)?;
    c.end()?;
    Ok(v)
}

/// Splits file content into (line number, keyword, rest, column of rest),
/// skipping blank lines and `#` comments.
fn keyword_lines(src: &str) -> Vec<(usize, &str, &str, usize)> {
    let mut out = vec![];
    for (i, line) in src.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match trimmed.split_once(char::is_whitespace) {
            Some((kw, rest)) => {
                let rest = rest.trim();
                // byte offset of `rest` inside the original line
                let col = rest.as_ptr() as usize - line.as_ptr() as usize + 1;
                out.push((i + 1, kw, rest, col));
            }
            None => out.push((i + 1, trimmed, "", line.len() + 1)),
        }
    }
    out
}

/// Re-anchors a sub-expression parse error at its position in the file.
fn positioned<T>(line: usize, col_off: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line: _, col, msg } => Error::Parse { line, col: col + col_off - 1, msg },
        other => Error::Parse { line, col: col_off, msg: other.to_string() },
    })
}

/// Ideal file: a `domain` line followed by `gen <polynomial>` lines.
pub fn parse_ideal(src: &str, field: &Field) -> Result<Basis> {
    let mut domain: Option<DomainExpr> = None;
    let mut gens = vec![];
    for (line, kw, rest, col) in keyword_lines(src) {
        match kw {
            "domain" => {
                if domain.is_some() {
                    return Err(Error::Parse { line, col: 1, msg: "duplicate domain line".into() });
                }
                domain = Some(positioned(line, col, parse_domain(rest))?);
            }
            "gen" => {
                let d = domain.as_ref().ok_or_else(|| Error::Parse {
                    line,
                    col: 1,
                    msg: "gen before domain line".into(),
                })?;
                gens.push(positioned(line, col, parse_polynomial(d, field, rest))?);
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    msg: format!("unknown keyword '{other}' in ideal file"),
                })
            }
        }
    }
    let domain =
        domain.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing domain line".into() })?;
    Basis::new(domain, *field, gens)
}

/// Petri net file: `domain`, `places`, and `rule <m> -> <m>` lines.
pub fn parse_petri(src: &str) -> Result<PetriNet> {
    let mut data_domain: Option<DomainExpr> = None;
    let mut places: Option<u64> = None;
    let mut rules = vec![];
    for (line, kw, rest, col) in keyword_lines(src) {
        match kw {
            "domain" => data_domain = Some(positioned(line, col, parse_domain(rest))?),
            "places" => {
                let mut c = Cursor::new(rest);
                let d = positioned(line, col, c.nat_u64().and_then(|d| c.end().map(|_| d)))?;
                if d == 0 {
                    return Err(Error::Parse { line, col: 1, msg: "places must be >= 1".into() });
                }
                places = Some(d);
            }
            "rule" => {
                let (dd, pl) = match (&data_domain, places) {
                    (Some(dd), Some(pl)) => (dd.clone(), pl),
                    _ => {
                        return Err(Error::Parse {
                            line,
                            col: 1,
                            msg: "rule before domain/places lines".into(),
                        })
                    }
                };
                let full = DomainExpr::lex(dd, DomainExpr::Fin(pl));
                let mut c = Cursor::new(rest);
                let lhs = positioned(line, col, c.monomial(&full))?;
                positioned(line, col, c.eat(b'-').and_then(|_| c.eat(b'>')))?;
                let rhs =
                    positioned(line, col, c.monomial(&full).and_then(|m| c.end().map(|_| m)))?;
                rules.push((lhs, rhs));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    msg: format!("unknown keyword '{other}' in net file"),
                })
            }
        }
    }
    let data_domain = data_domain
        .ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing domain line".into() })?;
    let places = places
        .ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing places line".into() })?;
    PetriNet::new(data_domain, places, rules)
}

/// Family file: `dim`, `arity`, `domain`, and `row (i,...) = <vector>` lines.
pub fn parse_family(src: &str, field: &Field) -> Result<VectorFamily> {
    let mut dim: Option<u64> = None;
    let mut arity: Option<u64> = None;
    let mut domain: Option<DomainExpr> = None;
    let mut entries = vec![];
    for (line, kw, rest, col) in keyword_lines(src) {
        match kw {
            "dim" => {
                let mut c = Cursor::new(rest);
                dim = Some(positioned(line, col, c.nat_u64().and_then(|d| c.end().map(|_| d)))?);
            }
            "arity" => {
                let mut c = Cursor::new(rest);
                arity = Some(positioned(line, col, c.nat_u64().and_then(|d| c.end().map(|_| d)))?);
            }
            "domain" => domain = Some(positioned(line, col, parse_domain(rest))?),
            "row" => {
                let (d, dm, ar) = match (&domain, dim, arity) {
                    (Some(d), Some(dm), Some(ar)) => (d.clone(), dm, ar),
                    _ => {
                        return Err(Error::Parse {
                            line,
                            col: 1,
                            msg: "row before dim/arity/domain lines".into(),
                        })
                    }
                };
                let mut c = Cursor::new(rest);
                let index = positioned(line, col, c.tuple(&d, ar as usize))?;
                positioned(line, col, c.eat(b'='))?;
                let vector = positioned(
                    line,
                    col,
                    c.vector(&d, field, dm as usize).and_then(|v| c.end().map(|_| v)),
                )?;
                entries.push((index, vector));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    msg: format!("unknown keyword '{other}' in family file"),
                })
            }
        }
    }
    let dim = dim.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing dim line".into() })?;
    let arity =
        arity.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing arity line".into() })?;
    let domain = domain
        .ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing domain line".into() })?;
    VectorFamily::new(domain, dim as usize, arity as usize, *field, entries)
}
