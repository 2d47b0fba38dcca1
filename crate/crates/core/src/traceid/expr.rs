//! Polynomial expressions over named invariants (trA^k, trF^k, detA, t) and a text parser.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{parse_rational, Rational, SparsePoly};

pub type AtomMono = BTreeMap<String, u32>;

/// Rational linear combination of monomials in named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expr {
    pub terms: BTreeMap<AtomMono, Rational>,
}

impl Expr {
    pub fn constant(c: Rational) -> Self {
        let mut e = Expr::default();
        e.add_term(AtomMono::new(), c);
        e
    }

    pub fn atom(name: &str) -> Self {
        let mut m = AtomMono::new();
        m.insert(name.to_string(), 1);
        let mut e = Expr::default();
        e.add_term(m, Rational::one());
        e
    }

    pub fn add_term(&mut self, m: AtomMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, k: &Rational) -> Expr {
        let mut r = Expr::default();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        let mut r = Expr::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut m = ma.clone();
                for (k, v) in mb {
                    *m.entry(k.clone()).or_insert(0) += v;
                }
                r.add_term(m, ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Expr {
        let mut r = Expr::constant(Rational::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Replaces every atom by a polynomial supplied by `lookup`.
    pub fn substitute<F>(&self, nvars: usize, mut lookup: F) -> Result<SparsePoly>
    where
        F: FnMut(&str) -> Result<SparsePoly>,
    {
        let mut cache: BTreeMap<String, SparsePoly> = BTreeMap::new();
        let mut acc = SparsePoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(nvars, c.clone());
            for (name, &e) in m {
                if !cache.contains_key(name) {
                    cache.insert(name.clone(), lookup(name)?);
                }
                let p = crate::ratpoly::poly_pow(&cache[name], e);
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Atom(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(cs[st..i].iter().collect()));
            }
            a if a.is_ascii_alphabetic() => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let mut name: String = cs[st..i].iter().collect();
                if name == "trA" || name == "trF" {
                    if i >= cs.len() || cs[i] != '^' {
                        return Err(Error::Parse(format!("{name} needs an exponent")));
                    }
                    i += 1;
                    let st = i;
                    while i < cs.len() && cs[i].is_ascii_digit() {
                        i += 1;
                    }
                    if st == i {
                        return Err(Error::Parse(format!("{name}^ needs digits")));
                    }
                    name.push('^');
                    name.extend(&cs[st..i]);
                }
                out.push(Tok::Atom(name));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.scale(&-Rational::one())
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.add(&self.term()?.scale(&-Rational::one()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Atom(_)) | Some(Tok::LParen) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            match self.next() {
                Some(Tok::Num(n)) => {
                    let k: u32 = n.parse().map_err(|_| Error::Parse(format!("bad exponent {n}")))?;
                    Ok(base.pow(k))
                }
                t => Err(Error::Parse(format!("expected exponent, found {t:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(p)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.next();
                    match self.next() {
                        Some(Tok::Num(q)) => Ok(Expr::constant(parse_rational(&format!("{p}/{q}"))?)),
                        t => Err(Error::Parse(format!("expected denominator, found {t:?}"))),
                    }
                } else {
                    Ok(Expr::constant(parse_rational(&p)?))
                }
            }
            Some(Tok::Atom(a)) => Ok(Expr::atom(&a)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    t => Err(Error::Parse(format!("expected ')', found {t:?}"))),
                }
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses text such as "-1/8*(trA^2)^3 + 3/4*(trA^2)*(trA^4)".
pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Splits "lhs = rhs" and parses both sides.
pub fn parse_equation(s: &str) -> Result<(Expr, Expr)> {
    let (l, r) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("missing '=' in {s:?}")))?;
    Ok((parse_expr(l)?, parse_expr(r)?))
}
