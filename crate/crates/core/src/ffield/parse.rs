//! Text format for polynomials: integer polynomials in `x` over prime
//! fields (`x^6+2*x^5+1`), with coefficients in `t` for extension fields
//! (`(t+1)*x^2+t`). Products and powers of parenthesised factors are allowed.

use super::field::FieldSpec;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    X,
    T,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                let n = text.parse().map_err(|_| Error::Parse(format!("number too large: {text}")))?;
                out.push(Tok::Num(n));
            }
            'x' | 'X' => out.push(Tok::X),
            't' => out.push(Tok::T),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a FieldSpec,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) if e <= 10_000 => Ok(base.pow(e as u32)),
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        let f = self.field;
        match self.next() {
            Some(Tok::Num(n)) => Ok(Poly::constant(f, f.from_int((n % f.p()) as i64))),
            Some(Tok::X) => Ok(Poly::x(f)),
            Some(Tok::T) => {
                if f.is_prime_field() {
                    Err(Error::Parse("`t` used over a prime field".into()))
                } else {
                    Ok(Poly::constant(f, f.generator_t()))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    other => Err(Error::Parse(format!("expected `)`, found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial over `field`.
pub fn parse_poly(field: &FieldSpec, s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, field };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out)
}

/// Splits a top-level product `a*(b)*(c)^2` into its listed factors
/// (powers expanded into repeats). A string without a top-level product
/// yields a single factor.
pub fn parse_factors(field: &FieldSpec, s: &str) -> Result<Vec<Poly>> {
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes: Vec<char> = s.chars().collect();
    let mut has_top_sum = false;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                pieces.push(bytes[start..i].iter().collect::<String>());
                start = i + 1;
            }
            '+' | '-' if depth == 0 => has_top_sum = true,
            _ => {}
        }
    }
    pieces.push(bytes[start..].iter().collect::<String>());
    if has_top_sum || pieces.len() == 1 {
        return Ok(vec![parse_poly(field, s)?]);
    }
    let mut out: Vec<Poly> = Vec::new();
    let mut scalar = Poly::one(field);
    for piece in pieces {
        let piece = piece.trim();
        let (body, exp) = match piece.rfind('^') {
            Some(i) if piece[..i].trim_end().ends_with(')') => {
                let e: u32 = piece[i + 1..].trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {piece:?}")))?;
                (&piece[..i], e)
            }
            _ => (piece, 1),
        };
        let poly = parse_poly(field, body)?;
        if poly.is_constant() {
            scalar = scalar.mul(&poly.pow(exp));
            continue;
        }
        for _ in 0..exp {
            out.push(poly.clone());
        }
    }
    // bare numbers are coefficients, folded into the first factor
    match out.first_mut() {
        Some(first) => *first = first.mul(&scalar),
        None => out.push(scalar),
    }
    Ok(out)
}
