use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{Monomial, Poly};
use super::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { pos, msg: msg.into() }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = s[start..i].parse().expect("digits");
                out.push((start, Tok::Int(v)));
            }
            b'x' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(start, "expected variable index after 'x'"));
                }
                let idx: usize = s[ds..i]
                    .parse()
                    .map_err(|_| err(ds, "variable index too large"))?;
                out.push((start, Tok::Var(idx)));
            }
            _ => return Err(err(i, format!("unexpected character {:?}", s[i..].chars().next().unwrap()))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn varpow(&mut self, exps: &mut [u32]) -> Result<(), ParseError> {
        let pos = self.pos();
        let idx = match self.peek() {
            Some(Tok::Var(i)) => *i,
            _ => return Err(err(pos, "expected variable")),
        };
        if idx == 0 || idx > self.nvars {
            return Err(err(pos, format!("variable x{idx} out of range 1..={}", self.nvars)));
        }
        self.at += 1;
        let mut e = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let p = self.pos();
            match self.peek() {
                Some(Tok::Int(v)) if !v.is_zero() => {
                    e = u32::try_from(v.clone()).map_err(|_| err(p, "exponent too large"))?;
                    self.at += 1;
                }
                _ => return Err(err(p, "expected positive exponent")),
            }
        }
        exps[idx - 1] += e;
        Ok(())
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let mut exps = vec![0u32; self.nvars];
        let mut coeff = Rational::one();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                let mut d = BigInt::one();
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    let p = self.pos();
                    match self.peek() {
                        Some(Tok::Int(v)) if !v.is_zero() => {
                            d = v.clone();
                            self.at += 1;
                        }
                        _ => return Err(err(p, "expected positive denominator")),
                    }
                }
                coeff = Rational::new(n, d);
            }
            Some(Tok::Var(_)) => self.varpow(&mut exps)?,
            _ => return Err(err(self.pos(), "expected coefficient or variable")),
        }
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            self.varpow(&mut exps)?;
        }
        Ok((Monomial::new(exps), coeff))
    }
}

pub(crate) fn parse_poly(s: &str, nvars: usize) -> Result<Poly, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut p = Parser { toks: &toks, at: 0, end: s.len(), nvars };
    let mut out = Poly::zero(nvars);
    let mut negative = false;
    match p.peek() {
        Some(Tok::Minus) => {
            negative = true;
            p.at += 1;
        }
        Some(Tok::Plus) => p.at += 1,
        _ => {}
    }
    loop {
        let (m, c) = p.term()?;
        out.add_term(m, if negative { -c } else { c });
        match p.peek() {
            None => break,
            Some(Tok::Plus) => negative = false,
            Some(Tok::Minus) => negative = true,
            Some(_) => return Err(err(p.pos(), "expected '+' or '-'")),
        }
        p.at += 1;
    }
    Ok(out)
}
