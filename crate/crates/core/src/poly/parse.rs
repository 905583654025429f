//! Text form of polynomials.
//!
//! ```text
//! poly  := term (('+'|'-') term)*
//! term  := [coeff] [('*')? var ('^' uint)?]*
//! coeff := int | int '/' uint
//! ```
//!
//! A variable token is one letter followed by optional digits, so `x2y`
//! reads as `x2*y`. Whitespace is ignored.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Monomial, MonomialOrder, Rational, VarUniverse};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().unwrap();
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", c),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    universe: &'a Arc<VarUniverse>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected an unsigned integer"),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let n = self.universe.len();
        let mut coeff = Rational::one();
        let mut mono = Monomial::one(n);
        let mut seen_any = false;
        if let Some(Tok::Int(_)) = self.peek() {
            let num = self.uint()?;
            let mut c = Rational::from_integer(num);
            if let Some(Tok::Slash) = self.peek() {
                self.pos += 1;
                let den = self.uint()?;
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                c = Rational::new(c.numer().clone(), den);
            }
            coeff = c;
            seen_any = true;
        }
        loop {
            let save = self.pos;
            let mut starred = false;
            if let Some(Tok::Star) = self.peek() {
                if !seen_any {
                    return self.err("term cannot start with `*`");
                }
                self.pos += 1;
                starred = true;
            }
            match self.peek() {
                Some(Tok::Ident(name)) => {
                    let name = name.clone();
                    let at = self.here();
                    self.pos += 1;
                    let v = self.universe.resolve(&name).ok_or(ParseError::UnknownVariable {
                        name: name.clone(),
                        pos: at,
                    })?;
                    let mut e: u16 = 1;
                    if let Some(Tok::Caret) = self.peek() {
                        self.pos += 1;
                        let k = self.uint()?;
                        e = u16::try_from(k).or_else(|_| self.err("exponent too large"))?;
                    }
                    mono.0[v] = mono.0[v]
                        .checked_add(e)
                        .ok_or_else(|| ParseError::Syntax {
                            pos: at,
                            msg: "exponent too large".into(),
                        })?;
                    seen_any = true;
                }
                _ => {
                    if starred {
                        return self.err("expected a variable after `*`");
                    }
                    self.pos = save;
                    break;
                }
            }
        }
        if !seen_any {
            return self.err("expected a term");
        }
        Ok((mono, coeff))
    }

    fn poly(&mut self) -> Result<MPoly, ParseError> {
        let mut terms = Vec::new();
        let mut sign_neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                sign_neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if sign_neg { -c } else { c }));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => sign_neg = false,
                Some(Tok::Minus) => sign_neg = true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(MPoly::from_terms(self.universe, terms))
    }
}

/// Parses a polynomial over `universe`.
pub fn parse_poly(text: &str, universe: &Arc<VarUniverse>) -> Result<MPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        universe,
    };
    if p.toks.is_empty() {
        return p.err("empty input");
    }
    p.poly()
}

fn write_term(
    out: &mut String,
    universe: &VarUniverse,
    m: &Monomial,
    c: &Rational,
    first: bool,
) {
    let neg = c.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    let mut parts: Vec<String> = Vec::new();
    if !a.is_one() || m.is_one() {
        parts.push(if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        });
    }
    for (v, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(universe.name(v).to_string()),
            _ => parts.push(format!("{}^{}", universe.name(v), e)),
        }
    }
    out.push_str(&parts.join("*"));
}

impl MPoly {
    /// Text form with terms in decreasing order under `ord`.
    pub fn to_string_by(&self, ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&(Monomial, Rational)> = self.terms().iter().collect();
        if !ord.is_natural() {
            terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        }
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            write_term(&mut out, self.universe(), m, c, i == 0);
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            write_term(&mut out, self.universe(), m, c, i == 0);
        }
        f.write_str(&out)
    }
}
