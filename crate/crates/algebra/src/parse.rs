//! Text syntax for polynomials: `3/2*x0^2*x1 - x2^3`.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := integer ('/' integer)? | 'x' index ('^' integer)?
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::monomial::Monomial;
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: Vec<&'static str>, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            expected,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }
}

pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = Rational::one();
    match cur.peek() {
        Some(b'-') => {
            sign = -sign;
            cur.pos += 1;
        }
        Some(b'+') => cur.pos += 1,
        _ => {}
    }
    loop {
        let (m, c) = parse_term(&mut cur, nvars)?;
        terms.push((m, c * &sign));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = Rational::one();
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -Rational::one();
            }
            Some(_) => {
                return Err(cur.err(vec!["'+'", "'-'", "end of input"], "unexpected character"))
            }
        }
    }
    Ok(Polynomial::from_terms(nvars, terms))
}

fn parse_term(cur: &mut Cursor<'_>, nvars: usize) -> Result<(Monomial, Rational), ParseError> {
    let mut exps = vec![0u32; nvars];
    let mut coef = Rational::one();
    let mut seen = false;
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.digits().unwrap();
                let mut q = Rational::from_integer(num.parse::<BigInt>().unwrap());
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    let den = cur
                        .digits()
                        .ok_or_else(|| cur.err(vec!["denominator"], "missing denominator"))?;
                    let den = den.parse::<BigInt>().unwrap();
                    if den.is_zero() {
                        return Err(cur.err(vec!["nonzero denominator"], "zero denominator"));
                    }
                    q /= Rational::from_integer(den);
                }
                coef *= q;
            }
            Some(b'x') => {
                let at = cur.pos;
                cur.pos += 1;
                let idx = cur
                    .digits()
                    .ok_or_else(|| cur.err(vec!["variable index"], "missing variable index"))?;
                let idx: usize = idx.parse().unwrap_or(usize::MAX);
                if idx >= nvars {
                    return Err(ParseError {
                        offset: at,
                        expected: vec!["variable x0..x{n}"],
                        message: format!("variable index {} outside ring with {} variables", idx, nvars),
                    });
                }
                let mut e = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    let d = cur
                        .digits()
                        .ok_or_else(|| cur.err(vec!["exponent"], "missing exponent"))?;
                    e = d
                        .parse()
                        .map_err(|_| cur.err(vec!["exponent"], "exponent too large"))?;
                }
                exps[idx] += e;
            }
            _ => {
                if seen {
                    return Err(cur.err(vec!["coefficient", "variable"], "dangling '*'"));
                }
                return Err(cur.err(vec!["coefficient", "variable"], "expected a term"));
            }
        }
        seen = true;
        match cur.peek() {
            Some(b'*') => {
                cur.pos += 1;
                continue;
            }
            Some(c) if c == b'x' || c.is_ascii_digit() => continue,
            _ => break,
        }
    }
    Ok((Monomial::from_exponents(&exps), coef))
}
