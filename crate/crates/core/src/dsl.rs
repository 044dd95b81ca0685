//! A small text language for constant-coefficient forms.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor (['^'] factor)*
//! factor  := number | monomial | '(' expr ')' | '-' factor
//! number  := digit+ ['/' digit+]
//! monomial:= 'e' digit+
//! ```
//!
//! Each digit of a monomial is one index in `1..=n`; `e136 = e^1∧e^3∧e^6`.
//! Juxtaposition and `^` both mean wedge. All terms of a sum must share a
//! grade. The printer emits canonical order (grade, then lexicographic on
//! sorted indices) with unit coefficients elided.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::blade::Blade;
use crate::form::{flat, sharp, wedge, KForm};
use crate::scalar::Rational;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("repeated index {0} in monomial")]
    RepeatedIndex(usize),
    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0}")]
    Dimension(usize),
}

/// A parse failure at byte offset `pos` of the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at byte {pos}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, kind: ParseErrorKind) -> ParseResult<T> {
        Err(ParseError { kind, pos })
    }

    fn syntax<T>(&self, pos: usize, msg: &str) -> ParseResult<T> {
        self.err(pos, ParseErrorKind::Syntax(msg.to_string()))
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

    fn expr(&mut self) -> ParseResult<KForm<Rational>> {
        let mut acc: Option<KForm<Rational>> = None;
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let start = {
                self.skip_ws();
                self.pos
            };
            let t = self.term()?;
            let t = if negate { -t } else { t };
            acc = Some(match acc {
                None => t,
                Some(a) => self.add(a, t, start)?,
            });
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc.expect("at least one term"))
    }

    fn add(&self, a: KForm<Rational>, b: KForm<Rational>, pos: usize) -> ParseResult<KForm<Rational>> {
        let zero_scalar = |f: &KForm<Rational>| f.grade() == 0 && f.is_zero();
        if a.grade() == b.grade() {
            Ok(&a + &b)
        } else if zero_scalar(&a) {
            Ok(b)
        } else if zero_scalar(&b) {
            Ok(a)
        } else {
            self.err(pos, ParseErrorKind::GradeMismatch { expected: a.grade(), found: b.grade() })
        }
    }

    fn starts_factor(c: u8) -> bool {
        c.is_ascii_digit() || c == b'e' || c == b'('
    }

    fn term(&mut self) -> ParseResult<KForm<Rational>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'^') => {
                    self.pos += 1;
                }
                Some(c) if Self::starts_factor(c) => {}
                _ => break,
            }
            let f = self.factor()?;
            acc = wedge(&acc, &f).expect("same dimension");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> ParseResult<KForm<Rational>> {
        let start = match self.peek() {
            None => return self.syntax(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        match self.src[start] {
            b'-' => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.syntax(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            b'e' => self.monomial(),
            c if c.is_ascii_digit() => self.number(),
            _ => self.syntax(start, "expected a number, monomial or '('"),
        }
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> ParseResult<KForm<Rational>> {
        let int = |d: &[u8]| BigInt::parse_bytes(d, 10).expect("ascii digits");
        let num = int(self.digits());
        let mut value = Rational::from_integer(num);
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.digits();
            if d.is_empty() {
                return self.syntax(at, "expected a denominator");
            }
            let den = int(d);
            if den.is_zero() {
                return self.syntax(at, "zero denominator");
            }
            value /= Rational::from_integer(den);
        }
        Ok(KForm::scalar(self.n, value))
    }

    fn monomial(&mut self) -> ParseResult<KForm<Rational>> {
        let start = self.pos;
        self.pos += 1;
        let d = self.digits();
        if d.is_empty() {
            return self.syntax(start, "expected indices after 'e'");
        }
        let mut idx = Vec::with_capacity(d.len());
        for (off, c) in d.iter().enumerate() {
            let i = (c - b'0') as usize;
            let at = start + 1 + off;
            if i == 0 || i > self.n {
                return self.err(at, ParseErrorKind::IndexOutOfRange { index: i, n: self.n });
            }
            if idx.contains(&i) {
                return self.err(at, ParseErrorKind::RepeatedIndex(i));
            }
            idx.push(i);
        }
        Ok(KForm::basis(self.n, &idx))
    }
}

/// Parses `text` as a form on ℝⁿ, `1 ≤ n ≤ 9`.
pub fn parse_form(text: &str, n: usize) -> ParseResult<KForm<Rational>> {
    if n == 0 || n > 9 {
        return Err(ParseError { kind: ParseErrorKind::Dimension(n), pos: 0 });
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.syntax(p.pos, "unexpected trailing input");
    }
    Ok(f)
}

/// Like [`parse_form`], but requires grade `k`; a bare `0` is the zero `k`-form.
pub fn parse_form_graded(text: &str, n: usize, k: usize) -> ParseResult<KForm<Rational>> {
    let f = parse_form(text, n)?;
    if f.grade() == k {
        Ok(f)
    } else if f.grade() == 0 && f.is_zero() {
        Ok(KForm::zero(n, k))
    } else {
        Err(ParseError { kind: ParseErrorKind::GradeMismatch { expected: k, found: f.grade() }, pos: 0 })
    }
}

/// A vector written as a 1-form, e.g. `3/5 e1 + 4/5 e2`.
pub fn parse_vector(text: &str, n: usize) -> ParseResult<Vector<Rational>> {
    let f = parse_form_graded(text, n, 1)?;
    Ok(sharp(&f).expect("grade 1"))
}

fn write_coeff(out: &mut String, c: &Rational, b: Blade) {
    let a = c.abs();
    if b == Blade::SCALAR {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(&b.to_string());
    } else {
        out.push_str(&format!("{a} {b}"));
    }
}

/// Canonical text of a form; `0` for the zero form.
pub fn print_form(f: &KForm<Rational>) -> String {
    let mut out = String::new();
    for (b, c) in f.terms() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        write_coeff(&mut out, c, b);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn print_vector(v: &Vector<Rational>) -> String {
    print_form(&flat(v))
}

/// Canonical form through a round trip; useful for comparing hand-written text.
pub fn canonicalize(text: &str, n: usize) -> ParseResult<String> {
    parse_form(text, n).map(|f| print_form(&f))
}

/// One `key = form` line of a golden file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub key: String,
    pub text: String,
    pub dim: usize,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct GoldenError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for GoldenEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.key, self.text)
    }
}

/// Reads `key = form` lines. `#` starts a comment; `dim = n` sets the ambient
/// dimension for the lines that follow. Form text is kept verbatim.
pub fn parse_golden(src: &str) -> std::result::Result<Vec<GoldenEntry>, GoldenError> {
    let mut dim = None;
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| GoldenError { line, msg: "expected `key = value`".into() })?;
        if key.is_empty() || value.is_empty() {
            return Err(GoldenError { line, msg: "empty key or value".into() });
        }
        if key == "dim" {
            dim = Some(value.parse::<usize>().map_err(|_| GoldenError { line, msg: "bad dimension".into() })?);
            continue;
        }
        let dim = dim.ok_or_else(|| GoldenError { line, msg: "missing `dim` before first entry".into() })?;
        out.push(GoldenEntry { key: key.to_string(), text: value.to_string(), dim, line });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::phi0_form;
    use crate::scalar::ratio;

    #[test]
    fn phi0_literal() {
        let f = parse_form("e123 + e145 + e167 + e246 - e257 - e347 - e356", 7).unwrap();
        assert_eq!(f, phi0_form());
        assert_eq!(print_form(&f), "e123 + e145 + e167 + e246 - e257 - e347 - e356");
    }

    #[test]
    fn rational_coefficients() {
        let f = parse_form("3/2 e16 - e25", 7).unwrap();
        assert_eq!(f.coeff_of(&[1, 6]), ratio(3, 2));
        assert_eq!(f.coeff_of(&[2, 5]), ratio(-1, 1));
        assert_eq!(print_form(&f), "3/2 e16 - e25");
    }

    #[test]
    fn grade_mismatch_position() {
        let e = parse_form("e12 + e345", 7).unwrap_err();
        assert_eq!(e.pos, 6);
        assert!(matches!(e.kind, ParseErrorKind::GradeMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn index_errors() {
        let e = parse_form("e128", 7).unwrap_err();
        assert_eq!(e, ParseError { kind: ParseErrorKind::IndexOutOfRange { index: 8, n: 7 }, pos: 3 });
        let e = parse_form("e1 + e323", 7).unwrap_err();
        assert_eq!(e, ParseError { kind: ParseErrorKind::RepeatedIndex(3), pos: 8 });
        let e = parse_form("e0", 7).unwrap_err();
        assert_eq!(e.pos, 1);
    }

    #[test]
    fn syntax_errors() {
        for (src, pos) in [("", 0), ("e12 +", 5), ("(e1 + e2", 8), ("e", 0), ("1/0 e1", 2), ("e1 * e2", 3), ("x", 0)] {
            let e = parse_form(src, 7).unwrap_err();
            assert!(matches!(e.kind, ParseErrorKind::Syntax(_)), "{src}");
            assert_eq!(e.pos, pos, "{src}");
        }
    }

    #[test]
    fn wedge_and_parentheses() {
        let a = parse_form("(e1 - e2)^(e3 + e4)", 7).unwrap();
        let b = parse_form("e13 + e14 - e23 - e24", 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_form("e2 e1", 7).unwrap(), parse_form("-e12", 7).unwrap());
        assert_eq!(parse_form("2 (3/4) e1", 7).unwrap(), parse_form("3/2 e1", 7).unwrap());
        assert_eq!(parse_form("-(-e1)", 7).unwrap(), parse_form("e1", 7).unwrap());
    }

    #[test]
    fn zero_and_scalars() {
        assert_eq!(print_form(&KForm::<Rational>::zero(7, 3)), "0");
        assert_eq!(parse_form_graded("0", 7, 3).unwrap(), KForm::zero(7, 3));
        assert_eq!(print_form(&parse_form("-5/3", 7).unwrap()), "-5/3");
        assert_eq!(print_form(&parse_form("e1 - e1", 7).unwrap()), "0");
    }

    #[test]
    fn vectors() {
        let v = parse_vector("3/5 e1 + 4/5 e2", 7).unwrap();
        assert_eq!(v.get(1), &ratio(3, 5));
        assert_eq!(print_vector(&v), "3/5 e1 + 4/5 e2");
        assert!(parse_vector("e12", 7).is_err());
    }

    #[test]
    fn golden_lines() {
        let src = "# header\ndim = 7\nphi = e123 # trailing\n\ndim = 8\npsi = e1234\n";
        let g = parse_golden(src).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!((g[0].key.as_str(), g[0].text.as_str(), g[0].dim, g[0].line), ("phi", "e123", 7, 3));
        assert_eq!(g[1].dim, 8);
        assert_eq!(parse_golden("a = e1").unwrap_err().line, 1);
        assert_eq!(parse_golden("dim = 7\nnonsense").unwrap_err().line, 2);
    }
}
