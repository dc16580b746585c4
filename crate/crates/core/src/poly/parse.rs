//! Parser for the polynomial text grammar:
//!
//! ```text
//! poly     := ['-'] term (('+'|'-') term)*
//! term     := coeff ['*' monomial] | monomial
//! coeff    := int ['/' int]
//! monomial := factor ('*' factor)*
//! factor   := ('x'|'y') index ['^' int]
//! ```
//!
//! ASCII whitespace between tokens is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Exponent, Flavor, SparsePoly};
use crate::{Error, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// One-based column of the offending character.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// Attaches a line number.
    pub fn at_line(self, line: usize) -> Error {
        Error::Parse {
            line,
            column: self.column,
            message: self.message,
        }
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        e.at_line(1)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    flavor: Option<Flavor>,
    max_index: usize,
}

type Factors = Vec<(usize, u32)>;

impl Parser {
    fn new(src: &str, flavor: Option<Flavor>) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            flavor,
            max_index: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ParseError> {
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err(format!("{what} is too large"))
        })
    }

    fn coeff(&mut self) -> Result<Q, ParseError> {
        let num = self.int()?;
        if self.peek() == Some('/') {
            self.bump();
            let den_pos = self.pos;
            let den = self.int()?;
            if den.is_zero() {
                self.pos = den_pos;
                return self.err("division by zero");
            }
            return Ok(Q::new(num, den));
        }
        Ok(Q::from_integer(num))
    }

    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        let c = match self.peek() {
            Some(c @ ('x' | 'y')) => c,
            _ => return self.err("expected a variable 'x<i>' or 'y<i>'"),
        };
        let flavor = if c == 'x' { Flavor::Ring } else { Flavor::Dual };
        match self.flavor {
            Some(f) if f != flavor => {
                return self.err(format!(
                    "variable '{c}' does not match the {} polynomial being parsed",
                    if f == Flavor::Ring { "ring" } else { "dual" }
                ))
            }
            _ => self.flavor = Some(flavor),
        }
        self.bump();
        if !matches!(self.chars.get(self.pos), Some(d) if d.is_ascii_digit()) {
            return self.err("expected a variable index");
        }
        let index = self.small_int("variable index")? as usize;
        if index == 0 {
            self.pos -= 1;
            return self.err("variable indices start at 1");
        }
        self.max_index = self.max_index.max(index);
        let mut exp = 1;
        if self.peek() == Some('^') {
            self.bump();
            exp = self.small_int("exponent")?;
        }
        Ok((index, exp))
    }

    fn monomial(&mut self) -> Result<Factors, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some('*') {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn term(&mut self) -> Result<(Q, Factors), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() == Some('*') {
                    self.bump();
                    Ok((c, self.monomial()?))
                } else {
                    Ok((c, Vec::new()))
                }
            }
            Some('x' | 'y') => Ok((Q::from_integer(1.into()), self.monomial()?)),
            Some(_) => self.err("expected a term"),
            None => self.err("unexpected end of input"),
        }
    }

    fn poly(&mut self) -> Result<Vec<(Q, Factors)>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some('-') {
            self.bump();
            negative = true;
        }
        loop {
            let (c, f) = self.term()?;
            terms.push((if negative { -c } else { c }, f));
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                None => break,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.bump();
        }
        Ok(terms)
    }
}

/// Parses a polynomial.
///
/// The flavor is taken from the variable letters; `flavor` pins it (and is
/// required to type constants). The variable count is `nvars` when given,
/// otherwise the largest index that appears.
pub fn parse_poly(
    input: &str,
    flavor: Option<Flavor>,
    nvars: Option<usize>,
) -> Result<SparsePoly, ParseError> {
    let mut parser = Parser::new(input, flavor);
    let terms = parser.poly()?;
    let n = match nvars {
        Some(n) if parser.max_index > n => {
            return Err(ParseError {
                column: 1,
                message: format!(
                    "variable index {} exceeds the {n} available variables",
                    parser.max_index
                ),
            })
        }
        Some(n) => n,
        None => parser.max_index,
    };
    let flavor = parser.flavor.unwrap_or(Flavor::Ring);
    let mut poly = SparsePoly::zero(flavor, n);
    for (c, factors) in terms {
        let mut e = vec![0u32; n];
        for (i, k) in factors {
            e[i - 1] += k;
        }
        poly.add_term(Exponent::new(e), c);
    }
    Ok(poly)
}
