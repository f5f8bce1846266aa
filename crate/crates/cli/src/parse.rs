//! Parser for polynomial expressions such as `x1^2*x2^5 + x1^3*x3`.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'x' INDEX ('^' EXP)?
//! ```
//!
//! Whitespace is ignored. Indices run from 1 to the declared variable count,
//! exponents are at least 1, and repeated monomials cancel in pairs.
//! Coefficients are not accepted.

use std::fmt;

use f2hit::{Monomial, PolyF2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based character offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn at(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    /// The input with a caret under the offending position.
    pub fn annotate(&self, input: &str) -> String {
        format!("{self}\n  {input}\n  {}^", " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    input: &'a str,
    k: usize,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map(|&(i, _)| self.input[..i].chars().count())
            .unwrap_or_else(|| self.input.chars().count())
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.at), Some((_, c)) if c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn number(&mut self, what: &str) -> Result<(usize, u64), ParseError> {
        self.skip_ws();
        let start = self.pos();
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(&(_, c)) = self.chars.get(self.at) {
            let Some(dig) = c.to_digit(10) else { break };
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(dig)))
                .ok_or_else(|| ParseError::at(start, format!("{what} is too large")))?;
            digits += 1;
            self.at += 1;
        }
        if digits == 0 {
            return Err(ParseError::at(start, format!("expected {what}")));
        }
        Ok((start, value))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos();
        match self.peek() {
            Some('x') => self.at += 1,
            Some(c) if c.is_ascii_digit() => {
                return Err(ParseError::at(
                    start,
                    "coefficients are not allowed (everything is mod 2)",
                ))
            }
            Some(c) => {
                return Err(ParseError::at(
                    start,
                    format!("expected variable, found {c:?}"),
                ))
            }
            None => {
                return Err(ParseError::at(
                    start,
                    "expected variable, found end of input",
                ))
            }
        }
        let (ipos, index) = self.number("variable index")?;
        if index == 0 || index as usize > self.k {
            return Err(ParseError::at(
                ipos,
                format!("variable x{index} is outside x1..x{}", self.k),
            ));
        }
        let mut exp = 1u64;
        if self.peek() == Some('^') {
            self.at += 1;
            let (epos, e) = self.number("exponent")?;
            if e == 0 {
                return Err(ParseError::at(epos, "exponent must be at least 1"));
            }
            exp = e;
        }
        let slot = &mut exps[index as usize - 1];
        let total = u64::from(*slot) + exp;
        if total > u64::from(f2hit::steenrod::MAX_EXPONENT) {
            return Err(ParseError::at(start, "exponent exceeds 2^31 - 1"));
        }
        *slot = total as u32;
        Ok(())
    }

    fn term(&mut self) -> Result<(usize, Monomial), ParseError> {
        self.skip_ws();
        let start = self.pos();
        let mut exps = vec![0u32; self.k];
        self.factor(&mut exps)?;
        while self.peek() == Some('*') {
            self.at += 1;
            self.factor(&mut exps)?;
        }
        let m = Monomial::new(exps).map_err(|e| ParseError::at(start, e.to_string()))?;
        Ok((start, m))
    }

    fn poly(&mut self) -> Result<PolyF2, ParseError> {
        if self.peek().is_none() {
            return Err(ParseError::at(0, "empty polynomial"));
        }
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                None => break,
                Some('+') => {
                    self.at += 1;
                    terms.push(self.term()?);
                }
                Some(c) => {
                    return Err(ParseError::at(
                        self.pos(),
                        format!("expected '+', '*' or end, found {c:?}"),
                    ))
                }
            }
        }
        let degree = terms[0].1.degree();
        if let Some((pos, m)) = terms.iter().find(|(_, m)| m.degree() != degree) {
            return Err(ParseError::at(
                *pos,
                format!(
                    "polynomial is not homogeneous: {m} has degree {}, the first term has degree {degree}",
                    m.degree()
                ),
            ));
        }
        Ok(PolyF2::from_monomials(terms.into_iter().map(|(_, m)| m)).expect("checked homogeneous"))
    }
}

/// Parses `input` as a polynomial in `k` variables.
pub fn parse_poly(input: &str, k: usize) -> Result<PolyF2, ParseError> {
    if k == 0 {
        return Err(ParseError::at(0, "the variable count must be at least 1"));
    }
    let mut p = Parser {
        chars: input.char_indices().collect(),
        at: 0,
        input,
        k,
    };
    p.poly()
}
