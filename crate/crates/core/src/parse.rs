//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' natural)?
//! base     := rational | variable | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Implicit multiplication is rejected, and `/` is only allowed between two
//! integer literals. A leading minus (at the start of an expression or
//! parenthesized group) is accepted so that printed polynomials re-parse.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Patch, Poly, Rational};

/// Parses `src` over the coordinates of `patch`.
pub fn parse_poly(src: &str, patch: &Patch) -> Result<Poly> {
    Parser::new(src, patch).parse()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    patch: &'a Patch,
}

impl<'a> Parser<'a> {
    fn new(src: &str, patch: &'a Patch) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            patch,
        }
    }

    fn nvars(&self) -> usize {
        self.patch.dim_m()
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(c: Option<char>) -> String {
        match c {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn parse(mut self) -> Result<Poly> {
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(c) if c.is_ascii_alphanumeric() || c == '(' => Err(self.error_at(
                self.pos,
                format!("unexpected '{c}': implicit multiplication is not allowed, use '*'"),
            )),
            c => Err(self.error_at(self.pos, format!("unexpected {}", Self::describe(c)))),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error_at(start, "expected a natural number exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error_at(start, format!("exponent {digits} is too large")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    let found = self.peek();
                    return Err(self.error_at(self.pos, format!("expected ')', found {}", Self::describe(found))));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.patch.var_index(&name) {
                    Some(i) => Ok(Poly::var(self.nvars(), i)),
                    None => Err(self.error_at(start, format!("unknown variable '{name}'"))),
                }
            }
            c => Err(self.error_at(self.pos, format!("expected a number, variable or '(', found {}", Self::describe(c)))),
        }
    }

    fn rational(&mut self) -> Result<Poly> {
        let num: BigInt = self.digits().parse().expect("nonempty digit string");
        let mut value = Rational::from_integer(num);
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let den = self.digits();
            if den.is_empty() {
                return Err(self.error_at(start, "division is only allowed between rational literals"));
            }
            let den: BigInt = den.parse().expect("nonempty digit string");
            if den.is_zero() {
                return Err(self.error_at(start, "division by zero"));
            }
            value /= Rational::from_integer(den);
            if self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '(') {
                return Err(self.error_at(self.pos, "division is only allowed between rational literals"));
            }
        }
        Ok(Poly::constant(self.nvars(), value))
    }
}
