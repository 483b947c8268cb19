//! Text grammar for difference polynomials:
//!
//! ```text
//! poly    := [sign] term (('+'|'-') term)*
//! term    := (coef ['*' factors]) | factors
//! factors := factor ('*' factor)*
//! factor  := 'y' INT ['^' INT]
//! coef    := INT ['/' INT]
//! ```
//!
//! Whitespace between tokens is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DiffPoly, Exponent, Term, VarIndex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("integer '{s}'"),
            Tok::Y => "'y'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
                continue;
            }
            b'y' => Tok::Y,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            _ => {
                let found = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: i,
                    expected: "a term, sign or operator".into(),
                    found: format!("character '{found}'"),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        Error::Syntax {
            offset: self.offset(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn int(&mut self, expected: &str) -> Result<(usize, String)> {
        match self.peek() {
            Tok::Int(_) => match self.bump() {
                (off, Tok::Int(s)) => Ok((off, s)),
                _ => unreachable!(),
            },
            _ => Err(self.error(expected)),
        }
    }

    fn poly(&mut self) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (t, c) = self.term()?;
            out.add_term(t, if negate { -c } else { c });
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                Tok::End => return Ok(out),
                _ => return Err(self.error("'+', '-' or end of input")),
            };
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Term, BigRational)> {
        match self.peek() {
            Tok::Int(_) => {
                let c = self.coef()?;
                if *self.peek() == Tok::Star {
                    self.bump();
                    Ok((self.factors()?, c))
                } else {
                    Ok((Term::one(), c))
                }
            }
            Tok::Y => Ok((self.factors()?, BigRational::one())),
            _ => Err(self.error("a coefficient or a factor 'y<k>'")),
        }
    }

    fn coef(&mut self) -> Result<BigRational> {
        let (_, num) = self.int("an integer coefficient")?;
        let num: BigInt = num.parse().expect("lexer yields digits only");
        if *self.peek() != Tok::Slash {
            return Ok(BigRational::from_integer(num));
        }
        self.bump();
        let (off, den) = self.int("a denominator")?;
        let den: BigInt = den.parse().expect("lexer yields digits only");
        if den.is_zero() {
            return Err(Error::ZeroDenominator { offset: off });
        }
        Ok(BigRational::new(num, den))
    }

    fn factors(&mut self) -> Result<Term> {
        let mut parts = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            parts.push(self.factor()?);
        }
        Ok(Term::from_factors(parts))
    }

    fn factor(&mut self) -> Result<(VarIndex, Exponent)> {
        if *self.peek() != Tok::Y {
            return Err(self.error("a factor 'y<k>'"));
        }
        self.bump();
        if *self.peek() == Tok::Minus {
            return Err(Error::NegativeIndex {
                offset: self.offset(),
            });
        }
        let (off, idx) = self.int("a variable index")?;
        let idx: VarIndex = idx.parse().map_err(|_| {
            Error::IndexOverflow(format!("variable index {idx} at byte {off} is too large"))
        })?;
        let mut exp: Exponent = 1;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (off, e) = self.int("an exponent")?;
            exp = e.parse().map_err(|_| {
                Error::IndexOverflow(format!("exponent {e} at byte {off} is too large"))
            })?;
        }
        Ok((idx, exp))
    }
}

/// Parses a polynomial in the text grammar.
pub fn parse(text: &str) -> Result<DiffPoly> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.poly()
}
