//! Recursive-descent parser for polynomial expressions with rational
//! coefficients.
//!
//! Grammar:
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor | implicit factor)*
//! factor := atom ('^' integer)?
//! atom   := number | symbol | '(' expr ')' | ('+'|'-') factor
//! ```
//! Division is only allowed by a nonzero constant.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{MPolyRing, QPoly, Rational, Rationals, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol '{name}' at position {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("division by a non-constant or zero expression at position {pos}")]
    BadDivision { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else if c == '−' {
            out.push((pos, Tok::Op('-')));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    ring: &'a MPolyRing<Rationals>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].1.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.factor()?;
                    let c = constant_value(&d).filter(|c| !c.is_zero());
                    match c {
                        Some(c) => acc = acc.scale(&c.recip()),
                        None => return Err(ParseError::BadDivision { pos }),
                    }
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Op('(') => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == &Tok::Op('^') {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Num(n) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                Tok::Op('-') => return Err(ParseError::NegativeExponent { pos }),
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected a nonnegative integer exponent".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(self.ring.constant(Rational::from_integer(n))),
            Tok::Ident(name) => match self.ring.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(self.ring.var(i)),
                None => Err(ParseError::UnknownSymbol { pos, name }),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                let pos = self.pos();
                match self.bump() {
                    Tok::Op(')') => Ok(e),
                    _ => Err(ParseError::Syntax { pos, msg: "expected ')'".into() }),
                }
            }
            Tok::Op('-') => Ok(self.ring.neg(&self.factor()?)),
            Tok::Op('+') => self.factor(),
            Tok::End => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
            Tok::Op(c) => Err(ParseError::Syntax { pos, msg: format!("unexpected '{c}'") }),
        }
    }
}

fn constant_value(p: &QPoly) -> Option<Rational> {
    match p.terms.len() {
        0 => Some(Rational::zero()),
        1 => {
            let (e, c) = p.terms.iter().next().unwrap();
            e.iter().all(|&k| k == 0).then(|| c.clone())
        }
        _ => None,
    }
}

/// Parses `text` into the fully expanded polynomial over `variables`.
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<QPoly, ParseError> {
    let ring = MPolyRing::new(Rationals, variables.to_vec());
    let mut p = Parser { toks: tokenize(text)?, i: 0, ring: &ring };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(ParseError::Syntax { pos: p.pos(), msg: "unexpected trailing input".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::var_names;

    fn xyz() -> Vec<String> {
        var_names(&["x", "y", "z"])
    }

    #[test]
    fn expands_products() {
        let p = parse_polynomial("x*y*(x+y)*(x-y)", &xyz()).unwrap();
        assert_eq!(p.to_string(), "x^3*y - x*y^3");
        let p = parse_polynomial("x*y*(x^2+y^2+z^2)", &xyz()).unwrap();
        assert_eq!(p.to_string(), "x^3*y + x*y^3 + x*y*z^2");
        assert_eq!(parse_polynomial("z^5", &xyz()).unwrap().terms.len(), 1);
    }

    #[test]
    fn rational_literals_and_implicit_product() {
        let p = parse_polynomial("3/4 x^2 - (x)(y)/2", &xyz()).unwrap();
        assert_eq!(p.to_string(), "3/4*x^2 - 1/2*x*y");
        assert_eq!(parse_polynomial("-x^2", &xyz()).unwrap().to_string(), "-x^2");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_polynomial("x + w", &xyz()),
            Err(ParseError::UnknownSymbol { pos: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial("x^-2", &xyz()),
            Err(ParseError::NegativeExponent { pos: 2 })
        ));
        assert!(matches!(parse_polynomial("x*(y", &xyz()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x/y", &xyz()), Err(ParseError::BadDivision { .. })));
        assert!(matches!(parse_polynomial("", &xyz()), Err(ParseError::Syntax { pos: 0, .. })));
    }
}
