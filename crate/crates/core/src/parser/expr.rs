//! Infix polynomial expressions.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ParseError;
use crate::{Field, QPoly, Rational};

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var { name: String, pos: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a nonzero integer literal.
    DivInt(Box<Expr>, BigInt),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[s..i].parse().unwrap()), s));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[s..i].to_string()), s));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError::at(i, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt, ParseError> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(n),
            (_, p) => Err(ParseError::at(p, format!("expected a non-negative integer {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    let p = self.pos();
                    let d = self.expect_int("denominator")?;
                    if d.is_zero() {
                        return Err(ParseError::at(p, "division by zero".into()));
                    }
                    lhs = Expr::DivInt(Box::new(lhs), d);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let p = self.pos();
            let e = self.expect_int("exponent")?;
            let e = u32::try_from(e).map_err(|_| ParseError::at(p, "exponent too large".into()))?;
            if *self.peek() == Tok::Op('^') {
                return Err(ParseError::at(self.pos(), "ambiguous chained exponent".into()));
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(Expr::Int(n)),
            (Tok::Ident(name), pos) => Ok(Expr::Var { name, pos }),
            (Tok::Op('('), _) => {
                let e = self.expr()?;
                match self.bump() {
                    (Tok::Op(')'), _) => Ok(e),
                    (_, p) => Err(ParseError::at(p, "expected ')'".into())),
                }
            }
            (Tok::End, p) => Err(ParseError::at(p, "unexpected end of input".into())),
            (t, p) => Err(ParseError::at(p, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse an expression without interpreting identifiers.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut lx = Lexer { toks: lex(text)?, i: 0 };
    let e = lx.expr()?;
    if *lx.peek() != Tok::End {
        return Err(ParseError::at(lx.pos(), "trailing input".into()));
    }
    Ok(e)
}

impl Expr {
    /// Expand into a polynomial over the given variable list.
    pub fn to_poly(&self, universe: &[&str]) -> Result<QPoly, ParseError> {
        let n = universe.len();
        Ok(match self {
            Expr::Int(v) => QPoly::constant(Rational::from_integer(v.clone()), n),
            Expr::Var { name, pos } => match universe.iter().position(|u| u == name) {
                Some(i) => QPoly::var(&(), n, i),
                None => return Err(ParseError::at(*pos, format!("unknown identifier '{name}'"))),
            },
            Expr::Add(a, b) => &a.to_poly(universe)? + &b.to_poly(universe)?,
            Expr::Sub(a, b) => &a.to_poly(universe)? - &b.to_poly(universe)?,
            Expr::Mul(a, b) => &a.to_poly(universe)? * &b.to_poly(universe)?,
            Expr::DivInt(a, d) => a
                .to_poly(universe)?
                .scale(&Rational::from_integer(d.clone()).inv().expect("nonzero")),
            Expr::Neg(a) => a.to_poly(universe)?.neg(),
            Expr::Pow(a, e) => a.to_poly(universe)?.pow(*e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let u = ["x", "y"];
        let a = parse_expr("-x^2+3*x*y - 1/2").unwrap().to_poly(&u).unwrap();
        let x = QPoly::var(&(), 2, 0);
        let y = QPoly::var(&(), 2, 1);
        let half = QPoly::constant(Rational::new(1.into(), 2.into()), 2);
        let three = QPoly::from_i64(&(), 2, 3);
        assert_eq!(a, &(&x.pow(2).neg() + &(&three * &(&x * &y))) - &half);
        assert_eq!(parse_expr("x*y/2").unwrap().to_poly(&u).unwrap(), (&x * &y).scale(&Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn errors_carry_positions() {
        let u = ["x"];
        assert_eq!(parse_expr("x + y").unwrap().to_poly(&u).unwrap_err().pos, 4);
        assert_eq!(parse_expr("x^-1").unwrap_err().pos, 2);
        assert_eq!(parse_expr("x^y").unwrap_err().pos, 2);
        assert_eq!(parse_expr("(x+1").unwrap_err().pos, 4);
        assert_eq!(parse_expr("x $ 1").unwrap_err().pos, 2);
        assert!(parse_expr("x/0").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("x y").is_err());
    }
}
