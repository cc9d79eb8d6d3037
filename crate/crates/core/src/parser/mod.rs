//! Text input and output: polynomial expressions and DDE description files.

mod dde;
mod expr;

pub use dde::{parse_dde, read_dde, DdeSpec};
pub use expr::{parse_expr, Expr};

use std::fmt;

use crate::{MonomialOrder, QPoly};

/// A diagnostic with a byte position (and line, for files; 0 otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn at(pos: usize, msg: String) -> Self {
        ParseError { line: 0, pos, msg }
    }

    pub(crate) fn general(msg: impl Into<String>) -> Self {
        ParseError {
            line: 0,
            pos: 0,
            msg: msg.into(),
        }
    }

    fn on_line(mut self, line: usize, offset: usize) -> Self {
        self.line = line;
        self.pos += offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}, column {}: {}", self.line, self.pos + 1, self.msg)
        } else {
            write!(f, "column {}: {}", self.pos + 1, self.msg)
        }
    }
}

impl std::error::Error for ParseError {}

/// Parse an expanded polynomial over the given variable names.
pub fn parse_poly(text: &str, universe: &[&str]) -> Result<QPoly, ParseError> {
    parse_expr(text)?.to_poly(universe)
}

/// Canonical text form: terms sorted descending under lex on the declared
/// variable order.
pub fn print_poly(p: &QPoly, names: &[&str]) -> String {
    p.to_string_with(names, &MonomialOrder::Lex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Monomial, Rational};
    use proptest::prelude::*;

    #[test]
    fn print_examples() {
        let names = ["x", "y"];
        assert_eq!(print_poly(&QPoly::zero(&(), 2), &names), "0");
        assert_eq!(print_poly(&parse_poly("1 + x", &names).unwrap(), &names), "x + 1");
        assert_eq!(
            print_poly(&parse_poly("-(x-y)^2/3", &names).unwrap(), &names),
            "-1/3*x^2 + 2/3*x*y - 1/3*y^2"
        );
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec((-50i64..50, 1i64..7, proptest::collection::vec(0u32..5, 3)), 0..7).prop_map(|ts| {
            QPoly::from_terms(
                &(),
                3,
                ts.into_iter()
                    .map(|(n, d, e)| (Monomial::from_exps(&e), Rational::new(n.into(), d.into())))
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn parse_print_round_trip(p in arb_poly()) {
            let names = ["x", "z0", "t"];
            let s = print_poly(&p, &names);
            prop_assert_eq!(parse_poly(&s, &names).unwrap(), p);
        }
    }
}
