//! The line-oriented DDE description format.
//!
//! ```text
//! # comment
//! k = 2
//! a = 1
//! vars = [x, z0, z1, t, u]
//! rhs = "1 + t*u*x^3 + t*u*(2*x + z0)*D1 + t*u*D2"
//! P = "..."
//! ```

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;

use super::{parse_expr, ParseError};
use crate::systems::clear_denominators;
use crate::{QPoly, Rational};

/// A discrete differential equation of order `k` at the point `a`.
///
/// `P` lives over `vars = [x, z0, .., z_{k-1}, t, u]`. The optional
/// right-hand side lives over [`DdeSpec::rhs_names`], i.e.
/// `[x, D1, .., Dk, z0, .., z_{k-1}, t, u]`, where `Dl` stands for the
/// `l`-th divided difference at `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct DdeSpec {
    pub k: usize,
    pub a: Rational,
    pub vars: Vec<String>,
    pub rhs: Option<QPoly>,
    pub p: QPoly,
}

impl DdeSpec {
    /// Build from a right-hand side; `P` is derived.
    pub fn from_rhs(k: usize, a: Rational, vars: Vec<String>, rhs: QPoly) -> Result<Self, ParseError> {
        let mut spec = DdeSpec {
            k,
            a,
            vars,
            p: QPoly::zero(&(), k + 3),
            rhs: Some(rhs),
        };
        check_shape(k, &spec.vars)?;
        spec.p = clear_denominators(&spec).map_err(|e| ParseError::general(e.to_string()))?;
        Ok(spec)
    }

    pub fn from_p(k: usize, a: Rational, vars: Vec<String>, p: QPoly) -> Result<Self, ParseError> {
        let spec = DdeSpec {
            k,
            a,
            vars,
            p,
            rhs: None,
        };
        check_shape(k, &spec.vars)?;
        if spec.p.nvars() != k + 3 {
            return Err(ParseError::general("P has the wrong number of variables"));
        }
        Ok(spec)
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// Names of the right-hand-side universe.
    pub fn rhs_names(&self) -> Vec<String> {
        let mut n = vec![self.vars[0].clone()];
        n.extend((1..=self.k).map(|l| format!("D{l}")));
        n.extend(self.vars[1..].iter().cloned());
        n
    }

    pub fn x(&self) -> usize {
        0
    }

    pub fn z(&self, i: usize) -> usize {
        1 + i
    }

    pub fn t(&self) -> usize {
        self.k + 1
    }

    pub fn u(&self) -> usize {
        self.k + 2
    }

    /// Index of `Dl` in the right-hand-side universe.
    pub fn rhs_d(&self, l: usize) -> usize {
        l
    }

    /// Index of `P`-universe variable `i` inside the right-hand-side universe.
    pub fn rhs_index(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            i + self.k
        }
    }
}

fn check_shape(k: usize, vars: &[String]) -> Result<(), ParseError> {
    if k == 0 {
        return Err(ParseError::general("k must be at least 1"));
    }
    if vars.len() != k + 3 {
        return Err(ParseError::general(format!(
            "vars lists {} names but k = {} needs {}",
            vars.len(),
            k,
            k + 3
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for v in vars {
        if !seen.insert(v.as_str()) {
            return Err(ParseError::general(format!("variable '{v}' declared twice")));
        }
        if v.strip_prefix('D').is_some_and(|r| r.parse::<usize>().is_ok()) {
            return Err(ParseError::general(format!("'{v}' is reserved for divided differences")));
        }
    }
    Ok(())
}


fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Parse a DDE description.
pub fn parse_dde(text: &str) -> Result<DdeSpec, ParseError> {
    let mut entries: HashMap<String, (usize, usize, String)> = HashMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let eq = line
            .find('=')
            .ok_or_else(|| ParseError::at(0, "expected 'key = value'".into()).on_line(ln + 1, 0))?;
        let key = line[..eq].trim().to_string();
        let mut value = line[eq + 1..].to_string();
        let mut offset = eq + 1 + (value.len() - value.trim_start().len());
        value = value.trim().to_string();
        if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
            value = value[1..value.len() - 1].to_string();
            offset += 1;
        }
        if !matches!(key.as_str(), "k" | "a" | "vars" | "rhs" | "P") {
            return Err(ParseError::at(0, format!("unknown key '{key}'")).on_line(ln + 1, 0));
        }
        if entries.insert(key.clone(), (ln + 1, offset, value)).is_some() {
            return Err(ParseError::at(0, format!("duplicate key '{key}'")).on_line(ln + 1, 0));
        }
    }
    let get = |k: &str| entries.get(k).ok_or_else(|| ParseError::general(format!("missing key '{k}'")));
    let (kl, _, kv) = get("k")?;
    let k: usize = kv
        .trim()
        .parse()
        .map_err(|_| ParseError::at(0, format!("k must be a positive integer, got '{kv}'")).on_line(*kl, 0))?;
    let (al, _, av) = get("a")?;
    let a = parse_rational(av).ok_or_else(|| ParseError::at(0, format!("a must be a rational, got '{av}'")).on_line(*al, 0))?;
    let (vl, _, vv) = get("vars")?;
    let inner = vv
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| ParseError::at(0, "vars must be a bracketed list".into()).on_line(*vl, 0))?;
    let vars: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if vars.iter().any(|v| !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
        return Err(ParseError::at(0, "bad variable name".into()).on_line(*vl, 0));
    }

    check_shape(k, &vars).map_err(|e| e.on_line(*vl, 0))?;

    let declared_p = match entries.get("P") {
        Some((l, off, s)) => {
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            Some(
                parse_expr(s)
                    .and_then(|e| e.to_poly(&names))
                    .map_err(|e| e.on_line(*l, *off))?,
            )
        }
        None => None,
    };
    let rhs = match entries.get("rhs") {
        Some((l, off, s)) => {
            let mut names = vec![vars[0].clone()];
            names.extend((1..=k).map(|l| format!("D{l}")));
            names.extend(vars[1..].iter().cloned());
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Some(
                parse_expr(s)
                    .and_then(|e| e.to_poly(&refs))
                    .map_err(|e| e.on_line(*l, *off))?,
            )
        }
        None => None,
    };
    match (rhs, declared_p) {
        (None, None) => Err(ParseError::general("at least one of 'rhs' and 'P' is required")),
        (None, Some(p)) => DdeSpec::from_p(k, a, vars, p),
        (Some(r), None) => DdeSpec::from_rhs(k, a, vars, r),
        (Some(r), Some(p)) => {
            let mut spec = DdeSpec::from_rhs(k, a, vars, r)?;
            if spec.p != p.primitive_integer() {
                return Err(ParseError::general(
                    "declared P is not a constant multiple of the polynomial derived from rhs",
                ));
            }
            spec.p = p;
            Ok(spec)
        }
    }
}

/// Read and parse a DDE file.
pub fn read_dde(path: impl AsRef<Path>) -> Result<DdeSpec, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::general(format!("cannot read {}: {e}", path.display())))?;
    parse_dde(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    const CONST3: &str = include_str!("../../../../data/3constellations.dde");
    const TAMARI3: &str = include_str!("../../../../data/3tamari.dde");

    #[test]
    fn constellations_file() {
        let spec = parse_dde(CONST3).unwrap();
        assert_eq!(spec.k, 2);
        assert_eq!(spec.vars, ["x", "z0", "z1", "t", "u"]);
        let expect = parse_poly(
            "(u-1)^2*(1-x+t*u*x^3)+t*u*(u-1)*(2*x+z0)*(x-z0)+t*u*(x-z0-(u-1)*z1)",
            &spec.var_names(),
        )
        .unwrap();
        assert_eq!(spec.p, expect);
        // the rhs alone derives exactly the same polynomial
        let rhs_only: String = CONST3.lines().filter(|l| !l.starts_with("P")).collect::<Vec<_>>().join("\n");
        assert_eq!(parse_dde(&rhs_only).unwrap().p, expect);
    }

    #[test]
    fn tamari_file() {
        let spec = parse_dde(TAMARI3).unwrap();
        assert_eq!(spec.vars, ["x", "z0", "z1", "z2", "t", "u"]);
        let derived = clear_denominators(&spec).unwrap();
        assert_eq!(derived, spec.p.primitive_integer());
    }

    #[test]
    fn p_only_and_errors() {
        let spec = parse_dde("k = 1\na = 0\nvars = [x, z0, t, u]\nP = \"x - 1 - t*u*x^2\"").unwrap();
        assert!(spec.rhs.is_none());
        assert!(parse_dde("k = 1\na = 0\nvars = [x, z0, t, u]").is_err());
        let e = parse_dde("k = 2\na = 0\nvars = [x, z0, t, u]\nP = \"x\"").unwrap_err();
        assert!(e.msg.contains("k = 2"), "{e}");
        let e = parse_dde("k = 1\na = 0\nvars = [x, z0, t, u]\nP = \"x + y\"").unwrap_err();
        assert_eq!((e.line, e.pos), (4, 9));
        let e = parse_dde("k = 1\na = 1\nvars = [x, z0, t, u]\nrhs = \"1 + t*D1\"\nP = \"x - 2\"").unwrap_err();
        assert!(e.msg.contains("constant multiple"));
        assert!(parse_dde("k = 1\nk = 1").is_err());
        assert!(parse_dde("k = 1\nb = 1").is_err());
    }

    #[test]
    fn denominator_free_rhs() {
        // no divided differences: P = x - rhs up to normalization
        let spec = parse_dde("k = 1\na = 0\nvars = [x, z0, t, u]\nrhs = \"1 + t*u*x^2\"").unwrap();
        let expect = parse_poly("t*u*x^2 - x + 1", &spec.var_names()).unwrap();
        assert_eq!(spec.p, expect);
    }
}
