//! Canonical text form: `(c)*m + (c)*m ...`, monomials as `X[i,j]^e`
//! products, free words as `label*label`, tensor monomials as `(a)(x)(b)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::LaurentPoly;

use super::{Algebra, Monomial, NCPoly, Node};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Index of the parenthesis closing the one at `open`.
fn matching_paren(s: &str, open: usize) -> Result<usize> {
    let mut depth = 0usize;
    for (k, ch) in s.char_indices().skip_while(|(k, _)| *k < open) {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(k);
                }
            }
            _ => {}
        }
    }
    Err(parse_err(format!("unbalanced parentheses in `{s}`")))
}

/// Splits on ` + ` occurring outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut k = 0;
    while k < bytes.len() {
        match bytes[k] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && s[k..].starts_with(" + ") => {
                out.push(&s[start..k]);
                k += 3;
                start = k;
                continue;
            }
            _ => {}
        }
        k += 1;
    }
    out.push(&s[start..]);
    out
}

impl Algebra {
    pub fn format_monomial(&self, m: &Monomial) -> String {
        match (self.node(), m) {
            (Node::Matrix(r), Monomial::Word(w)) => {
                if w.is_empty() {
                    return "1".into();
                }
                let mut parts = Vec::new();
                let mut k = 0;
                while k < w.len() {
                    let g = w[k];
                    let mut e = 0;
                    while k < w.len() && w[k] == g {
                        e += 1;
                        k += 1;
                    }
                    let (i, j) = r.position(g);
                    parts.push(format!("X[{},{}]^{}", i + 1, j + 1, e));
                }
                parts.join("*")
            }
            (Node::Free(g), Monomial::Word(w)) => {
                if w.is_empty() {
                    return "1".into();
                }
                w.iter()
                    .map(|&k| g[k as usize].label.as_str())
                    .collect::<Vec<_>>()
                    .join("*")
            }
            (Node::Tensor(a, b), Monomial::Pair(x, y)) => {
                format!("({})(x)({})", a.format_monomial(x), b.format_monomial(y))
            }
            _ => panic!("monomial does not belong to {:?}", self),
        }
    }

    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let s = s.trim();
        match self.node() {
            Node::Matrix(r) => {
                if s == "1" {
                    return Ok(Monomial::Word(Vec::new()));
                }
                let mut word = Vec::new();
                for part in s.split('*') {
                    let part = part.trim();
                    let body = part
                        .strip_prefix("X[")
                        .ok_or_else(|| parse_err(format!("bad factor `{part}`")))?;
                    let (idx, exp) = body
                        .split_once("]^")
                        .ok_or_else(|| parse_err(format!("bad factor `{part}`")))?;
                    let (i, j) = idx
                        .split_once(',')
                        .ok_or_else(|| parse_err(format!("bad index `{idx}`")))?;
                    let i: usize = i.trim().parse().map_err(|_| parse_err(format!("bad row `{i}`")))?;
                    let j: usize = j.trim().parse().map_err(|_| parse_err(format!("bad column `{j}`")))?;
                    let e: usize = exp.parse().map_err(|_| parse_err(format!("bad exponent `{exp}`")))?;
                    if i == 0 || j == 0 || i > r.rows || j > r.cols {
                        return Err(Error::IndexOutOfRange(format!("X[{i},{j}]")));
                    }
                    let g = r.generator(i - 1, j - 1);
                    word.extend(std::iter::repeat_n(g, e));
                }
                if word.windows(2).any(|p| p[0] > p[1]) {
                    return Err(parse_err(format!("monomial `{s}` is not in normal order")));
                }
                Ok(Monomial::Word(word))
            }
            Node::Free(g) => {
                if s == "1" {
                    return Ok(Monomial::Word(Vec::new()));
                }
                s.split('*')
                    .map(|label| {
                        let label = label.trim();
                        g.iter()
                            .position(|x| x.label == label)
                            .map(|k| k as u16)
                            .ok_or_else(|| parse_err(format!("unknown generator `{label}`")))
                    })
                    .collect::<Result<Vec<u16>>>()
                    .map(Monomial::Word)
            }
            Node::Tensor(a, b) => {
                if !s.starts_with('(') {
                    return Err(parse_err(format!("bad tensor monomial `{s}`")));
                }
                let close = matching_paren(s, 0)?;
                let left = &s[1..close];
                let rest = s[close + 1..]
                    .strip_prefix("(x)(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| parse_err(format!("bad tensor monomial `{s}`")))?;
                Ok(Monomial::pair(a.parse_monomial(left)?, b.parse_monomial(rest)?))
            }
        }
    }

    /// Parses the canonical element text form.
    pub fn parse_element(&self, s: &str) -> Result<NCPoly> {
        let s = s.trim();
        let mut out = NCPoly::zero(self);
        if s == "0" {
            return Ok(out);
        }
        for term in split_top_level(s) {
            let term = term.trim();
            if !term.starts_with('(') {
                return Err(parse_err(format!("term `{term}` must start with a coefficient")));
            }
            let close = matching_paren(term, 0)?;
            let coef: LaurentPoly = term[1..close].parse()?;
            let mono = term[close + 1..]
                .strip_prefix('*')
                .ok_or_else(|| parse_err(format!("missing `*` in `{term}`")))?;
            let m = self.parse_monomial(mono)?;
            if !self.owns(&m) {
                return Err(parse_err(format!("monomial `{mono}` is not in this algebra")));
            }
            out.add_term(m, &coef);
        }
        Ok(out)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, self.algebra().format_monomial(m))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Deformation, FreeGenerator};
    use super::*;

    #[test]
    fn round_trip_matrix() {
        let a = Algebra::quantum_matrix(2, 2, Deformation::GENERIC).unwrap();
        let x11 = a.x(1, 1).unwrap();
        let x22 = a.x(2, 2).unwrap();
        let x12 = a.x(1, 2).unwrap();
        let x21 = a.x(2, 1).unwrap();
        let f = x22.mul(&x11).unwrap() + x12.mul(&x21).unwrap().pow(1) + a.one();
        let s = f.to_string();
        assert_eq!(a.parse_element(&s).unwrap(), f);
        assert_eq!(a.format_monomial(&Monomial::Word(vec![0, 0, 1])), "X[1,1]^2*X[1,2]^1");
        assert_eq!(a.parse_element("0").unwrap(), a.zero());
        assert!(a.parse_element("(1*q^0)*X[1,2]^1*X[1,1]^1").is_err());
    }

    #[test]
    fn round_trip_free_and_tensor() {
        let f = Algebra::free(
            vec![FreeGenerator::new("L12", 1), FreeGenerator::new("L34", 1)],
            Deformation::GENERIC,
        )
        .unwrap();
        let w = f.generator(0).mul(&f.generator(1)).unwrap();
        assert_eq!(w.to_string(), "(1*q^0)*L12*L34");
        let m = Algebra::quantum_matrix(1, 2, Deformation::GENERIC).unwrap();
        let t = Algebra::tensor(&f, &m);
        let e = w.tensor(&m.x(1, 2).unwrap(), &t).unwrap();
        assert_eq!(e.to_string(), "(1*q^0)*(L12*L34)(x)(X[1,2]^1)");
        assert_eq!(t.parse_element(&e.to_string()).unwrap(), e);
    }
}
