use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::LaurentPoly;
use crate::qalgebra::{Algebra, Monomial, NCPoly};

use super::quantum_det;

/// `numerator * det_q^det_power` in `O_q(GL_t)`. Normalized elements have
/// `det_power <= 0` and a numerator not divisible by `det_q` when the power
/// is negative.
#[derive(Clone)]
pub struct GLElement {
    numerator: NCPoly,
    det_power: i64,
}

impl GLElement {
    pub fn new(numerator: NCPoly, det_power: i64) -> Self {
        GLElement { numerator, det_power }
    }

    pub fn from_poly(p: NCPoly) -> Self {
        GLElement::new(p, 0)
    }

    pub fn zero(algebra: &Algebra) -> Self {
        GLElement::new(algebra.zero(), 0)
    }

    pub fn det_inverse(algebra: &Algebra) -> Result<Self> {
        quantum_det(algebra)?;
        Ok(GLElement::new(algebra.one(), -1))
    }

    pub fn numerator(&self) -> &NCPoly {
        &self.numerator
    }

    pub fn det_power(&self) -> i64 {
        self.det_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn det(&self) -> NCPoly {
        quantum_det(self.numerator.algebra()).expect("square quantum matrix algebra")
    }

    /// Numerator rewritten over `det^level`, for `level <= det_power`.
    pub fn numerator_at(&self, level: i64) -> NCPoly {
        assert!(level <= self.det_power);
        let k = (self.det_power - level) as u32;
        if k == 0 {
            self.numerator.clone()
        } else {
            self.numerator.mul(&self.det().pow(k)).expect("same algebra")
        }
    }

    pub fn mul(&self, other: &GLElement) -> Result<GLElement> {
        Ok(GLElement::new(
            self.numerator.mul(&other.numerator)?,
            self.det_power + other.det_power,
        )
        .normalized())
    }

    pub fn add(&self, other: &GLElement) -> Result<GLElement> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let level = self.det_power.min(other.det_power);
        let sum = self.numerator_at(level).checked_add(&other.numerator_at(level))?;
        Ok(GLElement::new(sum, level).normalized())
    }

    pub fn sub(&self, other: &GLElement) -> Result<GLElement> {
        self.add(&GLElement::new(-&other.numerator, other.det_power))
    }

    /// Cancels powers of `det_q` from the numerator and absorbs positive powers.
    pub fn normalized(&self) -> GLElement {
        if self.numerator.is_zero() {
            return GLElement::new(self.numerator.clone(), 0);
        }
        if self.det_power > 0 {
            return GLElement::new(self.numerator_at(0), 0);
        }
        let mut num = self.numerator.clone();
        let mut p = self.det_power;
        let det = self.det();
        while p < 0 {
            match try_div_det(&num, &det) {
                Some(qt) => {
                    num = qt;
                    p += 1;
                }
                None => break,
            }
        }
        GLElement::new(num, p)
    }
}

impl PartialEq for GLElement {
    fn eq(&self, other: &Self) -> bool {
        if self.numerator.algebra() != other.numerator.algebra() {
            return false;
        }
        let level = self.det_power.min(other.det_power);
        self.numerator_at(level) == other.numerator_at(level)
    }
}

impl fmt::Debug for GLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.det_power == 0 {
            write!(f, "({})", self.numerator)
        } else {
            write!(f, "({})*det^{}", self.numerator, self.det_power)
        }
    }
}

impl GLElement {
    /// Parses `(elem)` or `(elem)*det^k`.
    pub fn parse(algebra: &Algebra, s: &str) -> Result<GLElement> {
        let s = s.trim();
        let (body, power) = match s.rfind(")*det^") {
            Some(k) => {
                let p: i64 = s[k + 6..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad det power in `{s}`")))?;
                (&s[..=k], p)
            }
            None => (s, 0),
        };
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad element `{s}`")))?;
        quantum_det(algebra)?;
        Ok(GLElement::new(algebra.parse_element(inner)?, power))
    }
}

fn exponents(w: &[u16], n: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for &g in w {
        e[g as usize] += 1;
    }
    e
}

/// Degree first, then lexicographic on exponent vectors with `X[1,1]` most
/// significant. Products of normal monomials have the merged word as their
/// leading term under this order.
fn leading_cmp(a: &[u16], b: &[u16], n: usize) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| exponents(a, n).cmp(&exponents(b, n)))
}

fn leading(p: &NCPoly, n: usize) -> (Vec<u16>, LaurentPoly) {
    let (m, c) = p
        .terms()
        .max_by(|x, y| leading_cmp(x.0.as_word().unwrap(), y.0.as_word().unwrap(), n))
        .expect("nonzero");
    (m.as_word().unwrap().to_vec(), c.clone())
}

/// Exact quotient `p / det` if it exists, by leading-term division.
pub(crate) fn try_div_det(p: &NCPoly, det: &NCPoly) -> Option<NCPoly> {
    let algebra = p.algebra();
    let (t, _) = algebra.matrix_shape()?;
    let n = t * t;
    let mut rem = p.clone();
    let mut quot = algebra.zero();
    while !rem.is_zero() {
        let (lm, lc) = leading(&rem, n);
        let mut e = exponents(&lm, n);
        for i in 0..t {
            let g = i * t + i;
            if e[g] == 0 {
                return None;
            }
            e[g] -= 1;
        }
        let word: Vec<u16> = e
            .iter()
            .enumerate()
            .flat_map(|(g, &k)| std::iter::repeat_n(g as u16, k as usize))
            .collect();
        let m = NCPoly::from_monomial(algebra, Monomial::Word(word), LaurentPoly::one());
        let prod = det.mul(&m).ok()?;
        let (plm, plc) = leading(&prod, n);
        if plm != lm {
            return None;
        }
        let factor = &lc * &plc.unit_inverse()?;
        quot = &quot + &m.scale(&factor);
        rem = &rem - &prod.scale(&factor);
    }
    Some(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::Deformation;

    #[test]
    fn division_and_text() {
        let a = Algebra::quantum_matrix(2, 2, Deformation::GENERIC).unwrap();
        let det = quantum_det(&a).unwrap();
        let f = a.x(1, 2).unwrap().mul(&det).unwrap().mul(&det).unwrap();
        let g = GLElement::new(f, -3).normalized();
        assert_eq!(g.det_power(), -1);
        assert_eq!(g.numerator(), &a.x(1, 2).unwrap());
        assert!(try_div_det(&a.x(1, 1).unwrap(), &det).is_none());
        let s = g.to_string();
        assert_eq!(s, "((1*q^0)*X[1,2]^1)*det^-1");
        assert_eq!(GLElement::parse(&a, &s).unwrap(), g);
        let pos = GLElement::new(a.one(), 1).normalized();
        assert_eq!(pos.numerator(), &det);
    }
}
