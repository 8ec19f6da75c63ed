//! Laurent polynomials in `q` with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// An element of `Q[q, q^-1]`.
///
/// Terms are kept sorted by ascending exponent and never hold a zero
/// coefficient, so structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// `c * q^e`.
    pub fn monomial(c: Rational, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut v: Vec<(i32, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(i32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Single-term elements are exactly the units of `Q[q, q^-1]`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Width of the exponent range; zero for the zero element.
    pub fn spread(&self) -> u32 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => (b - a) as u32,
            _ => 0,
        }
    }

    pub fn coefficient(&self, e: i32) -> Rational {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.last().map(|t| &t.1)
    }

    /// If `self` is a constant, returns it.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Evaluates at `q = lambda`. `lambda` must be nonzero since `q` is a unit.
    pub fn specialize(&self, lambda: &Rational) -> Result<Rational> {
        if lambda.is_zero() {
            return Err(Error::ZeroSpecialization);
        }
        Ok(self.eval_nonzero(lambda))
    }

    pub(crate) fn eval_nonzero(&self, lambda: &Rational) -> Rational {
        if lambda.is_one() {
            return self.terms.iter().fold(Rational::zero(), |acc, (_, c)| acc + c);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(lambda, *e);
        }
        acc
    }

    /// Inverse of a unit `c q^e`.
    pub fn unit_inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(e, c)] => Some(LaurentPoly::monomial(c.recip(), -e)),
            _ => None,
        }
    }

    /// `(c, p)` with `self = q^s * p`, `p` a polynomial with nonzero constant term.
    fn split_q_power(&self) -> (i32, Vec<Rational>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut dense = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    fn from_dense(shift: i32, dense: &[Rational]) -> Self {
        LaurentPoly {
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i32 + shift, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor` in `Q[q, q^-1]`, or `None` if it does not divide.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(inv) = divisor.unit_inverse() {
            return Some(self * &inv);
        }
        let (sa, a) = self.split_q_power();
        let (sb, b) = divisor.split_q_power();
        let (quot, rem) = dense_div_rem(&a, &b);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(sa - sb, &quot))
    }

    /// Greatest common divisor, normalized to a monic polynomial with
    /// nonzero constant term (units of the Laurent ring are divided out).
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.normalized_associate();
        }
        if other.is_zero() || self.is_unit() || other.is_unit() {
            return if other.is_zero() {
                self.normalized_associate()
            } else {
                LaurentPoly::one()
            };
        }
        let (_, mut a) = self.split_q_power();
        let (_, mut b) = other.split_q_power();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let (_, r) = dense_div_rem(&a, &b);
            let r = trim(r);
            if r.is_empty() {
                return make_monic(Self::from_dense(0, &b));
            }
            a = b;
            b = make_monic_dense(r);
            if b.len() == 1 {
                return LaurentPoly::one();
            }
        }
    }

    /// The associate of `self` with lowest exponent 0 and leading coefficient 1.
    pub fn normalized_associate(&self) -> LaurentPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let lo = self.min_exp().unwrap();
        make_monic(self.shift(-lo))
    }

    /// Rational content: positive gcd of numerators over lcm of denominators.
    pub fn rational_content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn add_scaled(&self, other: &LaurentPoly, negate: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, c) = &other.terms[j];
                    out.push((*e, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LaurentPoly { terms: out }
    }

    fn mul_impl(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            if c.is_one() {
                return self.shift(*e);
            }
            return LaurentPoly {
                terms: self.terms.iter().map(|(x, y)| (x + e, y * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.mul_impl(self);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut dense = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self::from_dense(lo, &dense)
    }
}

pub(crate) fn pow_rational(x: &Rational, e: i32) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn make_monic_dense(v: Vec<Rational>) -> Vec<Rational> {
    let lead = v.last().cloned().unwrap();
    v.into_iter().map(|c| c / &lead).collect()
}

fn make_monic(p: LaurentPoly) -> LaurentPoly {
    match p.leading_coefficient().cloned() {
        Some(l) => p.scale(&l.recip()),
        None => p,
    }
}

/// Dense polynomial division over `Q`, coefficient vectors in ascending degree.
fn dense_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            rem[shift + i] -= t;
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (quot, rem)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form: `c*q^e` terms, exponents descending, e.g. `1*q^2 - 3*q^0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{abs}*q^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        if compact == "0" {
            return Ok(LaurentPoly::zero());
        }
        // Split at '+'/'-' that start a term (not directly after '^').
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        let mut terms = Vec::new();
        for piece in pieces {
            terms.push(parse_term(piece)?);
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

fn parse_term(piece: &str) -> Result<(i32, Rational)> {
    let bad = || Error::Parse(format!("bad Laurent term `{piece}`"));
    let (sign, body) = match piece.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, piece.strip_prefix('+').unwrap_or(piece)),
    };
    let (coef, exp) = match body.find('q') {
        Some(pos) => {
            let coef = body[..pos].trim_end_matches('*');
            let coef = if coef.is_empty() {
                Rational::one()
            } else {
                Rational::from_str(coef).map_err(|_| bad())?
            };
            let rest = &body[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<i32>()
                    .map_err(|_| bad())?
            };
            (coef, exp)
        }
        None => (Rational::from_str(body).map_err(|_| bad())?, 0),
    };
    Ok((exp, if sign < 0 { -coef } else { coef }))
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_scaled(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_scaled(rhs, true);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&lp("q") * &lp("q^-1")).is_one());
        assert!((&lp("q - 1") + &lp("1 - q")).is_zero());
        assert_eq!(&lp("q - 1") * &lp("q + 1"), lp("q^2 - 1"));
    }

    #[test]
    fn specialize_examples() {
        let one = Rational::one();
        assert_eq!(lp("q - 1").specialize(&one).unwrap(), Rational::zero());
        assert_eq!(lp("q + q^-1").specialize(&one).unwrap(), rat(2, 1));
        assert_eq!(lp("q^2 - 3").specialize(&rat(2, 1)).unwrap(), rat(1, 1));
        assert!(matches!(lp("q").specialize(&Rational::zero()), Err(Error::ZeroSpecialization)));
    }

    #[test]
    fn text_form() {
        let p = LaurentPoly::from_terms([(2, rat(1, 1)), (0, rat(-3, 1))]);
        assert_eq!(p.to_string(), "1*q^2 - 3*q^0");
        assert_eq!(lp("1*q^2 - 3*q^0"), p);
        let r = LaurentPoly::from_terms([(-1, rat(-3, 2)), (4, rat(7, 5))]);
        assert_eq!(r.to_string().parse::<LaurentPoly>().unwrap(), r);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("q^".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = lp("q^3 - q^-1");
        let b = lp("q^2 + 1");
        let quot = a.exact_div(&b).unwrap();
        assert_eq!(&quot * &b, a);
        assert!(lp("q^2 + 2").exact_div(&lp("q + 1")).is_none());
        let g = lp("2*q^3 - 2*q").gcd(&lp("q^2 + 2*q + 1"));
        assert_eq!(g, lp("q + 1"));
        assert!(lp("q^5").gcd(&lp("q^2 - 1")).is_one());
    }
}
