//! Exact coefficient arithmetic: rationals, Laurent polynomials in `q`, and
//! sparse linear algebra over `Q[q, q^-1]` and its fraction field.

mod laurent;
mod matrix;

pub use laurent::LaurentPoly;
pub use matrix::{rank_rational, EvalPoint, LaurentMatrix};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| crate::Error::Parse(format!("bad rational literal `{s}`")))
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
