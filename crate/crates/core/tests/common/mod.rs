#![allow(dead_code)]

use proptest::prelude::*;
use qcoinv::exactnum::LaurentPoly;
use qcoinv::qalgebra::{Algebra, Deformation, NCPoly};

pub fn matrix(rows: usize, cols: usize) -> Algebra {
    Algebra::quantum_matrix(rows, cols, Deformation::GENERIC).unwrap()
}

pub fn classical(rows: usize, cols: usize) -> Algebra {
    Algebra::quantum_matrix(rows, cols, Deformation::CLASSICAL).unwrap()
}

/// `(basis index, integer coefficient, q exponent)` triples.
pub type Terms = Vec<(usize, i64, i32)>;

pub fn terms(max_len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((0usize..10_000, -4i64..=4, -3i32..=3), 1..=max_len)
}

/// A homogeneous element of degree `d` assembled from `terms`.
pub fn element(a: &Algebra, d: usize, terms: &Terms) -> NCPoly {
    let basis = a.graded_basis(d);
    let mut out = a.zero();
    for &(k, c, e) in terms {
        let m = basis.get(k % basis.len()).clone();
        out = &out + &NCPoly::from_monomial(a, m, LaurentPoly::from_int(c).shift(e));
    }
    out
}

/// Terms as `(monomial text, coefficient text)`, for comparing across algebra objects.
pub fn term_strings(p: &NCPoly) -> Vec<(String, String)> {
    let a = p.algebra();
    p.terms()
        .map(|(m, c)| {
            let one = NCPoly::from_monomial(a, m.clone(), LaurentPoly::one());
            (one.to_string(), c.to_string())
        })
        .collect()
}
