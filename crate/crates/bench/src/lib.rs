//! Fixtures shared by the criterion benchmarks.

use qcoinv::coact::{Coaction, CoactionKind};
use qcoinv::exactnum::LaurentPoly;
use qcoinv::qalgebra::{Algebra, Deformation, NCPoly};

pub fn matrix(rows: usize, cols: usize) -> Algebra {
    Algebra::quantum_matrix(rows, cols, Deformation::GENERIC).expect("valid shape")
}

/// Sum of every normal word of degree `d`, coefficient `q^k` on the k-th one.
pub fn dense_element(a: &Algebra, d: usize) -> NCPoly {
    let n = a.graded_basis(d).len();
    let coords: Vec<LaurentPoly> = (0..n).map(|k| LaurentPoly::one().shift(k as i32 % 5 - 2)).collect();
    NCPoly::from_coordinates(a, d, &coords).expect("coordinates match basis")
}

pub fn conjugation(n: usize) -> Coaction {
    Coaction::new(CoactionKind::Conjugation { n }, Deformation::GENERIC).expect("valid kind")
}

pub fn interior(m: usize, n: usize, t: usize) -> Coaction {
    Coaction::new(CoactionKind::Interior { m, n, t }, Deformation::GENERIC).expect("valid kind")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let a = matrix(2, 2);
        assert_eq!(dense_element(&a, 2).express_in_basis(2).unwrap().len(), 10);
        assert_eq!(conjugation(2).psi_matrix(1).unwrap().cols(), 4);
        assert!(interior(2, 2, 1).carrier().graded_basis(1).len() == 4);
    }
}
