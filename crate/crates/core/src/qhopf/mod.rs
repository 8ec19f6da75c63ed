//! Bialgebra and Hopf structure of `O_q(M_t)` and its localization
//! `O_q(GL_t)`, quantum minors, and membership in the ideal `(det_q - 1)`.

mod gl;

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactnum::{EvalPoint, LaurentMatrix, LaurentPoly};
use crate::qalgebra::{Algebra, AlgebraHom, Deformation, Fault, Monomial, NCPoly};

pub use gl::GLElement;

/// Row and column index sets of a minor, 1-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl IndexSet {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<IndexSet> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidParams(format!(
                "minor needs |I| = |J|, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        let increasing = |v: &[usize]| v.windows(2).all(|p| p[0] < p[1]) && v.iter().all(|&x| x >= 1);
        if !increasing(&rows) || !increasing(&cols) {
            return Err(Error::InvalidParams(format!(
                "index sets must be strictly increasing and 1-based: {rows:?} | {cols:?}"
            )));
        }
        Ok(IndexSet { rows, cols })
    }

    /// `[I|I]`.
    pub fn principal(rows: Vec<usize>) -> Result<IndexSet> {
        IndexSet::new(rows.clone(), rows)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// Inversion count.
pub fn inversions(p: &[usize]) -> usize {
    p.iter()
        .enumerate()
        .map(|(k, &x)| p[k + 1..].iter().filter(|&&y| y < x).count())
        .sum()
}

/// `[I|J] = sum_pi (-q)^l(pi) X[i1, j_pi(1)] ... X[ik, j_pi(k)]`, rows ascending.
pub fn quantum_minor(algebra: &Algebra, s: &IndexSet) -> Result<NCPoly> {
    let (rows, cols) = algebra
        .matrix_shape()
        .ok_or_else(|| Error::InvalidParams(format!("{:?} is not a quantum matrix algebra", algebra)))?;
    if s.rows.last().is_some_and(|&i| i > rows) || s.cols.last().is_some_and(|&j| j > cols) {
        return Err(Error::IndexOutOfRange(format!(
            "[{:?}|{:?}] in {rows}x{cols}",
            s.rows, s.cols
        )));
    }
    let def = algebra.deformation();
    let k = s.size();
    let mut out = algebra.zero();
    for perm in (0..k).permutations(k) {
        let len = inversions(&perm) as i32;
        let coef = if def.fault == Some(Fault::MinorSign) {
            def.q_pow(len)
        } else {
            def.minus_q_pow(len)
        };
        let mut term = algebra.one();
        for (a, &b) in perm.iter().enumerate() {
            term = term.mul(&algebra.x(s.rows[a], s.cols[b])?)?;
        }
        out = &out + &term.scale(&coef);
    }
    Ok(out)
}

/// `det_q` of a square quantum matrix algebra, cached per size and deformation.
pub fn quantum_det(algebra: &Algebra) -> Result<NCPoly> {
    static CACHE: OnceLock<DashMap<(usize, Deformation), NCPoly>> = OnceLock::new();
    let t = square_size(algebra)?;
    let cache = CACHE.get_or_init(DashMap::new);
    let key = (t, algebra.deformation());
    if let Some(d) = cache.get(&key) {
        if d.algebra() == algebra {
            return Ok(d.clone());
        }
    }
    let all: Vec<usize> = (1..=t).collect();
    let d = quantum_minor(algebra, &IndexSet::principal(all)?)?;
    cache.insert(key, d.clone());
    Ok(d)
}

fn square_size(algebra: &Algebra) -> Result<usize> {
    match algebra.matrix_shape() {
        Some((r, c)) if r == c => Ok(r),
        _ => Err(Error::InvalidParams(format!(
            "{:?} is not a square quantum matrix algebra",
            algebra
        ))),
    }
}

/// The homomorphism `O_q(M_{a,c}) -> O_q(M_{a,b}) (x) O_q(M_{b,c})`,
/// `X[i,j] -> sum_l X[i,l] (x) X[l,j]`. Covers the coproduct, the right and
/// left coactions, and the multiplication map of the interior action. Total
/// tensor degree doubles.
pub fn matrix_coproduct(source: &Algebra, left: &Algebra, right: &Algebra) -> Result<AlgebraHom> {
    matrix_coproduct_into(source, &Algebra::tensor(left, right))
}

/// As [`matrix_coproduct`], into an existing tensor algebra object.
pub fn matrix_coproduct_into(source: &Algebra, target: &Algebra) -> Result<AlgebraHom> {
    let (left, right) = target
        .tensor_factors()
        .ok_or_else(|| Error::InvalidParams("coproduct target must be a tensor algebra".into()))?;
    let (a, c) = source
        .matrix_shape()
        .ok_or_else(|| Error::InvalidParams("coproduct source must be a quantum matrix algebra".into()))?;
    let (la, lb) = left.matrix_shape().ok_or_else(|| Error::InvalidParams("bad left factor".into()))?;
    let (rb, rc) = right.matrix_shape().ok_or_else(|| Error::InvalidParams("bad right factor".into()))?;
    if la != a || rc != c || lb != rb {
        return Err(Error::InvalidParams(format!(
            "shapes do not chain: {a}x{c} -> {la}x{lb} (x) {rb}x{rc}"
        )));
    }
    let mut images = Vec::with_capacity(a * c);
    for i in 1..=a {
        for j in 1..=c {
            let mut img = target.zero();
            for l in 1..=lb {
                img = &img + &left.x(i, l)?.tensor(&right.x(l, j)?, target)?;
            }
            images.push(img);
        }
    }
    AlgebraHom::new(source, target, images, 2)
}

/// `O_q(M_t)` with its coproduct, counit, determinant and the antipode of `O_q(GL_t)`.
pub struct QuantumGL {
    t: usize,
    algebra: Algebra,
    det: NCPoly,
    delta: AlgebraHom,
    cofactors: Vec<NCPoly>,
    antipode_cache: DashMap<Vec<u16>, Arc<NCPoly>>,
}

impl QuantumGL {
    pub fn new(t: usize, deformation: Deformation) -> Result<QuantumGL> {
        let algebra = Algebra::quantum_matrix(t, t, deformation)?;
        QuantumGL::over(&algebra)
    }

    pub fn over(algebra: &Algebra) -> Result<QuantumGL> {
        let t = square_size(algebra)?;
        let det = quantum_det(algebra)?;
        let delta = matrix_coproduct(algebra, algebra, algebra)?;
        let def = algebra.deformation();
        let mut cofactors = Vec::with_capacity(t * t);
        for i in 1..=t {
            for j in 1..=t {
                let rows: Vec<usize> = (1..=t).filter(|&k| k != j).collect();
                let cols: Vec<usize> = (1..=t).filter(|&k| k != i).collect();
                let e = if def.fault == Some(Fault::AntipodeSign) {
                    j as i32 - i as i32
                } else {
                    i as i32 - j as i32
                };
                let minor = quantum_minor(algebra, &IndexSet::new(rows, cols)?)?;
                cofactors.push(minor.scale(&def.minus_q_pow(e)));
            }
        }
        Ok(QuantumGL {
            t,
            algebra: algebra.clone(),
            det,
            delta,
            cofactors,
            antipode_cache: DashMap::new(),
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn det(&self) -> &NCPoly {
        &self.det
    }

    pub fn det_pow(&self, k: u32) -> NCPoly {
        self.det.pow(k)
    }

    /// The algebra `O_q(M_t) (x) O_q(M_t)` holding coproducts.
    pub fn pair_algebra(&self) -> &Algebra {
        self.delta.target()
    }

    pub fn comultiply(&self, f: &NCPoly) -> Result<NCPoly> {
        self.delta.apply(f)
    }

    pub fn comultiply_monomial(&self, m: &Monomial) -> NCPoly {
        self.delta.apply_monomial(m)
    }

    pub fn counit(&self, f: &NCPoly) -> Result<LaurentPoly> {
        counit(f)
    }

    /// Numerator of `S(m)` for a monomial of degree `k`; `S(m) = numerator * det^-k`.
    pub fn antipode_numerator(&self, m: &Monomial) -> Arc<NCPoly> {
        let w = m.as_word().expect("quantum matrix monomial");
        self.antipode_word(w)
    }

    fn antipode_word(&self, w: &[u16]) -> Arc<NCPoly> {
        if w.is_empty() {
            return Arc::new(self.algebra.one());
        }
        if w.len() == 1 {
            return Arc::new(self.cofactors[w[0] as usize].clone());
        }
        if let Some(hit) = self.antipode_cache.get(w) {
            return hit.clone();
        }
        let (head, last) = w.split_at(w.len() - 1);
        let value = Arc::new(
            self.cofactors[last[0] as usize]
                .mul(&self.antipode_word(head))
                .expect("same algebra"),
        );
        self.antipode_cache.insert(w.to_vec(), value.clone());
        value
    }

    /// Antipode of `O_q(GL_t)`: an anti-homomorphism with
    /// `S(X[i,j]) = (-q)^(i-j) [{1..t}-{j} | {1..t}-{i}] det^-1` and `S(det^-1) = det`.
    pub fn antipode(&self, g: &GLElement) -> Result<GLElement> {
        if g.numerator().algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch(
                format!("{:?}", g.numerator().algebra()),
                format!("{:?}", self.algebra),
            ));
        }
        let mut acc = GLElement::zero(&self.algebra);
        for (m, c) in g.numerator().terms() {
            let k = self.algebra.monomial_degree(m) as i64;
            let num = self.antipode_numerator(m).scale(c);
            acc = acc.add(&GLElement::new(num, -k - g.det_power()))?;
        }
        Ok(acc.normalized())
    }

    /// `sum S(f_1) f_2`.
    pub fn convolve_left(&self, f: &NCPoly) -> Result<GLElement> {
        self.convolve(f, true)
    }

    /// `sum f_1 S(f_2)`.
    pub fn convolve_right(&self, f: &NCPoly) -> Result<GLElement> {
        self.convolve(f, false)
    }

    fn convolve(&self, f: &NCPoly, left: bool) -> Result<GLElement> {
        let mut acc = GLElement::zero(&self.algebra);
        let d = self.comultiply(f)?;
        for (m, c) in d.terms() {
            let (a, b) = m.as_pair().expect("tensor monomial");
            let term = if left {
                let k = self.algebra.monomial_degree(a) as i64;
                let sa = self.antipode_numerator(a).scale(c);
                let bb = NCPoly::from_monomial(&self.algebra, b.clone(), LaurentPoly::one());
                GLElement::new(sa.mul(&bb)?, -k)
            } else {
                let k = self.algebra.monomial_degree(b) as i64;
                let aa = NCPoly::from_monomial(&self.algebra, a.clone(), c.clone());
                GLElement::new(aa.mul(&self.antipode_numerator(b))?, -k)
            };
            acc = acc.add(&term)?;
        }
        Ok(acc.normalized())
    }
}

/// `eps(X[i,j]) = delta_ij`, extended multiplicatively.
pub fn counit(f: &NCPoly) -> Result<LaurentPoly> {
    let (r, c) = f
        .algebra()
        .matrix_shape()
        .ok_or_else(|| Error::InvalidParams("counit needs a quantum matrix algebra".into()))?;
    if r != c {
        return Err(Error::InvalidParams("counit needs a square algebra".into()));
    }
    let mut acc = LaurentPoly::zero();
    for (m, coef) in f.terms() {
        let w = m.as_word().expect("word");
        if w.iter().all(|&g| g as usize / c == g as usize % c) {
            acc += coef;
        }
    }
    Ok(acc)
}

/// `Delta(f)` in `O_q(M_t) (x) O_q(M_t)`.
pub fn comultiply(f: &NCPoly) -> Result<NCPoly> {
    QuantumGL::over(f.algebra())?.comultiply(f)
}

/// `S(g)` in `O_q(GL_t)`.
pub fn antipode(g: &GLElement) -> Result<GLElement> {
    QuantumGL::over(g.numerator().algebra())?.antipode(g)
}

/// Whether `h` lies in the span of `(det_q - 1) m` over monomials `m` of degree
/// at most `dmax - r`.
pub fn sl_ideal_member(h: &NCPoly, dmax: usize) -> Result<bool> {
    sl_ideal_contains_all(std::slice::from_ref(h), dmax)
}

/// Simultaneous membership test: all of `hs` lie in the bounded span.
pub fn sl_ideal_contains_all(hs: &[NCPoly], dmax: usize) -> Result<bool> {
    let Some(first) = hs.first() else {
        return Ok(true);
    };
    let algebra = first.algebra().clone();
    let r = square_size(&algebra)?;
    for h in hs {
        if h.algebra() != &algebra {
            return Err(Error::AlgebraMismatch(
                format!("{:?}", h.algebra()),
                format!("{:?}", algebra),
            ));
        }
        if h.degrees().last().is_some_and(|&d| d > dmax) {
            return Err(Error::InvalidParams(format!(
                "element of degree above the bound {dmax}"
            )));
        }
    }
    if dmax < r {
        return Ok(hs.iter().all(|h| h.is_zero()));
    }
    let mut offsets = Vec::with_capacity(dmax + 2);
    let mut total = 0;
    for d in 0..=dmax {
        offsets.push(total);
        total += algebra.graded_basis(d).len();
    }
    let coords = |f: &NCPoly| -> Vec<(usize, LaurentPoly)> {
        f.terms()
            .map(|(m, c)| {
                let d = algebra.monomial_degree(m);
                (offsets[d] + algebra.graded_basis(d).position(m).expect("normal"), c.clone())
            })
            .collect()
    };
    let det_minus_one = quantum_det(&algebra)? - algebra.one();
    let mut columns = Vec::new();
    for d in 0..=dmax - r {
        for m in algebra.graded_basis(d).monomials() {
            let mono = NCPoly::from_monomial(&algebra, m.clone(), LaurentPoly::one());
            columns.push(coords(&det_minus_one.mul(&mono)?));
        }
    }
    let base = LaurentMatrix::from_columns(total, columns.clone()).rank(&EvalPoint::Generic)?;
    columns.extend(hs.iter().map(coords));
    let extended = LaurentMatrix::from_columns(total, columns).rank(&EvalPoint::Generic)?;
    Ok(base == extended)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn minors() {
        let a = Algebra::quantum_matrix(2, 2, Deformation::GENERIC).unwrap();
        let m11 = quantum_minor(&a, &IndexSet::new(vec![1], vec![1]).unwrap()).unwrap();
        assert_eq!(m11, a.x(1, 1).unwrap());
        let det = quantum_det(&a).unwrap();
        let expect = a.x(1, 1).unwrap().mul(&a.x(2, 2).unwrap()).unwrap()
            - a.x(1, 2).unwrap().mul(&a.x(2, 1).unwrap()).unwrap().scale(&lp("q"));
        assert_eq!(det, expect);
        let x12 = a.x(1, 2).unwrap();
        assert!(det.commutator(&x12).unwrap().is_zero());
        assert!(quantum_minor(&a, &IndexSet::new(vec![1, 3], vec![1, 2]).unwrap()).is_err());
        assert!(IndexSet::new(vec![2, 1], vec![1, 2]).is_err());
    }

    #[test]
    fn coproduct_and_counit() {
        let h = QuantumGL::new(2, Deformation::GENERIC).unwrap();
        let a = h.algebra();
        let d = h.comultiply(&a.x(1, 1).unwrap()).unwrap();
        let p = h.pair_algebra();
        let expect = a.x(1, 1).unwrap().tensor(&a.x(1, 1).unwrap(), p).unwrap()
            + a.x(1, 2).unwrap().tensor(&a.x(2, 1).unwrap(), p).unwrap();
        assert_eq!(d, expect);
        assert_eq!(h.comultiply(&a.one()).unwrap(), a.one().tensor(&a.one(), p).unwrap());
        assert!(counit(&a.x(1, 1).unwrap()).unwrap().is_one());
        assert!(counit(&a.x(1, 2).unwrap()).unwrap().is_zero());
        assert!(counit(h.det()).unwrap().is_one());
    }

    #[test]
    fn antipode_examples() {
        let h1 = QuantumGL::new(1, Deformation::GENERIC).unwrap();
        let x = GLElement::from_poly(h1.algebra().x(1, 1).unwrap());
        let s = h1.antipode(&x).unwrap();
        assert_eq!(s.det_power(), -1);
        assert_eq!(s.numerator(), &h1.algebra().one());
        let h2 = QuantumGL::new(2, Deformation::GENERIC).unwrap();
        let a = h2.algebra();
        let one = GLElement::from_poly(a.one());
        assert_eq!(h2.antipode(&one).unwrap(), one);
        let mut sum11 = GLElement::zero(a);
        let mut sum12 = GLElement::zero(a);
        for l in 1..=2 {
            let s1l = h2.antipode(&GLElement::from_poly(a.x(1, l).unwrap())).unwrap();
            sum11 = sum11.add(&s1l.mul(&GLElement::from_poly(a.x(l, 1).unwrap())).unwrap()).unwrap();
            sum12 = sum12.add(&s1l.mul(&GLElement::from_poly(a.x(l, 2).unwrap())).unwrap()).unwrap();
        }
        assert_eq!(sum11, one);
        assert!(sum12.is_zero());
        let det_inv = GLElement::det_inverse(a).unwrap();
        assert_eq!(h2.antipode(&det_inv).unwrap(), GLElement::from_poly(h2.det().clone()));
        assert_eq!(h2.antipode(&GLElement::from_poly(h2.det().clone())).unwrap(), det_inv);
    }

    #[test]
    fn sl_membership() {
        let a = Algebra::quantum_matrix(2, 2, Deformation::GENERIC).unwrap();
        let dm1 = quantum_det(&a).unwrap() - a.one();
        assert!(sl_ideal_member(&dm1, 2).unwrap());
        let times = dm1.mul(&a.x(1, 2).unwrap()).unwrap();
        assert!(sl_ideal_member(&times, 3).unwrap());
        assert!(!sl_ideal_member(&a.x(1, 1).unwrap(), 3).unwrap());
        assert!(!sl_ideal_member(&a.x(1, 1).unwrap(), 1).unwrap());
    }
}
