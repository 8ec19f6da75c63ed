use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{LaurentPoly, Rational};

use super::{Algebra, Monomial};

/// Ordered basis of one graded component with reverse lookup.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl BasisIndex {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        BasisIndex { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, k: usize) -> &Monomial {
        &self.monomials[k]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A finite combination of normal monomials with Laurent polynomial coefficients.
#[derive(Clone)]
pub struct NCPoly {
    algebra: Algebra,
    terms: BTreeMap<Monomial, LaurentPoly>,
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.terms == other.terms
    }
}

impl Eq for NCPoly {}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl NCPoly {
    pub fn zero(algebra: &Algebra) -> Self {
        NCPoly {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(algebra: &Algebra, m: Monomial, c: LaurentPoly) -> Self {
        debug_assert!(algebra.owns(&m), "monomial outside {:?}", algebra);
        let mut p = NCPoly::zero(algebra);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums repeated monomials; panics if a monomial is not normal in `algebra`.
    pub fn from_terms<I>(algebra: &Algebra, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, LaurentPoly)>,
    {
        let mut p = NCPoly::zero(algebra);
        for (m, c) in terms {
            assert!(algebra.owns(&m), "monomial outside {:?}", algebra);
            p.add_term(m, &c);
        }
        p
    }

    pub fn constant(algebra: &Algebra, c: LaurentPoly) -> Self {
        NCPoly::from_monomial(algebra, algebra.one_monomial(), c)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &NCPoly) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(
                format!("{:?}", self.algebra),
                format!("{:?}", other.algebra),
            ))
        }
    }

    pub fn checked_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(&self.algebra);
        }
        NCPoly {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Product rewritten to normal form.
    pub fn mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_same(other)?;
        let mut acc: HashMap<Monomial, LaurentPoly> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let cab = ca * cb;
                for (m, c) in self.algebra.mul_monomials(a, b) {
                    let e = acc.entry(m).or_default();
                    *e += &(&cab * &c);
                }
            }
        }
        Ok(NCPoly {
            algebra: self.algebra.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        let mut out = self.algebra.one();
        for _ in 0..k {
            out = out.mul(self).expect("same algebra");
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &NCPoly) -> Result<NCPoly> {
        self.mul(other)?.checked_sub(&other.mul(self)?)
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| self.algebra.monomial_degree(m)).collect()
    }

    /// The common degree of all terms; `None` for zero or mixed-degree elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| self.algebra.monomial_degree(m) == d)
    }

    pub fn homogeneous_component(&self, d: usize) -> NCPoly {
        NCPoly {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.algebra.monomial_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates every coefficient at `q = lambda`, leaving constant coefficients.
    pub fn specialize(&self, lambda: &Rational) -> Result<NCPoly> {
        let mut out = NCPoly::zero(&self.algebra);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &LaurentPoly::constant(c.specialize(lambda)?));
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> NCPoly {
        let mut out = NCPoly::zero(&self.algebra);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Sparse coordinates against a graded basis.
    pub fn sparse_coordinates(&self, d: usize) -> Result<Vec<(usize, LaurentPoly)>> {
        if !self.is_homogeneous_of(d) {
            return Err(Error::NotHomogeneous(d));
        }
        let basis = self.algebra.graded_basis(d);
        let mut out: Vec<(usize, LaurentPoly)> = self
            .terms
            .iter()
            .map(|(m, c)| (basis.position(m).expect("normal monomial of degree d"), c.clone()))
            .collect();
        out.sort_by_key(|(k, _)| *k);
        Ok(out)
    }

    /// Dense coordinates relative to `graded_basis(d)`.
    pub fn express_in_basis(&self, d: usize) -> Result<Vec<LaurentPoly>> {
        let n = self.algebra.graded_basis(d).len();
        let mut v = vec![LaurentPoly::zero(); n];
        for (k, c) in self.sparse_coordinates(d)? {
            v[k] = c;
        }
        Ok(v)
    }

    pub fn from_coordinates(algebra: &Algebra, d: usize, coords: &[LaurentPoly]) -> Result<NCPoly> {
        let basis = algebra.graded_basis(d);
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                left: (basis.len(), 1),
                right: (coords.len(), 1),
            });
        }
        Ok(NCPoly::from_terms(
            algebra,
            basis.monomials().iter().cloned().zip(coords.iter().cloned()),
        ))
    }

    /// `self (x) right` inside `target`, which must be the tensor of the two algebras.
    pub fn tensor(&self, right: &NCPoly, target: &Algebra) -> Result<NCPoly> {
        let (l, r) = target
            .tensor_factors()
            .ok_or_else(|| Error::InvalidParams(format!("{:?} is not a tensor algebra", target)))?;
        if l != &self.algebra || r != &right.algebra {
            return Err(Error::AlgebraMismatch(
                format!("{:?} (x) {:?}", self.algebra, right.algebra),
                format!("{:?}", target),
            ));
        }
        let mut out = NCPoly::zero(target);
        for (a, ca) in &self.terms {
            for (b, cb) in &right.terms {
                out.add_term(Monomial::pair(a.clone(), b.clone()), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Terms of a tensor element grouped by right factor: `sum_k a_k (x) m_k`.
    pub fn split_by_right(&self) -> Result<BTreeMap<Monomial, NCPoly>> {
        let (l, _) = self
            .algebra
            .tensor_factors()
            .ok_or_else(|| Error::InvalidParams("not a tensor element".into()))?;
        let mut out: BTreeMap<Monomial, NCPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (a, b) = m.as_pair().expect("tensor monomial");
            out.entry(b.clone())
                .or_insert_with(|| NCPoly::zero(l))
                .add_term(a.clone(), c);
        }
        Ok(out)
    }

    /// Terms of a tensor element grouped by left factor: `sum_k m_k (x) b_k`.
    pub fn split_by_left(&self) -> Result<BTreeMap<Monomial, NCPoly>> {
        let (_, r) = self
            .algebra
            .tensor_factors()
            .ok_or_else(|| Error::InvalidParams("not a tensor element".into()))?;
        let mut out: BTreeMap<Monomial, NCPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (a, b) = m.as_pair().expect("tensor monomial");
            out.entry(a.clone())
                .or_insert_with(|| NCPoly::zero(r))
                .add_term(b.clone(), c);
        }
        Ok(out)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;

    /// Panics when the algebras differ; use `checked_add` to get an error instead.
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.checked_add(rhs).expect("addition across algebras")
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;

    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.checked_sub(rhs).expect("subtraction across algebras")
    }
}

impl Add for NCPoly {
    type Output = NCPoly;

    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;

    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;

    fn neg(self) -> NCPoly {
        self.scale(&LaurentPoly::from_int(-1))
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;

    fn neg(self) -> NCPoly {
        -&self
    }
}
