//! Quantum matrix algebras `O_q(M_{m,n})` in PBW normal form, graded free
//! algebras, and their tensor products.

mod hom;
mod poly;
mod rules;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::LaurentPoly;
use rules::MatrixRules;

pub use hom::AlgebraHom;
pub use poly::{BasisIndex, NCPoly};

/// Generator of a graded free algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeGenerator {
    pub label: String,
    pub degree: usize,
}

impl FreeGenerator {
    pub fn new(label: impl Into<String>, degree: usize) -> Self {
        FreeGenerator {
            label: label.into(),
            degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraSpec {
    QuantumMatrix { rows: usize, cols: usize },
    Free { generators: Vec<FreeGenerator> },
    Tensor(Box<AlgebraSpec>, Box<AlgebraSpec>),
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::QuantumMatrix { rows, cols } => write!(f, "Oq(M_{rows},{cols})"),
            AlgebraSpec::Free { generators } => {
                let gens: Vec<String> = generators
                    .iter()
                    .map(|g| format!("{}:{}", g.label, g.degree))
                    .collect();
                write!(f, "Free<{}>", gens.join(","))
            }
            AlgebraSpec::Tensor(a, b) => write!(f, "({a} (x) {b})"),
        }
    }
}

/// Deliberate corruptions used as negative controls for the property suites.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fault {
    /// Row relation uses `q` where `q^-1` belongs.
    RowRelationInverted,
    /// Sign of the `(q - q^-1)` correction term flipped.
    CrossTermSign,
    /// Antipode uses `(-q)^(j-i)` instead of `(-q)^(i-j)`.
    AntipodeSign,
    /// Minors use `q^l(pi)` in place of `(-q)^l(pi)`.
    MinorSign,
}

impl Fault {
    pub const ALL: [Fault; 4] = [
        Fault::RowRelationInverted,
        Fault::CrossTermSign,
        Fault::AntipodeSign,
        Fault::MinorSign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::RowRelationInverted => "row-relation",
            Fault::CrossTermSign => "cross-term",
            Fault::AntipodeSign => "antipode-sign",
            Fault::MinorSign => "minor-sign",
        }
    }

    pub fn from_name(s: &str) -> Option<Fault> {
        Fault::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Value of the deformation parameter: generic `q`, or the classical point `q = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Deformation {
    pub classical: bool,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Deformation {
    pub const GENERIC: Deformation = Deformation {
        classical: false,
        fault: None,
    };
    pub const CLASSICAL: Deformation = Deformation {
        classical: true,
        fault: None,
    };

    #[doc(hidden)]
    pub fn with_fault(self, fault: Option<Fault>) -> Self {
        Deformation { fault, ..self }
    }

    /// `q^e`, or `1` classically.
    pub fn q_pow(&self, e: i32) -> LaurentPoly {
        if self.classical {
            LaurentPoly::one()
        } else {
            LaurentPoly::q_pow(e)
        }
    }

    /// `(-q)^e`, or `(-1)^e` classically.
    pub fn minus_q_pow(&self, e: i32) -> LaurentPoly {
        let p = self.q_pow(e);
        if e.rem_euclid(2) == 1 {
            -p
        } else {
            p
        }
    }
}

/// A normal monomial. Quantum-matrix monomials are non-decreasing words of
/// row-major generator numbers; free-algebra monomials are arbitrary words;
/// tensor monomials are pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monomial {
    Word(Vec<u16>),
    Pair(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    pub fn pair(a: Monomial, b: Monomial) -> Monomial {
        Monomial::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_word(&self) -> Option<&[u16]> {
        match self {
            Monomial::Word(w) => Some(w),
            Monomial::Pair(..) => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Monomial, &Monomial)> {
        match self {
            Monomial::Pair(a, b) => Some((a, b)),
            Monomial::Word(_) => None,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Monomial::Word(a), Monomial::Word(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Monomial::Pair(a1, b1), Monomial::Pair(a2, b2)) => a1.cmp(a2).then_with(|| b1.cmp(b2)),
            (Monomial::Word(_), Monomial::Pair(..)) => Ordering::Less,
            (Monomial::Pair(..), Monomial::Word(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) enum Node {
    Matrix(MatrixRules),
    Free(Vec<FreeGenerator>),
    Tensor(Algebra, Algebra),
}

pub(crate) struct Inner {
    spec: AlgebraSpec,
    deformation: Deformation,
    node: Node,
    bases: DashMap<usize, Arc<BasisIndex>>,
}

/// A concrete algebra: its spec, the deformation point, and rewriting caches.
/// Cloning is cheap and shares the caches.
#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.spec == other.0.spec && self.0.deformation == other.0.deformation)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)?;
        if self.0.deformation.classical {
            write!(f, "[q=1]")?;
        }
        Ok(())
    }
}

impl Algebra {
    pub fn new(spec: &AlgebraSpec, deformation: Deformation) -> Result<Algebra> {
        match spec {
            AlgebraSpec::QuantumMatrix { rows, cols } => Self::quantum_matrix(*rows, *cols, deformation),
            AlgebraSpec::Free { generators } => Self::free(generators.clone(), deformation),
            AlgebraSpec::Tensor(a, b) => Ok(Self::tensor(
                &Self::new(a, deformation)?,
                &Self::new(b, deformation)?,
            )),
        }
    }

    pub fn quantum_matrix(rows: usize, cols: usize, deformation: Deformation) -> Result<Algebra> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParams(format!(
                "quantum matrix size must be positive, got {rows}x{cols}"
            )));
        }
        if rows * cols > u16::MAX as usize {
            return Err(Error::InvalidParams("too many generators".into()));
        }
        Ok(Algebra(Arc::new(Inner {
            spec: AlgebraSpec::QuantumMatrix { rows, cols },
            deformation,
            node: Node::Matrix(MatrixRules::new(rows, cols, deformation)),
            bases: DashMap::new(),
        })))
    }

    pub fn free(generators: Vec<FreeGenerator>, deformation: Deformation) -> Result<Algebra> {
        if let Some(g) = generators.iter().find(|g| g.degree == 0) {
            return Err(Error::InvalidParams(format!(
                "free generator {} must have positive degree",
                g.label
            )));
        }
        if generators.iter().map(|g| &g.label).duplicates().next().is_some() {
            return Err(Error::InvalidParams("duplicate free generator label".into()));
        }
        Ok(Algebra(Arc::new(Inner {
            spec: AlgebraSpec::Free {
                generators: generators.clone(),
            },
            deformation,
            node: Node::Free(generators),
            bases: DashMap::new(),
        })))
    }

    pub fn tensor(left: &Algebra, right: &Algebra) -> Algebra {
        Algebra(Arc::new(Inner {
            spec: AlgebraSpec::Tensor(Box::new(left.spec().clone()), Box::new(right.spec().clone())),
            deformation: left.deformation(),
            node: Node::Tensor(left.clone(), right.clone()),
            bases: DashMap::new(),
        }))
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.0.spec
    }

    pub fn deformation(&self) -> Deformation {
        self.0.deformation
    }

    pub(crate) fn node(&self) -> &Node {
        &self.0.node
    }

    pub(crate) fn rules(&self) -> Option<&MatrixRules> {
        match &self.0.node {
            Node::Matrix(r) => Some(r),
            _ => None,
        }
    }

    /// `(rows, cols)` for a quantum matrix algebra.
    pub fn matrix_shape(&self) -> Option<(usize, usize)> {
        self.rules().map(|r| (r.rows, r.cols))
    }

    pub fn tensor_factors(&self) -> Option<(&Algebra, &Algebra)> {
        match &self.0.node {
            Node::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn generator_count(&self) -> usize {
        match &self.0.node {
            Node::Matrix(r) => r.rows * r.cols,
            Node::Free(g) => g.len(),
            Node::Tensor(a, b) => a.generator_count() + b.generator_count(),
        }
    }

    pub fn generator_degrees(&self) -> Vec<usize> {
        match &self.0.node {
            Node::Matrix(r) => vec![1; r.rows * r.cols],
            Node::Free(g) => g.iter().map(|g| g.degree).collect(),
            Node::Tensor(a, b) => {
                let mut d = a.generator_degrees();
                d.extend(b.generator_degrees());
                d
            }
        }
    }

    pub fn one_monomial(&self) -> Monomial {
        match &self.0.node {
            Node::Matrix(_) | Node::Free(_) => Monomial::Word(Vec::new()),
            Node::Tensor(a, b) => Monomial::pair(a.one_monomial(), b.one_monomial()),
        }
    }

    /// Generators in order: row-major for quantum matrices, listed order for
    /// free algebras, left factor then right factor for tensors.
    pub fn generators(&self) -> Vec<NCPoly> {
        (0..self.generator_count()).map(|k| self.generator(k)).collect()
    }

    pub fn generator(&self, k: usize) -> NCPoly {
        NCPoly::from_monomial(self, self.generator_monomial(k), LaurentPoly::one())
    }

    fn generator_monomial(&self, k: usize) -> Monomial {
        match &self.0.node {
            Node::Matrix(_) | Node::Free(_) => Monomial::Word(vec![k as u16]),
            Node::Tensor(a, b) => {
                let na = a.generator_count();
                if k < na {
                    Monomial::pair(a.generator_monomial(k), b.one_monomial())
                } else {
                    Monomial::pair(a.one_monomial(), b.generator_monomial(k - na))
                }
            }
        }
    }

    /// The quantum matrix generator `X[i,j]`, 1-based.
    pub fn x(&self, i: usize, j: usize) -> Result<NCPoly> {
        let r = self
            .rules()
            .ok_or_else(|| Error::InvalidParams(format!("{:?} is not a quantum matrix algebra", self)))?;
        if i == 0 || j == 0 || i > r.rows || j > r.cols {
            return Err(Error::IndexOutOfRange(format!(
                "X[{i},{j}] in {}x{}",
                r.rows, r.cols
            )));
        }
        Ok(self.generator((i - 1) * r.cols + (j - 1)))
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::from_monomial(self, self.one_monomial(), LaurentPoly::one())
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly::zero(self)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        match (&self.0.node, m) {
            (Node::Matrix(_), Monomial::Word(w)) => w.len(),
            (Node::Free(g), Monomial::Word(w)) => w.iter().map(|&k| g[k as usize].degree).sum(),
            (Node::Tensor(a, b), Monomial::Pair(x, y)) => a.monomial_degree(x) + b.monomial_degree(y),
            _ => panic!("monomial does not belong to {:?}", self),
        }
    }

    pub(crate) fn owns(&self, m: &Monomial) -> bool {
        match (&self.0.node, m) {
            (Node::Matrix(r), Monomial::Word(w)) => {
                let n = (r.rows * r.cols) as u16;
                w.iter().all(|&g| g < n) && w.windows(2).all(|p| p[0] <= p[1])
            }
            (Node::Free(g), Monomial::Word(w)) => w.iter().all(|&k| (k as usize) < g.len()),
            (Node::Tensor(a, b), Monomial::Pair(x, y)) => a.owns(x) && b.owns(y),
            _ => false,
        }
    }

    /// Normal form of the product of two normal monomials.
    pub(crate) fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, LaurentPoly)> {
        match (&self.0.node, a, b) {
            (Node::Matrix(r), Monomial::Word(x), Monomial::Word(y)) => r
                .mul_words(x, y)
                .iter()
                .map(|(w, c)| (Monomial::Word(w.clone()), c.clone()))
                .collect(),
            (Node::Free(_), Monomial::Word(x), Monomial::Word(y)) => {
                let mut w = x.clone();
                w.extend_from_slice(y);
                vec![(Monomial::Word(w), LaurentPoly::one())]
            }
            (Node::Tensor(l, r), Monomial::Pair(a1, b1), Monomial::Pair(a2, b2)) => {
                let left = l.mul_monomials(a1, a2);
                let right = r.mul_monomials(b1, b2);
                let mut out = Vec::with_capacity(left.len() * right.len());
                for (ml, cl) in &left {
                    for (mr, cr) in &right {
                        out.push((Monomial::pair(ml.clone(), mr.clone()), cl * cr));
                    }
                }
                out
            }
            _ => panic!("monomials do not belong to {:?}", self),
        }
    }

    /// Number of basis monomials of degree `d`, saturating.
    pub fn dimension(&self, d: usize) -> u128 {
        dimension_of(self.spec(), d)
    }

    /// Deterministic ordered basis of the degree-`d` component.
    pub fn graded_basis(&self, d: usize) -> Arc<BasisIndex> {
        if let Some(b) = self.0.bases.get(&d) {
            return b.clone();
        }
        let mut monomials = self.enumerate_basis(d);
        monomials.sort();
        let basis = Arc::new(BasisIndex::new(monomials));
        self.0.bases.insert(d, basis.clone());
        basis
    }

    fn enumerate_basis(&self, d: usize) -> Vec<Monomial> {
        match &self.0.node {
            Node::Matrix(r) => (0..(r.rows * r.cols) as u16)
                .combinations_with_replacement(d)
                .map(Monomial::Word)
                .collect(),
            Node::Free(g) => {
                let mut out = Vec::new();
                let mut word = Vec::new();
                free_words(g, d, &mut word, &mut out);
                out
            }
            Node::Tensor(a, b) => {
                let mut out = Vec::new();
                for k in 0..=d {
                    let left = a.graded_basis(k);
                    let right = b.graded_basis(d - k);
                    for x in left.monomials() {
                        for y in right.monomials() {
                            out.push(Monomial::pair(x.clone(), y.clone()));
                        }
                    }
                }
                out
            }
        }
    }
}

fn free_words(g: &[FreeGenerator], remaining: usize, word: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial::Word(word.clone()));
        return;
    }
    for (k, gen) in g.iter().enumerate() {
        if gen.degree <= remaining {
            word.push(k as u16);
            free_words(g, remaining - gen.degree, word, out);
            word.pop();
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Dimension of the degree-`d` component of the algebra described by `spec`.
pub fn dimension_of(spec: &AlgebraSpec, d: usize) -> u128 {
    match spec {
        AlgebraSpec::QuantumMatrix { rows, cols } => {
            let n = (rows * cols) as u128;
            if d == 0 {
                1
            } else {
                binomial(n + d as u128 - 1, d as u128)
            }
        }
        AlgebraSpec::Free { generators } => {
            let mut counts = vec![0u128; d + 1];
            counts[0] = 1;
            for k in 1..=d {
                counts[k] = generators
                    .iter()
                    .filter(|g| g.degree <= k)
                    .fold(0u128, |acc, g| acc.saturating_add(counts[k - g.degree]));
            }
            counts[d]
        }
        AlgebraSpec::Tensor(a, b) => (0..=d).fold(0u128, |acc, k| {
            acc.saturating_add(dimension_of(a, k).saturating_mul(dimension_of(b, d - k)))
        }),
    }
}
