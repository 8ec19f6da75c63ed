//! Graded complexes `A_d -> B_d -> C_d` of free `Q[q, q^-1]`-modules, with
//! rank certificates of exactness at `q = 1`, generically, and at other
//! specializations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coact::Coaction;
use crate::error::{Error, Result};
use crate::exactnum::{EvalPoint, LaurentMatrix, LaurentPoly};
use crate::qalgebra::{Algebra, AlgebraHom, NCPoly};

/// One degree of a complex: `phi: A_d -> B_d`, `psi: B_d -> C_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub d: usize,
    pub phi: LaurentMatrix,
    pub psi: LaurentMatrix,
}

impl ComplexEntry {
    pub fn new(d: usize, phi: LaurentMatrix, psi: LaurentMatrix) -> Result<ComplexEntry> {
        if phi.rows() != psi.cols() {
            return Err(Error::DimensionMismatch {
                left: (psi.rows(), psi.cols()),
                right: (phi.rows(), phi.cols()),
            });
        }
        Ok(ComplexEntry { d, phi, psi })
    }

    pub fn dim_b(&self) -> usize {
        self.phi.rows()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedComplex {
    pub labels: [String; 3],
    pub entries: Vec<ComplexEntry>,
}

impl GradedComplex {
    pub fn new(labels: [&str; 3]) -> Self {
        GradedComplex {
            labels: labels.map(String::from),
            entries: Vec::new(),
        }
    }

    /// Inserts or replaces the entry for its degree, keeping degrees sorted.
    pub fn insert(&mut self, entry: ComplexEntry) {
        match self.entries.binary_search_by_key(&entry.d, |e| e.d) {
            Ok(k) => self.entries[k] = entry,
            Err(k) => self.entries.insert(k, entry),
        }
    }

    pub fn entry(&self, d: usize) -> Result<&ComplexEntry> {
        self.entries
            .binary_search_by_key(&d, |e| e.d)
            .map(|k| &self.entries[k])
            .map_err(|_| Error::MissingDegree(d))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.d).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<GradedComplex> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `psi * phi == 0` exactly in degree `d`.
pub fn check_complex(c: &GradedComplex, d: usize) -> Result<bool> {
    let e = c.entry(d)?;
    Ok(e.psi.mul(&e.phi)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessEntry {
    pub at: String,
    pub rank_phi: usize,
    pub rank_psi: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub degree: usize,
    pub dim_b: usize,
    pub entries: Vec<ExactnessEntry>,
}

impl ExactnessReport {
    pub fn at(&self, point: &EvalPoint) -> Option<&ExactnessEntry> {
        let key = point.to_string();
        self.entries.iter().find(|e| e.at == key)
    }

    /// Exactness at `q = 1` must imply generic exactness.
    pub fn implication_holds(&self) -> bool {
        let q1 = self.at(&EvalPoint::q1()).map(|e| e.exact);
        let generic = self.at(&EvalPoint::Generic).map(|e| e.exact);
        !(q1 == Some(true) && generic == Some(false))
    }
}

/// Rank certificate at one evaluation point: exact iff `rank phi + rank psi = dim B`.
pub fn exactness_entry(e: &ComplexEntry, at: &EvalPoint) -> Result<ExactnessEntry> {
    let rank_phi = e.phi.rank(at)?;
    let rank_psi = e.psi.rank(at)?;
    Ok(ExactnessEntry {
        at: at.to_string(),
        rank_phi,
        rank_psi,
        exact: rank_phi + rank_psi == e.dim_b(),
    })
}

pub fn exactness(c: &GradedComplex, d: usize, at: &EvalPoint) -> Result<ExactnessReport> {
    exactness_report(c, d, std::slice::from_ref(at))
}

pub fn exactness_report(c: &GradedComplex, d: usize, points: &[EvalPoint]) -> Result<ExactnessReport> {
    let e = c.entry(d)?;
    let entries = points.iter().map(|p| exactness_entry(e, p)).collect::<Result<_>>()?;
    Ok(ExactnessReport {
        degree: d,
        dim_b: e.dim_b(),
        entries,
    })
}

/// Matrix of `hom` from source degree `d` into target degree `multiplier * d`.
pub fn hom_matrix(hom: &AlgebraHom, d: usize) -> Result<LaurentMatrix> {
    let src = hom.source().graded_basis(d);
    let td = hom.multiplier() * d;
    let rows = hom.target().graded_basis(td).len();
    let cols = src
        .monomials()
        .par_iter()
        .map(|m| hom.apply_monomial(m).sparse_coordinates(td))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentMatrix::from_columns(rows, cols))
}

/// Spanning set `{m1 g m2}` of the degree-`d` part of the two-sided ideal
/// generated by homogeneous `gens`.
pub fn ideal_component(algebra: &Algebra, gens: &[NCPoly], d: usize) -> Result<Vec<NCPoly>> {
    let mut jobs = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.algebra() != algebra {
            return Err(Error::AlgebraMismatch(
                format!("{:?}", g.algebra()),
                format!("{:?}", algebra),
            ));
        }
        let Some(e) = g.homogeneous_degree() else {
            if g.is_zero() {
                continue;
            }
            return Err(Error::NotHomogeneous(d));
        };
        if e > d {
            continue;
        }
        for a in 0..=d - e {
            for left in algebra.graded_basis(a).monomials() {
                for right in algebra.graded_basis(d - e - a).monomials() {
                    jobs.push((k, left.clone(), right.clone()));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|(k, l, r)| {
            let l = NCPoly::from_monomial(algebra, l.clone(), LaurentPoly::one());
            let r = NCPoly::from_monomial(algebra, r.clone(), LaurentPoly::one());
            l.mul(&gens[*k])?.mul(&r)
        })
        .filter(|x| x.as_ref().map_or(true, |p| !p.is_zero()))
        .collect()
}

/// Matrix whose columns span the degree-`d` ideal component, in `graded_basis(d)` coordinates.
pub fn ideal_matrix(algebra: &Algebra, gens: &[NCPoly], d: usize) -> Result<LaurentMatrix> {
    let rows = algebra.graded_basis(d).len();
    let cols = ideal_component(algebra, gens, d)?
        .iter()
        .map(|p| p.sparse_coordinates(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentMatrix::from_columns(rows, cols))
}

/// `A -> B -> H (x) B` in carrier degree `d`: `phi` is `hom` from source
/// degree `d / multiplier` (empty when not divisible), `psi` the cleared
/// coaction defect.
pub fn build_fft_complex(c: &Coaction, hom: &AlgebraHom, d: usize) -> Result<ComplexEntry> {
    if hom.target() != c.carrier() {
        return Err(Error::AlgebraMismatch(
            format!("{:?}", hom.target()),
            format!("{:?}", c.carrier()),
        ));
    }
    let k = hom.multiplier();
    let phi = if d % k == 0 {
        hom_matrix(hom, d / k)?
    } else {
        LaurentMatrix::zeros(c.carrier().graded_basis(d).len(), 0)
    };
    ComplexEntry::new(d, phi, c.psi_matrix(d)?)
}

/// `I -> A -> B` in source degree `d`: `phi` spans the ideal component,
/// `psi` is `hom`.
pub fn build_sft_complex(gens: &[NCPoly], hom: &AlgebraHom, d: usize) -> Result<ComplexEntry> {
    ComplexEntry::new(d, ideal_matrix(hom.source(), gens, d)?, hom_matrix(hom, d)?)
}

/// Per-degree exactness reports at the given points, keyed by degree.
pub fn certify(c: &GradedComplex, points: &[EvalPoint]) -> Result<BTreeMap<usize, ExactnessReport>> {
    c.degrees()
        .into_iter()
        .map(|d| Ok((d, exactness_report(c, d, points)?)))
        .collect()
}
