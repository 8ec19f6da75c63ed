//! Coactions as linear maps on graded components, and coinvariant solvers.
//!
//! * interior: `O_q(M_{m,t}) (x) O_q(M_{t,n})` under `O_q(GL_t)`, via
//!   `gamma(a (x) b) = sum S(a_1) b_{-1} (x) a_0 (x) b_0`;
//! * slr: `O_q(M_{n,r})` under `O_q(SL_r)`, via the right coaction `rho`;
//! * conjugation: `O_q(M_n)` under `O_q(GL_n)`, via `beta(u) = sum u_2 (x) S(u_1) u_3`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{LaurentMatrix, LaurentPoly};
use crate::qalgebra::{Algebra, AlgebraHom, Deformation, Monomial, NCPoly};
use crate::qhopf::{matrix_coproduct, quantum_det, quantum_minor, sl_ideal_contains_all, IndexSet, QuantumGL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoactionKind {
    Interior { m: usize, n: usize, t: usize },
    Slr { n: usize, r: usize },
    Conjugation { n: usize },
}

impl CoactionKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CoactionKind::Interior { m, n, t } => {
                if m == 0 || n == 0 || t == 0 {
                    return Err(Error::InvalidParams("m, n, t must be positive".into()));
                }
                if t > m.min(n) {
                    return Err(Error::InvalidParams(format!("need t <= min(m, n), got t = {t}")));
                }
            }
            CoactionKind::Slr { n, r } => {
                if r == 0 || r >= n {
                    return Err(Error::InvalidParams(format!("need 0 < r < n, got r = {r}, n = {n}")));
                }
            }
            CoactionKind::Conjugation { n } => {
                if n == 0 {
                    return Err(Error::InvalidParams("n must be positive".into()));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoactionKind::Interior { .. } => "interior",
            CoactionKind::Slr { .. } => "slr",
            CoactionKind::Conjugation { .. } => "conjugation",
        }
    }
}

impl fmt::Display for CoactionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoactionKind::Interior { m, n, t } => write!(f, "interior(m={m}, n={n}, t={t})"),
            CoactionKind::Slr { n, r } => write!(f, "slr(n={n}, r={r})"),
            CoactionKind::Conjugation { n } => write!(f, "conjugation(n={n})"),
        }
    }
}

/// `sum h (x) v` with `h` a hopf-side monomial times `det^power`, grouped by `(h, power)`.
#[derive(Clone, Debug)]
pub struct CoactionValue {
    pub degree: usize,
    pub terms: BTreeMap<(Monomial, i64), NCPoly>,
}

impl CoactionValue {
    /// Largest power of `det^-1` appearing.
    pub fn det_level(&self) -> i64 {
        self.terms.keys().map(|(_, p)| -p).max().unwrap_or(0).max(0)
    }
}

enum Structure {
    Interior {
        gl: QuantumGL,
        rho: AlgebraHom,
        lambda: AlgebraHom,
    },
    Slr {
        det: NCPoly,
        rho: AlgebraHom,
    },
    Conjugation {
        gl: QuantumGL,
        delta2: AlgebraHom,
    },
}

/// A coaction together with its carrier, the coacting algebra, and cached structure maps.
pub struct Coaction {
    kind: CoactionKind,
    carrier: Algebra,
    hopf: Algebra,
    value: Algebra,
    structure: Structure,
}

impl Coaction {
    pub fn new(kind: CoactionKind, deformation: Deformation) -> Result<Coaction> {
        kind.validate()?;
        match kind {
            CoactionKind::Interior { m, n, t } => {
                let left = Algebra::quantum_matrix(m, t, deformation)?;
                let right = Algebra::quantum_matrix(t, n, deformation)?;
                let gl = QuantumGL::new(t, deformation)?;
                let hopf = gl.algebra().clone();
                let carrier = Algebra::tensor(&left, &right);
                let rho = matrix_coproduct(&left, &left, &hopf)?;
                let lambda = matrix_coproduct(&right, &hopf, &right)?;
                Ok(Coaction {
                    kind,
                    value: Algebra::tensor(&hopf, &carrier),
                    carrier,
                    hopf,
                    structure: Structure::Interior { gl, rho, lambda },
                })
            }
            CoactionKind::Slr { n, r } => {
                let carrier = Algebra::quantum_matrix(n, r, deformation)?;
                let hopf = Algebra::quantum_matrix(r, r, deformation)?;
                let rho = matrix_coproduct(&carrier, &carrier, &hopf)?;
                Ok(Coaction {
                    kind,
                    value: Algebra::tensor(&carrier, &hopf),
                    structure: Structure::Slr {
                        det: quantum_det(&hopf)?,
                        rho,
                    },
                    carrier,
                    hopf,
                })
            }
            CoactionKind::Conjugation { n } => {
                let gl = QuantumGL::new(n, deformation)?;
                let carrier = gl.algebra().clone();
                let pair = gl.pair_algebra().clone();
                let triple = Algebra::tensor(&carrier, &pair);
                let mut images = Vec::with_capacity(n * n);
                for i in 1..=n {
                    for j in 1..=n {
                        let mut img = triple.zero();
                        for l in 1..=n {
                            for k in 1..=n {
                                let inner = carrier.x(l, k)?.tensor(&carrier.x(k, j)?, &pair)?;
                                img = &img + &carrier.x(i, l)?.tensor(&inner, &triple)?;
                            }
                        }
                        images.push(img);
                    }
                }
                let delta2 = AlgebraHom::new(&carrier, &triple, images, 3)?;
                Ok(Coaction {
                    kind,
                    value: Algebra::tensor(&carrier, &carrier),
                    hopf: carrier.clone(),
                    carrier,
                    structure: Structure::Conjugation { gl, delta2 },
                })
            }
        }
    }

    pub fn kind(&self) -> CoactionKind {
        self.kind
    }

    pub fn carrier(&self) -> &Algebra {
        &self.carrier
    }

    /// The polynomial part of the coacting algebra (`O_q(M_t)` for `GL_t` and `SL_r`).
    pub fn hopf(&self) -> &Algebra {
        &self.hopf
    }

    /// Where det-cleared values live: `hopf (x) carrier` for interior,
    /// `carrier (x) hopf` otherwise.
    pub fn value_algebra(&self) -> &Algebra {
        &self.value
    }

    pub fn deformation(&self) -> Deformation {
        self.carrier.deformation()
    }

    pub fn det(&self) -> NCPoly {
        match &self.structure {
            Structure::Interior { gl, .. } | Structure::Conjugation { gl, .. } => gl.det().clone(),
            Structure::Slr { det, .. } => det.clone(),
        }
    }

    fn coact_monomial(&self, mono: &Monomial, c: &LaurentPoly, out: &mut BTreeMap<(Monomial, i64), NCPoly>) {
        let mut push = |h: &Monomial, p: i64, v: Monomial, coef: LaurentPoly| {
            out.entry((h.clone(), p))
                .or_insert_with(|| self.carrier.zero())
                .add_term(v, &coef);
        };
        match &self.structure {
            Structure::Interior { gl, rho, lambda } => {
                let (a, b) = mono.as_pair().expect("carrier monomial");
                let k = gl.algebra().monomial_degree(a) as i64;
                let ra = rho.apply_monomial(a);
                let lb = lambda.apply_monomial(b);
                for (ma, ca) in ra.terms() {
                    let (a0, a1) = ma.as_pair().unwrap();
                    let sa = gl.antipode_numerator(a1);
                    for (mb, cb) in lb.terms() {
                        let (bm, b0) = mb.as_pair().unwrap();
                        let bm = NCPoly::from_monomial(gl.algebra(), bm.clone(), LaurentPoly::one());
                        let h = sa.mul(&bm).expect("same algebra");
                        let cab = &(c * ca) * cb;
                        let v = Monomial::pair(a0.clone(), b0.clone());
                        for (hm, hc) in h.terms() {
                            push(hm, -k, v.clone(), &cab * hc);
                        }
                    }
                }
            }
            Structure::Slr { rho, .. } => {
                for (m, cm) in rho.apply_monomial(mono).terms() {
                    let (v, h) = m.as_pair().unwrap();
                    push(h, 0, v.clone(), c * cm);
                }
            }
            Structure::Conjugation { gl, delta2 } => {
                let k = self.carrier.monomial_degree(mono) as i64;
                let d2 = delta2.apply_monomial(mono);
                let mut s_cache: BTreeMap<Monomial, NCPoly> = BTreeMap::new();
                for (m, cm) in d2.terms() {
                    let (u1, rest) = m.as_pair().unwrap();
                    let (u2, u3) = rest.as_pair().unwrap();
                    let su1 = s_cache
                        .entry(u1.clone())
                        .or_insert_with(|| (*gl.antipode_numerator(u1)).clone());
                    let u3p = NCPoly::from_monomial(gl.algebra(), u3.clone(), LaurentPoly::one());
                    let h = su1.mul(&u3p).expect("same algebra");
                    let coef = c * cm;
                    for (hm, hc) in h.terms() {
                        push(hm, -k, u2.clone(), &coef * hc);
                    }
                }
            }
        }
    }

    /// The coaction applied to a homogeneous carrier element of degree `d`.
    pub fn coact(&self, v: &NCPoly, d: usize) -> Result<CoactionValue> {
        self.check_carrier(v, d)?;
        let mut terms = BTreeMap::new();
        for (m, c) in v.terms() {
            self.coact_monomial(m, c, &mut terms);
        }
        terms.retain(|_, x: &mut NCPoly| !x.is_zero());
        Ok(CoactionValue { degree: d, terms })
    }

    fn check_carrier(&self, v: &NCPoly, d: usize) -> Result<()> {
        if v.algebra() != &self.carrier {
            return Err(Error::AlgebraMismatch(
                format!("{:?}", v.algebra()),
                format!("{:?}", self.carrier),
            ));
        }
        if !v.is_homogeneous_of(d) {
            return Err(Error::NotHomogeneous(d));
        }
        Ok(())
    }

    /// Combines a hopf-side element and a carrier element in the value algebra.
    fn join(&self, h: &NCPoly, v: &NCPoly) -> NCPoly {
        match self.kind {
            CoactionKind::Interior { .. } => h.tensor(v, &self.value),
            _ => v.tensor(h, &self.value),
        }
        .expect("factor algebras match")
    }

    /// The value multiplied through by `det^level`, as an element of the value algebra.
    pub fn clear(&self, value: &CoactionValue, level: i64) -> Result<NCPoly> {
        if level < value.det_level() {
            return Err(Error::InvalidParams(format!(
                "clearing level {level} below the det power {}",
                value.det_level()
            )));
        }
        let det = self.det();
        let mut powers: BTreeMap<i64, NCPoly> = BTreeMap::new();
        let mut out = self.value.zero();
        for ((h, p), v) in &value.terms {
            let e = level + p;
            let dp = powers.entry(e).or_insert_with(|| det.pow(e as u32)).clone();
            let hm = NCPoly::from_monomial(&self.hopf, h.clone(), LaurentPoly::one());
            out = &out + &self.join(&hm.mul(&dp)?, v);
        }
        Ok(out)
    }

    /// `det^level (x) v` (or `v (x) det^level`): the cleared form of the trivial coaction.
    pub fn unit_value(&self, v: &NCPoly, level: i64) -> NCPoly {
        self.join(&self.det().pow(level as u32), v)
    }

    /// Cleared defect `coact(v) - 1 (x) v` of a homogeneous element. For
    /// `SL_r` the unit is `det^(d/r)`, which agrees with `1` modulo `det - 1`
    /// and is the only homogeneous representative; nothing is subtracted when
    /// `r` does not divide `d`.
    pub fn defect(&self, v: &NCPoly, d: usize) -> Result<NCPoly> {
        let value = self.coact(v, d)?;
        match self.kind {
            CoactionKind::Slr { r, .. } => {
                let cleared = self.clear(&value, 0)?;
                if d % r == 0 {
                    Ok(&cleared - &self.unit_value(v, (d / r) as i64))
                } else {
                    Ok(cleared)
                }
            }
            _ => {
                let level = value.det_level().max(self.min_level(v));
                Ok(&self.clear(&value, level)? - &self.unit_value(v, level))
            }
        }
    }

    /// Smallest clearing level that makes the unit term polynomial as well.
    fn min_level(&self, v: &NCPoly) -> i64 {
        match self.kind {
            CoactionKind::Interior { .. } => v
                .terms()
                .map(|(m, _)| {
                    let (a, _) = m.as_pair().unwrap();
                    self.carrier.tensor_factors().unwrap().0.monomial_degree(a) as i64
                })
                .max()
                .unwrap_or(0),
            CoactionKind::Conjugation { .. } => v.degrees().last().copied().unwrap_or(0) as i64,
            CoactionKind::Slr { .. } => 0,
        }
    }

    pub fn is_coinvariant(&self, v: &NCPoly, d: usize) -> Result<bool> {
        Ok(self.defect(v, d)?.is_zero())
    }

    /// Matrix of the cleared defect map on the degree-`d` carrier component,
    /// one column per basis monomial. Each column is cleared at its own det
    /// level; columns differ from a common clearing by powers of `det`, which
    /// changes neither rank nor kernel.
    pub fn psi_matrix(&self, d: usize) -> Result<LaurentMatrix> {
        if let Structure::Conjugation { gl, delta2 } = &self.structure {
            return Ok(columns_to_matrix(&self.conjugation_columns(gl, delta2, d)?));
        }
        let basis = self.carrier.graded_basis(d);
        let columns: Vec<NCPoly> = basis
            .monomials()
            .par_iter()
            .map(|m| {
                let v = NCPoly::from_monomial(&self.carrier, m.clone(), LaurentPoly::one());
                self.defect(&v, d)
            })
            .collect::<Result<_>>()?;
        Ok(columns_to_matrix(&columns))
    }

    /// Defect columns for conjugation, computing each `S(u_1) u_3` once for
    /// all basis monomials that share the pair `(u_1, u_3)`.
    fn conjugation_columns(&self, gl: &QuantumGL, delta2: &AlgebraHom, d: usize) -> Result<Vec<NCPoly>> {
        type Uses = Vec<(usize, Monomial, LaurentPoly)>;
        let basis = self.carrier.graded_basis(d);
        let mut jobs: BTreeMap<(Monomial, Monomial), Uses> = BTreeMap::new();
        for (col, mono) in basis.monomials().iter().enumerate() {
            for (m, c) in delta2.apply_monomial(mono).terms() {
                let (u1, rest) = m.as_pair().expect("triple");
                let (u2, u3) = rest.as_pair().expect("triple");
                jobs.entry((u1.clone(), u3.clone()))
                    .or_default()
                    .push((col, u2.clone(), c.clone()));
            }
        }
        let jobs: Vec<_> = jobs.into_iter().collect();
        let zero = || vec![self.value.zero(); basis.len()];
        let mut columns = jobs
            .par_iter()
            .fold(zero, |mut acc, ((u1, u3), uses)| {
                let u3 = NCPoly::from_monomial(gl.algebra(), u3.clone(), LaurentPoly::one());
                let h = gl.antipode_numerator(u1).mul(&u3).expect("same algebra");
                for (col, u2, c) in uses {
                    for (hm, hc) in h.terms() {
                        acc[*col].add_term(Monomial::pair(u2.clone(), hm.clone()), &(c * hc));
                    }
                }
                acc
            })
            .reduce(zero, |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = &*x + &y;
                }
                a
            });
        for (col, mono) in basis.monomials().iter().enumerate() {
            let v = NCPoly::from_monomial(&self.carrier, mono.clone(), LaurentPoly::one());
            columns[col] = &columns[col] - &self.unit_value(&v, d as i64);
        }
        Ok(columns)
    }

    /// Basis of the degree-`d` coinvariants, as coordinate vectors against `graded_basis(d)`.
    pub fn coinvariants_basis(&self, d: usize) -> Result<Vec<Vec<LaurentPoly>>> {
        Ok(self.psi_matrix(d)?.kernel_basis())
    }

    /// For `SL_r`: confirms with the bounded-degree ideal test that every
    /// `rho(v) - v (x) 1` lies in `carrier (x) (det - 1)`.
    pub fn sl_membership_confirms(&self, vectors: &[Vec<LaurentPoly>], d: usize) -> Result<bool> {
        let CoactionKind::Slr { .. } = self.kind else {
            return Err(Error::InvalidParams("membership check applies to slr only".into()));
        };
        let mut hs = Vec::new();
        for vec in vectors {
            let v = NCPoly::from_coordinates(&self.carrier, d, vec)?;
            let value = self.coact(&v, d)?;
            let diff = &self.clear(&value, 0)? - &v.tensor(&self.hopf.one(), &self.value)?;
            hs.extend(diff.split_by_left()?.into_values());
        }
        sl_ideal_contains_all(&hs, d)
    }
}

/// Sparse matrix whose columns are elements of one algebra, rows indexed by
/// the sorted set of monomials that occur.
pub fn columns_to_matrix(columns: &[NCPoly]) -> LaurentMatrix {
    let keys: BTreeSet<&Monomial> = columns.iter().flat_map(|c| c.terms().map(|(m, _)| m)).collect();
    let index: BTreeMap<&Monomial, usize> = keys.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
    let cols = columns
        .iter()
        .map(|c| c.terms().map(|(m, x)| (index[m], x.clone())).collect())
        .collect();
    LaurentMatrix::from_columns(index.len(), cols)
}

/// `rho(a)` for `a` in `O_q(M_{m,t})`, valued in `O_q(M_{m,t}) (x) O_q(M_t)`.
pub fn rho_right(a: &NCPoly) -> Result<NCPoly> {
    let (_, t) = a
        .algebra()
        .matrix_shape()
        .ok_or_else(|| Error::InvalidParams("rho needs a quantum matrix algebra".into()))?;
    let hopf = Algebra::quantum_matrix(t, t, a.algebra().deformation())?;
    matrix_coproduct(a.algebra(), a.algebra(), &hopf)?.apply(a)
}

/// `lambda(b)` for `b` in `O_q(M_{t,n})`, valued in `O_q(M_t) (x) O_q(M_{t,n})`.
pub fn lambda_left(b: &NCPoly) -> Result<NCPoly> {
    let (t, _) = b
        .algebra()
        .matrix_shape()
        .ok_or_else(|| Error::InvalidParams("lambda needs a quantum matrix algebra".into()))?;
    let hopf = Algebra::quantum_matrix(t, t, b.algebra().deformation())?;
    matrix_coproduct(b.algebra(), &hopf, b.algebra())?.apply(b)
}

fn interior_kind(v: &NCPoly) -> Result<CoactionKind> {
    let bad = || Error::InvalidParams("expected an element of O_q(M_{m,t}) (x) O_q(M_{t,n})".into());
    let (l, r) = v.algebra().tensor_factors().ok_or_else(bad)?;
    let (m, t) = l.matrix_shape().ok_or_else(bad)?;
    let (t2, n) = r.matrix_shape().ok_or_else(bad)?;
    if t != t2 {
        return Err(bad());
    }
    Ok(CoactionKind::Interior { m, n, t })
}

/// `gamma(v)` for a homogeneous element of the interior carrier.
pub fn gamma_interior(v: &NCPoly, d: usize) -> Result<CoactionValue> {
    let c = Coaction::new(interior_kind(v)?, v.algebra().deformation())?;
    c.coact(&rebase(v, c.carrier()), d)
}

/// `beta(u)` for a homogeneous element of `O_q(M_n)`.
pub fn beta_conjugation(u: &NCPoly, d: usize) -> Result<CoactionValue> {
    let (n, n2) = u
        .algebra()
        .matrix_shape()
        .ok_or_else(|| Error::InvalidParams("beta needs O_q(M_n)".into()))?;
    if n != n2 {
        return Err(Error::InvalidParams("beta needs a square algebra".into()));
    }
    let c = Coaction::new(CoactionKind::Conjugation { n }, u.algebra().deformation())?;
    c.coact(&rebase(u, c.carrier()), d)
}

/// The same element viewed in an equal algebra object.
fn rebase(v: &NCPoly, target: &Algebra) -> NCPoly {
    NCPoly::from_terms(target, v.terms().map(|(m, c)| (m.clone(), c.clone())))
}

/// `tau_i = sum_{|I| = i} q^(-2 w(I)) [I|I]`, `w(I)` the sum of the entries.
pub fn tau(algebra: &Algebra, i: usize) -> Result<NCPoly> {
    let n = match algebra.matrix_shape() {
        Some((r, c)) if r == c => r,
        _ => return Err(Error::InvalidParams("tau needs a square quantum matrix algebra".into())),
    };
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("tau_{i} for n = {n}")));
    }
    let def = algebra.deformation();
    let mut out = algebra.zero();
    for set in itertools::Itertools::combinations(1..=n, i) {
        let w: usize = set.iter().sum();
        let minor = quantum_minor(algebra, &IndexSet::principal(set)?)?;
        out = &out + &minor.scale(&def.q_pow(-2 * w as i32));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn interior_t1_examples() {
        let c = Coaction::new(CoactionKind::Interior { m: 2, n: 2, t: 1 }, Deformation::GENERIC).unwrap();
        let car = c.carrier();
        let (l, r) = car.tensor_factors().unwrap();
        let one = car.one();
        assert!(c.is_coinvariant(&one, 0).unwrap());
        let v = l.x(1, 1).unwrap().tensor(&r.x(1, 1).unwrap(), car).unwrap();
        let val = c.coact(&v, 2).unwrap();
        assert_eq!(val.det_level(), 1);
        assert!(c.is_coinvariant(&v, 2).unwrap());
        let w = l.x(1, 1).unwrap().tensor(&r.one(), car).unwrap();
        let val = c.coact(&w, 1).unwrap();
        assert_eq!(val.terms.len(), 1);
        let ((h, p), x) = val.terms.iter().next().unwrap();
        assert_eq!((h, *p), (&Monomial::Word(vec![]), -1));
        assert_eq!(x, &w);
        assert!(!c.is_coinvariant(&w, 1).unwrap());
        assert!(c.coinvariants_basis(1).unwrap().is_empty());
        assert_eq!(c.coinvariants_basis(2).unwrap().len(), 4);
        assert_eq!(c.coinvariants_basis(0).unwrap().len(), 1);
    }

    #[test]
    fn tau_examples() {
        let a = Algebra::quantum_matrix(2, 2, Deformation::GENERIC).unwrap();
        let t1 = tau(&a, 1).unwrap();
        let expect = a.x(1, 1).unwrap().scale(&lp("q^-2")) + a.x(2, 2).unwrap().scale(&lp("q^-4"));
        assert_eq!(t1, expect);
        let t2 = tau(&a, 2).unwrap();
        let det = quantum_det(&a).unwrap();
        assert_eq!(t2, det.scale(&lp("q^-6")));
        assert!(t1.commutator(&t2).unwrap().is_zero());
        assert!(tau(&a, 3).is_err());
    }

    #[test]
    fn beta_examples() {
        let c1 = Coaction::new(CoactionKind::Conjugation { n: 1 }, Deformation::GENERIC).unwrap();
        let x = c1.carrier().x(1, 1).unwrap();
        let val = c1.coact(&x, 1).unwrap();
        let cleared = c1.clear(&val, val.det_level()).unwrap();
        assert_eq!(cleared, c1.unit_value(&x, 1));
        let c2 = Coaction::new(CoactionKind::Conjugation { n: 2 }, Deformation::GENERIC).unwrap();
        for i in 1..=2 {
            let t = tau(c2.carrier(), i).unwrap();
            assert!(c2.is_coinvariant(&t, i).unwrap(), "tau_{i}");
        }
        assert!(!c2.is_coinvariant(&c2.carrier().x(1, 1).unwrap(), 1).unwrap());
        assert_eq!(c2.coinvariants_basis(1).unwrap().len(), 1);
        assert!(c2.is_coinvariant(&c2.carrier().one(), 0).unwrap());
    }

    #[test]
    fn slr_examples() {
        let c = Coaction::new(CoactionKind::Slr { n: 3, r: 2 }, Deformation::GENERIC).unwrap();
        let a = c.carrier();
        let d12 = quantum_minor(a, &IndexSet::new(vec![1, 2], vec![1, 2]).unwrap()).unwrap();
        assert!(c.is_coinvariant(&d12, 2).unwrap());
        assert!(!c.is_coinvariant(&a.x(1, 1).unwrap(), 1).unwrap());
        let basis = c.coinvariants_basis(2).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(c.sl_membership_confirms(&basis, 2).unwrap());
        let x = a.x(1, 1).unwrap().express_in_basis(1).unwrap();
        assert!(!c.sl_membership_confirms(&[x], 1).unwrap());
        assert!(c.coinvariants_basis(1).unwrap().is_empty());
    }

    #[test]
    fn rho_examples() {
        let a = Algebra::quantum_matrix(2, 1, Deformation::GENERIC).unwrap();
        let r = rho_right(&a.one()).unwrap();
        assert_eq!(r, r.algebra().one());
        let x = rho_right(&a.x(1, 1).unwrap()).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.to_string(), "(1*q^0)*(X[1,1]^1)(x)(X[1,1]^1)");
        let b = Algebra::quantum_matrix(2, 2, Deformation::GENERIC).unwrap();
        let p = b.x(1, 1).unwrap().mul(&b.x(1, 2).unwrap()).unwrap();
        let rp = rho_right(&p).unwrap();
        let expect = rho_right(&b.x(1, 1).unwrap()).unwrap().mul(&rho_right(&b.x(1, 2).unwrap()).unwrap()).unwrap();
        assert_eq!(rp, expect);
        assert!(lambda_left(&b.x(2, 1).unwrap()).unwrap().len() == 2);
    }

    #[test]
    fn batched_conjugation_columns_match_defects() {
        let c = Coaction::new(CoactionKind::Conjugation { n: 2 }, Deformation::GENERIC).unwrap();
        for d in 0..=3 {
            let cols: Vec<NCPoly> = c
                .carrier()
                .graded_basis(d)
                .monomials()
                .iter()
                .map(|m| {
                    let v = NCPoly::from_monomial(c.carrier(), m.clone(), LaurentPoly::one());
                    c.defect(&v, d).unwrap()
                })
                .collect();
            assert_eq!(c.psi_matrix(d).unwrap(), columns_to_matrix(&cols));
        }
    }
}
