//! Exact property suites over the algebra core. Each suite returns
//! `(passed, total)` counts; random inputs come from a seeded ChaCha stream.

use std::collections::BTreeMap;

use qcoinv::exactnum::LaurentPoly;
use qcoinv::qalgebra::{Algebra, Deformation, Monomial, NCPoly};
use qcoinv::qhopf::{matrix_coproduct_into, quantum_det, GLElement, QuantumGL};
use qcoinv::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Suite {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, passed: 0, total: 0 }
    }

    fn record(&mut self, ok: bool) {
        self.total += 1;
        self.passed += usize::from(ok);
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

fn random_homogeneous(rng: &mut ChaCha8Rng, a: &Algebra, d: usize) -> NCPoly {
    let basis = a.graded_basis(d);
    let terms = rng.random_range(1..=3usize);
    let mut out = a.zero();
    for _ in 0..terms {
        let m = basis.get(rng.random_range(0..basis.len())).clone();
        let c = LaurentPoly::from_int(rng.random_range(-3i64..=3)).shift(rng.random_range(-2i32..=2));
        out = &out + &NCPoly::from_monomial(a, m, c);
    }
    out
}

/// `(ab)c = a(bc)` on random homogeneous triples of degree at most 3.
pub fn associativity(seed: u64, per_algebra: usize, def: Deformation) -> Result<Suite> {
    let mut s = Suite::new("associativity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in [2, 3] {
        let a = Algebra::quantum_matrix(t, t, def)?;
        for _ in 0..per_algebra {
            let [x, y, z] = [0; 3].map(|_| {
                let d = rng.random_range(1..=3);
                random_homogeneous(&mut rng, &a, d)
            });
            s.record(x.mul(&y)?.mul(&z)? == x.mul(&y.mul(&z)?)?);
        }
    }
    Ok(s)
}

/// Every length-3 generator word reduces to the same normal form along both bracketings.
pub fn confluence(def: Deformation) -> Result<Suite> {
    let mut s = Suite::new("confluence");
    for t in [2, 3] {
        let a = Algebra::quantum_matrix(t, t, def)?;
        let g = a.generators();
        for x in &g {
            for y in &g {
                for z in &g {
                    s.record(x.mul(y)?.mul(z)? == x.mul(&y.mul(z)?)?);
                }
            }
        }
    }
    Ok(s)
}

/// `det_q` commutes with every generator.
pub fn det_centrality(def: Deformation) -> Result<Suite> {
    let mut s = Suite::new("det_centrality");
    for t in [2, 3] {
        let a = Algebra::quantum_matrix(t, t, def)?;
        let det = quantum_det(&a)?;
        for x in a.generators() {
            s.record(det.commutator(&x)?.is_zero());
        }
    }
    Ok(s)
}

/// `mu(x) mu(y) = mu(xy)` on all generator pairs.
pub fn mu_homomorphism(def: Deformation) -> Result<Suite> {
    let mut s = Suite::new("mu_homomorphism");
    for (m, n, t) in [(2, 2, 1), (3, 3, 2)] {
        let source = Algebra::quantum_matrix(m, n, def)?;
        let target = Algebra::tensor(
            &Algebra::quantum_matrix(m, t, def)?,
            &Algebra::quantum_matrix(t, n, def)?,
        );
        let mu = matrix_coproduct_into(&source, &target)?;
        let g = source.generators();
        for x in &g {
            for y in &g {
                let lhs = mu.apply(x)?.mul(&mu.apply(y)?)?;
                s.record(lhs == mu.apply(&x.mul(y)?)?);
            }
        }
    }
    Ok(s)
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), LaurentPoly>;

fn add_triple(out: &mut Triple, key: (Monomial, Monomial, Monomial), c: LaurentPoly) {
    let e = out.entry(key).or_insert_with(LaurentPoly::zero);
    *e = &*e + &c;
}

fn coassociative(gl: &QuantumGL, f: &NCPoly) -> Result<bool> {
    let d = gl.comultiply(f)?;
    let (mut left, mut right) = (Triple::new(), Triple::new());
    for (m, c) in d.terms() {
        let (a, b) = m.as_pair().expect("pair");
        for (mb, cb) in gl.comultiply_monomial(b).terms() {
            let (b1, b2) = mb.as_pair().expect("pair");
            add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * cb);
        }
        for (ma, ca) in gl.comultiply_monomial(a).terms() {
            let (a1, a2) = ma.as_pair().expect("pair");
            add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * ca);
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    Ok(left == right)
}

fn counit_laws(gl: &QuantumGL, f: &NCPoly) -> Result<bool> {
    let a = gl.algebra();
    let d = gl.comultiply(f)?;
    let (mut left, mut right) = (a.zero(), a.zero());
    for (m, c) in d.terms() {
        let (x, y) = m.as_pair().expect("pair");
        let mono = |m: &Monomial| NCPoly::from_monomial(a, m.clone(), LaurentPoly::one());
        left = &left + &mono(y).scale(&(c * &gl.counit(&mono(x))?));
        right = &right + &mono(x).scale(&(c * &gl.counit(&mono(y))?));
    }
    Ok(&left == f && &right == f)
}

/// Coassociativity, counit and both antipode identities on generators and
/// `det`, plus `S(det) = det^-1`, `S(det^-1) = det`, `Delta(det) = det (x) det`.
pub fn hopf_axioms(def: Deformation) -> Result<Suite> {
    let mut s = Suite::new("hopf_axioms");
    for t in [1, 2] {
        let gl = QuantumGL::new(t, def)?;
        let a = gl.algebra().clone();
        let det = gl.det().clone();
        let mut elems = a.generators();
        elems.push(det.clone());
        for f in &elems {
            let unit = GLElement::from_poly(a.one().scale(&gl.counit(f)?));
            s.record(coassociative(&gl, f)?);
            s.record(counit_laws(&gl, f)?);
            s.record(gl.convolve_left(f)? == unit);
            s.record(gl.convolve_right(f)? == unit);
        }
        let inv = GLElement::det_inverse(&a)?;
        s.record(gl.antipode(&GLElement::from_poly(det.clone()))? == inv);
        s.record(gl.antipode(&inv)? == GLElement::from_poly(det.clone()));
        let one = GLElement::from_poly(a.one());
        s.record(gl.antipode(&inv)?.mul(&inv)? == one);
        s.record(inv.mul(&gl.antipode(&inv)?)? == one);
        s.record(gl.comultiply(&det)? == det.tensor(&det, gl.pair_algebra())?);
    }
    Ok(s)
}

pub fn run_all(seed: u64, def: Deformation) -> Result<Vec<Suite>> {
    Ok(vec![
        associativity(seed, 200, def)?,
        confluence(def)?,
        det_centrality(def)?,
        mu_homomorphism(def)?,
        hopf_axioms(def)?,
    ])
}
