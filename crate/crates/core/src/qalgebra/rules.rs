//! PBW rewriting for single-parameter quantum matrices.
//!
//! Generators `X[i,j]` are numbered row-major; a normal monomial is a
//! non-decreasing word of generator numbers. For `y > x` the product `y x` is
//! rewritten with
//!
//! * same row:    `X[i,l] X[i,j] = q^-1 X[i,j] X[i,l]`            (j < l)
//! * same column: `X[k,j] X[i,j] = q^-1 X[i,j] X[k,j]`            (i < k)
//! * anti-diagonal: `X[k,l] X[i,j] = X[i,j] X[k,l]`              (i < k, j > l)
//! * diagonal:    `X[k,l] X[i,j] = X[i,j] X[k,l] - (q - q^-1) X[i,l] X[k,j]` (i < k, j < l)

use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;

use super::{Deformation, Fault};
use crate::exactnum::LaurentPoly;

pub(crate) type Word = Vec<u16>;
pub(crate) type WordPoly = Vec<(Word, LaurentPoly)>;

pub(crate) struct MatrixRules {
    pub rows: usize,
    pub cols: usize,
    q: LaurentPoly,
    q_inv: LaurentPoly,
    /// `q - q^-1`; zero in the classical case.
    cross: LaurentPoly,
    fault: Option<Fault>,
    gen_cache: DashMap<(Word, u16), Arc<WordPoly>>,
    pair_cache: DashMap<(Word, Word), Arc<WordPoly>>,
}

impl MatrixRules {
    pub fn new(rows: usize, cols: usize, deformation: Deformation) -> Self {
        let q = deformation.q_pow(1);
        let q_inv = deformation.q_pow(-1);
        let mut cross = &q - &q_inv;
        if deformation.fault == Some(Fault::CrossTermSign) {
            cross = -cross;
        }
        MatrixRules {
            rows,
            cols,
            q,
            q_inv,
            cross,
            fault: deformation.fault,
            gen_cache: DashMap::new(),
            pair_cache: DashMap::new(),
        }
    }

    pub fn position(&self, g: u16) -> (usize, usize) {
        (g as usize / self.cols, g as usize % self.cols)
    }

    pub fn generator(&self, i: usize, j: usize) -> u16 {
        (i * self.cols + j) as u16
    }

    /// `y x` for generators `y > x`, as `(coefficient, a, b)` with `a <= b`.
    fn swap(&self, y: u16, x: u16) -> Vec<(LaurentPoly, u16, u16)> {
        let (i, j) = self.position(x);
        let (k, l) = self.position(y);
        if i == k {
            let c = if self.fault == Some(Fault::RowRelationInverted) {
                self.q.clone()
            } else {
                self.q_inv.clone()
            };
            vec![(c, x, y)]
        } else if j == l {
            vec![(self.q_inv.clone(), x, y)]
        } else if j > l {
            vec![(LaurentPoly::one(), x, y)]
        } else {
            let mut out = vec![(LaurentPoly::one(), x, y)];
            if !self.cross.is_zero() {
                out.push((-&self.cross, self.generator(i, l), self.generator(k, j)));
            }
            out
        }
    }

    /// Normal form of `w * x` for a normal word `w`.
    pub fn mul_gen(&self, w: &[u16], x: u16) -> Arc<WordPoly> {
        if w.last().is_none_or(|&y| y <= x) {
            let mut out = w.to_vec();
            out.push(x);
            return Arc::new(vec![(out, LaurentPoly::one())]);
        }
        let key = (w.to_vec(), x);
        if let Some(hit) = self.gen_cache.get(&key) {
            return hit.clone();
        }
        let (prefix, y) = (&w[..w.len() - 1], w[w.len() - 1]);
        let mut acc: HashMap<Word, LaurentPoly> = HashMap::new();
        for (c, a, b) in self.swap(y, x) {
            for (u, cu) in self.mul_gen(prefix, a).iter() {
                let cu = &c * cu;
                for (v, cv) in self.mul_gen(u, b).iter() {
                    let e = acc.entry(v.clone()).or_default();
                    *e += &(&cu * cv);
                }
            }
        }
        let result = Arc::new(finish(acc));
        self.gen_cache.insert(key, result.clone());
        result
    }

    /// Normal form of the product of two normal words.
    pub fn mul_words(&self, a: &[u16], b: &[u16]) -> Arc<WordPoly> {
        if b.is_empty() || a.last().is_none_or(|&y| b[0] >= y) {
            let mut out = a.to_vec();
            out.extend_from_slice(b);
            return Arc::new(vec![(out, LaurentPoly::one())]);
        }
        if b.len() == 1 {
            return self.mul_gen(a, b[0]);
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(hit) = self.pair_cache.get(&key) {
            return hit.clone();
        }
        let mut current: HashMap<Word, LaurentPoly> = HashMap::new();
        current.insert(a.to_vec(), LaurentPoly::one());
        for &g in b {
            let mut next: HashMap<Word, LaurentPoly> = HashMap::new();
            for (u, cu) in current {
                for (v, cv) in self.mul_gen(&u, g).iter() {
                    let e = next.entry(v.clone()).or_default();
                    *e += &(&cu * cv);
                }
            }
            next.retain(|_, c| !c.is_zero());
            current = next;
        }
        let result = Arc::new(finish(current));
        self.pair_cache.insert(key, result.clone());
        result
    }
}

fn finish(acc: HashMap<Word, LaurentPoly>) -> WordPoly {
    let mut out: WordPoly = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
