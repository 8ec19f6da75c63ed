use dashmap::DashMap;

use crate::error::{Error, Result};

use super::{Algebra, Monomial, NCPoly, Node};

/// The algebra homomorphism determined by generator images.
pub struct AlgebraHom {
    source: Algebra,
    target: Algebra,
    images: Vec<NCPoly>,
    multiplier: usize,
    cache: DashMap<Vec<usize>, NCPoly>,
}

impl AlgebraHom {
    /// `images[k]` is the image of the k-th source generator and must be
    /// homogeneous of degree `multiplier * deg(generator k)` (or zero).
    pub fn new(source: &Algebra, target: &Algebra, images: Vec<NCPoly>, multiplier: usize) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::InvalidParams(format!(
                "{} images for {} generators",
                images.len(),
                source.generator_count()
            )));
        }
        for (img, deg) in images.iter().zip(source.generator_degrees()) {
            if img.algebra() != target {
                return Err(Error::AlgebraMismatch(
                    format!("{:?}", img.algebra()),
                    format!("{:?}", target),
                ));
            }
            if !img.is_homogeneous_of(multiplier * deg) {
                return Err(Error::NotHomogeneous(multiplier * deg));
            }
        }
        Ok(AlgebraHom {
            source: source.clone(),
            target: target.clone(),
            images,
            multiplier,
            cache: DashMap::new(),
        })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn multiplier(&self) -> usize {
        self.multiplier
    }

    pub fn images(&self) -> &[NCPoly] {
        &self.images
    }

    fn word_image(&self, letters: &[usize]) -> NCPoly {
        match letters.len() {
            0 => return self.target.one(),
            1 => return self.images[letters[0]].clone(),
            _ => {}
        }
        if let Some(hit) = self.cache.get(letters) {
            return hit.clone();
        }
        let (prefix, last) = letters.split_at(letters.len() - 1);
        let img = self
            .word_image(prefix)
            .mul(&self.images[last[0]])
            .expect("images share the target algebra");
        self.cache.insert(letters.to_vec(), img.clone());
        img
    }

    pub fn apply_monomial(&self, m: &Monomial) -> NCPoly {
        self.word_image(&self.source.letters(m))
    }

    pub fn apply(&self, f: &NCPoly) -> Result<NCPoly> {
        if f.algebra() != &self.source {
            return Err(Error::AlgebraMismatch(
                format!("{:?}", f.algebra()),
                format!("{:?}", self.source),
            ));
        }
        let mut out = NCPoly::zero(&self.target);
        for (m, c) in f.terms() {
            for (mm, cc) in self.apply_monomial(m).terms() {
                out.add_term(mm.clone(), &(c * cc));
            }
        }
        Ok(out)
    }
}

impl Algebra {
    /// Flattened generator indices of a monomial, in product order. Tensor
    /// monomials list the left factor's letters, offset-free, then the right
    /// factor's letters shifted past the left generators.
    pub fn letters(&self, m: &Monomial) -> Vec<usize> {
        match (self.node(), m) {
            (Node::Matrix(_) | Node::Free(_), Monomial::Word(w)) => w.iter().map(|&g| g as usize).collect(),
            (Node::Tensor(a, b), Monomial::Pair(x, y)) => {
                let off = a.generator_count();
                let mut out = a.letters(x);
                out.extend(b.letters(y).into_iter().map(|g| g + off));
                out
            }
            _ => panic!("monomial does not belong to {:?}", self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Deformation, LaurentPoly};
    use super::*;

    #[test]
    fn identity_and_unit() {
        let a = Algebra::quantum_matrix(2, 2, Deformation::GENERIC).unwrap();
        let id = AlgebraHom::new(&a, &a, a.generators(), 1).unwrap();
        let f = a.x(2, 2).unwrap().mul(&a.x(1, 1).unwrap()).unwrap();
        assert_eq!(id.apply(&f).unwrap(), f);
        assert_eq!(id.apply(&a.one()).unwrap(), a.one());
        let bad = AlgebraHom::new(&a, &a, a.generators(), 2);
        assert!(bad.is_err());
        let scaled: Vec<NCPoly> = a.generators().iter().map(|g| g.scale(&LaurentPoly::q())).collect();
        let h = AlgebraHom::new(&a, &a, scaled, 1).unwrap();
        assert_eq!(h.apply(&f).unwrap(), f.scale(&LaurentPoly::q_pow(2)));
    }
}
