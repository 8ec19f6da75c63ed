//! Sparse matrices over `Q[q, q^-1]` with exact rank and kernel computation.
//!
//! Rank and kernel are computed per connected component of the row/column
//! incidence graph, then by fraction-free Gauss-Jordan elimination on each
//! block. Pivots are chosen by fewest terms, then smallest exponent spread,
//! so unit pivots (single-term entries) are consumed first and never cause
//! coefficient growth.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Where a rank is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalPoint {
    /// Over the fraction field `Q(q)`.
    Generic,
    /// Over `Q` after substituting `q = lambda`.
    Specialized(Rational),
}

impl EvalPoint {
    pub fn q1() -> Self {
        EvalPoint::Specialized(Rational::one())
    }
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalPoint::Generic => write!(f, "generic"),
            EvalPoint::Specialized(l) => write!(f, "q={l}"),
        }
    }
}

type SparseVec<T> = Vec<(usize, T)>;

/// Column-major sparse matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        LaurentMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, LaurentPoly::one())]).collect(),
        }
    }

    pub fn from_dense(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, x) in row.into_iter().enumerate() {
                if !x.is_zero() {
                    m.columns[j].push((i, x));
                }
            }
        }
        m
    }

    /// Builds from sparse columns; entries may be unsorted and repeated (they are summed).
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, LaurentPoly)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                for (i, x) in col {
                    assert!(i < rows, "row index {i} out of range {rows}");
                    let e = acc.entry(i).or_default();
                    *e += &x;
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        LaurentMatrix { rows, cols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, LaurentPoly)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> LaurentPoly {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => LaurentPoly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<LaurentPoly>> {
        let mut out = vec![vec![LaurentPoly::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    /// `self * v` for a dense vector `v`.
    pub fn mul_vec(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![LaurentPoly::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, x) in col {
                out[*i] += &(x * &v[j]);
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let columns = rhs
            .columns
            .par_iter()
            .map(|rcol| {
                let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                for (k, y) in rcol {
                    for (i, x) in &self.columns[*k] {
                        let e = acc.entry(*i).or_default();
                        *e += &(x * y);
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Ok(LaurentMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }

    pub fn specialize(&self, lambda: &Rational) -> Result<Vec<SparseVec<Rational>>> {
        if Zero::is_zero(lambda) {
            return Err(Error::ZeroSpecialization);
        }
        Ok(self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, x)| (*i, x.eval_nonzero(lambda)))
                    .filter(|(_, x)| !Zero::is_zero(x))
                    .collect()
            })
            .collect())
    }

    /// Rank over `Q(q)` or over `Q` after specialization.
    pub fn rank(&self, at: &EvalPoint) -> Result<usize> {
        match at {
            EvalPoint::Generic => Ok(self.generic_rank()),
            EvalPoint::Specialized(lambda) => {
                let cols = self.specialize(lambda)?;
                Ok(rational_rank(self.rows, &cols))
            }
        }
    }

    fn generic_rank(&self) -> usize {
        let comps = components(self.rows, &self.columns);
        comps
            .par_iter()
            .map(|comp| {
                let rows = comp_rows(comp, &self.columns);
                eliminate(rows, false).len()
            })
            .sum()
    }

    /// Basis of the right null space over `Q(q)`, each vector polynomial,
    /// primitive, shifted to lowest exponent 0 and with positive leading
    /// coefficient. Vectors are ordered by their free column.
    pub fn kernel_basis(&self) -> Vec<Vec<LaurentPoly>> {
        let comps = components(self.rows, &self.columns);
        let mut found: Vec<(usize, Vec<LaurentPoly>)> = comps
            .par_iter()
            .flat_map_iter(|comp| {
                let rows = comp_rows(comp, &self.columns);
                let pivots = eliminate(rows, true);
                component_kernel(comp, &pivots)
                    .into_iter()
                    .map(|(free, local)| {
                        let mut v = vec![LaurentPoly::zero(); self.cols];
                        for (k, x) in local {
                            v[comp.cols[k]] = x;
                        }
                        (comp.cols[free], normalize_vector(v))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        found.sort_by_key(|(free, _)| *free);
        found.into_iter().map(|(_, v)| v).collect()
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    /// `[row, col, "laurent text"]`, column-major order.
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::with_capacity(self.nnz());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                entries.push((*i, j, x.to_string()));
            }
        }
        MatrixDoc {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(d)?;
        let mut columns = vec![Vec::new(); doc.cols];
        for (i, j, text) in doc.entries {
            if i >= doc.rows || j >= doc.cols {
                return Err(de::Error::custom(format!("entry ({i},{j}) out of range")));
            }
            let x: LaurentPoly = text.parse().map_err(de::Error::custom)?;
            columns[j].push((i, x));
        }
        Ok(LaurentMatrix::from_columns(doc.rows, columns))
    }
}

struct Component {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the bipartite row/column graph. Columns are
/// numbered `0..cols`, rows `cols..cols+rows` in the union-find.
fn components<T>(nrows: usize, columns: &[SparseVec<T>]) -> Vec<Component> {
    let ncols = columns.len();
    let mut parent: Vec<usize> = (0..ncols + nrows).collect();
    for (j, col) in columns.iter().enumerate() {
        for (i, _) in col {
            let a = find(&mut parent, j);
            let b = find(&mut parent, ncols + i);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
    for j in 0..ncols {
        let r = find(&mut parent, j);
        by_root
            .entry(r)
            .or_insert_with(|| Component { rows: Vec::new(), cols: Vec::new() })
            .cols
            .push(j);
    }
    for i in 0..nrows {
        let r = find(&mut parent, ncols + i);
        if let Some(c) = by_root.get_mut(&r) {
            c.rows.push(i);
        }
    }
    by_root.into_values().collect()
}

/// Rows of a component in local column numbering.
fn comp_rows<T: Clone>(comp: &Component, columns: &[SparseVec<T>]) -> Vec<SparseVec<T>> {
    let row_pos: BTreeMap<usize, usize> =
        comp.rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut rows: Vec<SparseVec<T>> = vec![Vec::new(); comp.rows.len()];
    for (local_j, &j) in comp.cols.iter().enumerate() {
        for (i, x) in &columns[j] {
            rows[row_pos[i]].push((local_j, x.clone()));
        }
    }
    rows
}

/// Entry type for elimination.
trait Scalar: Clone + Sized {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Pivot cost; smaller is better.
    fn cost(&self) -> (usize, u32);
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn unit_inverse(&self) -> Self;
    /// Divides a row by its content. Returns the row unchanged for fields.
    fn make_primitive(row: SparseVec<Self>) -> SparseVec<Self>;
}

impl Scalar for LaurentPoly {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        LaurentPoly::is_unit(self)
    }
    fn cost(&self) -> (usize, u32) {
        (self.term_count(), self.spread())
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn unit_inverse(&self) -> Self {
        LaurentPoly::unit_inverse(self).expect("unit pivot")
    }
    fn make_primitive(row: SparseVec<Self>) -> SparseVec<Self> {
        if row.iter().any(|(_, x)| x.is_unit()) {
            return row;
        }
        let mut g = LaurentPoly::zero();
        for (_, x) in &row {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        let row = if g.is_one() || g.is_zero() {
            row
        } else {
            row.into_iter()
                .map(|(j, x)| (j, x.exact_div(&g).expect("content divides")))
                .collect()
        };
        scale_rational_content(row)
    }
}

fn scale_rational_content(row: SparseVec<LaurentPoly>) -> SparseVec<LaurentPoly> {
    let mut c: Option<Rational> = None;
    for (_, x) in &row {
        let rc = x.rational_content();
        c = Some(match c {
            None => rc,
            Some(prev) => rational_gcd(&prev, &rc),
        });
    }
    match c {
        Some(c) if !c.is_one() => {
            let inv = c.recip();
            row.into_iter().map(|(j, x)| (j, x.scale(&inv))).collect()
        }
        _ => row,
    }
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn cost(&self) -> (usize, u32) {
        (1, 0)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn unit_inverse(&self) -> Self {
        self.recip()
    }
    fn make_primitive(row: SparseVec<Self>) -> SparseVec<Self> {
        row
    }
}

fn scale_row<T: Scalar>(row: &[(usize, T)], c: &T) -> SparseVec<T> {
    row.iter().map(|(j, x)| (*j, x.mul(c))).collect()
}

/// `a*x - b*y` for sorted sparse rows.
fn combine<T: Scalar>(x: &[(usize, T)], a: Option<&T>, y: &[(usize, T)], b: &T) -> SparseVec<T> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut k) = (0, 0);
    while i < x.len() || k < y.len() {
        let xi = x.get(i).map(|e| e.0);
        let yk = y.get(k).map(|e| e.0);
        match (xi, yk) {
            (Some(c1), Some(c2)) if c1 == c2 => {
                let left = match a {
                    Some(a) => x[i].1.mul(a),
                    None => x[i].1.clone(),
                };
                let v = left.sub(&y[k].1.mul(b));
                if !v.is_zero() {
                    out.push((c1, v));
                }
                i += 1;
                k += 1;
            }
            (Some(c1), c2) if c2.is_none_or(|c2| c1 < c2) => {
                let v = match a {
                    Some(a) => x[i].1.mul(a),
                    None => x[i].1.clone(),
                };
                out.push((c1, v));
                i += 1;
            }
            _ => {
                let z = y[k].1.mul(b);
                let neg = zero_like(&z).sub(&z);
                out.push((y[k].0, neg));
                k += 1;
            }
        }
    }
    out
}

fn zero_like<T: Scalar>(x: &T) -> T {
    x.sub(x)
}

struct Pivot<T> {
    col: usize,
    row: SparseVec<T>,
}

/// Fraction-free elimination. With `jordan`, pivot columns are also cleared
/// from earlier pivot rows, leaving each pivot row supported on its pivot
/// column plus free columns.
fn eliminate<T: Scalar + Send + Sync>(mut rows: Vec<SparseVec<T>>, jordan: bool) -> Vec<Pivot<T>> {
    rows.retain(|r| !r.is_empty());
    let mut pivots: Vec<Pivot<T>> = Vec::new();
    loop {
        // Select pivot: fewest terms, then smallest spread, then shortest row.
        let mut best: Option<((usize, u32, usize, usize), usize, usize)> = None;
        for (ri, row) in rows.iter().enumerate() {
            for (k, (col, x)) in row.iter().enumerate() {
                let (tc, sp) = x.cost();
                let key = (tc, sp, row.len(), *col);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, ri, k));
                }
            }
        }
        let Some((_, ri, k)) = best else { break };
        let mut prow = rows.swap_remove(ri);
        let pcol = prow[k].0;
        let pval = prow[k].1.clone();
        let unit = pval.is_unit();
        if unit {
            let inv = pval.unit_inverse();
            prow = scale_row(&prow, &inv);
        }
        let pval = prow
            .iter()
            .find(|e| e.0 == pcol)
            .map(|e| e.1.clone())
            .unwrap();
        let reduce = |row: SparseVec<T>| -> SparseVec<T> {
            let Ok(pos) = row.binary_search_by_key(&pcol, |e| e.0) else {
                return row;
            };
            let factor = row[pos].1.clone();
            if unit {
                combine(&row, None, &prow, &factor)
            } else {
                T::make_primitive(combine(&row, Some(&pval), &prow, &factor))
            }
        };
        rows = rows
            .into_iter()
            .map(&reduce)
            .filter(|r| !r.is_empty())
            .collect();
        if jordan {
            for p in pivots.iter_mut() {
                let row = std::mem::take(&mut p.row);
                p.row = reduce(row);
            }
        }
        pivots.push(Pivot { col: pcol, row: prow });
    }
    pivots
}

/// Kernel vectors of one component, in local column numbering, keyed by free column.
fn component_kernel(comp: &Component, pivots: &[Pivot<LaurentPoly>]) -> Vec<(usize, SparseVec<LaurentPoly>)> {
    let ncols = comp.cols.len();
    let mut is_pivot = vec![false; ncols];
    for p in pivots {
        is_pivot[p.col] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let involved: Vec<(&Pivot<LaurentPoly>, &LaurentPoly, LaurentPoly)> = pivots
            .iter()
            .filter_map(|p| {
                let a = p.row.iter().find(|e| e.0 == free)?;
                let pv = &p.row.iter().find(|e| e.0 == p.col).unwrap().1;
                Some((p, &a.1, pv.clone()))
            })
            .collect();
        let mut lcm = LaurentPoly::one();
        for (_, _, pv) in &involved {
            if pv.is_unit() {
                continue;
            }
            let g = lcm.gcd(pv);
            lcm = (&lcm * pv).exact_div(&g).expect("gcd divides");
        }
        let mut v: SparseVec<LaurentPoly> = vec![(free, lcm.clone())];
        for (p, a, pv) in involved {
            let f = lcm.exact_div(&pv).expect("lcm divisible by pivot");
            v.push((p.col, -(a * &f)));
        }
        out.push((free, v));
    }
    out
}

/// Content removed, lowest exponent shifted to 0, first entry's leading coefficient positive.
fn normalize_vector(v: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    if v.iter().all(|x| x.is_zero()) {
        return v;
    }
    let mut g = LaurentPoly::zero();
    for x in &v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    let v: Vec<LaurentPoly> = if g.is_one() {
        v
    } else {
        v.into_iter()
            .map(|x| x.exact_div(&g).expect("content divides"))
            .collect()
    };
    let sparse: SparseVec<LaurentPoly> = v
        .iter()
        .cloned()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect();
    let sparse = scale_rational_content(sparse);
    let lo = sparse.iter().filter_map(|(_, x)| x.min_exp()).min().unwrap_or(0);
    let negate = sparse[0].1.leading_coefficient().is_some_and(|c| c.is_negative());
    let mut out = vec![LaurentPoly::zero(); v.len()];
    for (j, x) in sparse {
        let x = x.shift(-lo);
        out[j] = if negate { -x } else { x };
    }
    out
}

fn rational_rank(nrows: usize, columns: &[SparseVec<Rational>]) -> usize {
    let comps = components(nrows, columns);
    comps
        .par_iter()
        .map(|comp| eliminate(comp_rows(comp, columns), false).len())
        .sum()
}

/// Rank of a rational matrix given by sparse columns.
pub fn rank_rational(nrows: usize, columns: &[SparseVec<Rational>]) -> usize {
    rational_rank(nrows, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> LaurentMatrix {
        LaurentMatrix::from_dense(rows.iter().map(|r| r.iter().map(|s| lp(s)).collect()).collect())
    }

    #[test]
    fn kernel_examples() {
        assert!(LaurentMatrix::identity(2).kernel_basis().is_empty());
        let k = m(&[&["q - 1", "1 - q"]]).kernel_basis();
        assert_eq!(k, vec![vec![lp("1"), lp("1")]]);
        let k = m(&[&["1", "q"], &["q^-1", "1"]]).kernel_basis();
        assert_eq!(k, vec![vec![lp("q"), lp("-1")]]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(LaurentMatrix::identity(3).rank(&EvalPoint::Generic).unwrap(), 3);
        let a = m(&[&["q - 1"]]);
        assert_eq!(a.rank(&EvalPoint::Generic).unwrap(), 1);
        assert_eq!(a.rank(&EvalPoint::q1()).unwrap(), 0);
        assert_eq!(LaurentMatrix::zeros(3, 4).rank(&EvalPoint::Generic).unwrap(), 0);
        assert!(a.rank(&EvalPoint::Specialized(Rational::zero())).is_err());
    }

    #[test]
    fn non_unit_pivots() {
        // Every entry has two terms; forces the cross-multiplication path.
        let a = m(&[
            &["q + 1", "q - 1", "q^2 - 1"],
            &["q^2 + q", "q^2 - q", "q^3 + 1"],
        ]);
        assert_eq!(a.rank(&EvalPoint::Generic).unwrap(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn zero_columns_give_unit_vectors() {
        let a = LaurentMatrix::from_columns(2, vec![vec![], vec![(0, lp("q"))], vec![]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![lp("1"), lp("0"), lp("0")]);
        assert_eq!(k[1], vec![lp("0"), lp("0"), lp("1")]);
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[&["q - 1", "0"], &["3/2*q^-2", "1"]]);
        let s = serde_json::to_string(&a).unwrap();
        let b: LaurentMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
