//! Oriented simplicial complexes, chains and boundary matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{Signed, Zero};
use thiserror::Error;

use crate::rational::Q;

pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex {index} repeats vertex {vertex}")]
    DuplicateVertex { index: usize, vertex: Vertex },
    #[error("simplex {index} is empty")]
    EmptySimplex { index: usize },
    #[error("complex has no simplices")]
    EmptyComplex,
    #[error("dimension {q} out of range 1..={top}")]
    DimensionOutOfRange { q: usize, top: usize },
    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<Vertex>),
    #[error("chain dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("boundary of a 0-chain is undefined")]
    ZeroDimensionalChain,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, index: usize },
}

/// A simplex in canonical form: ascending vertices plus the parity of the sort.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<Vertex>,
    sign: i8,
}

impl Simplex {
    pub fn oriented(labels: &[Vertex]) -> Result<Simplex, ComplexError> {
        if labels.is_empty() {
            return Err(ComplexError::EmptySimplex { index: 0 });
        }
        let mut v = labels.to_vec();
        let mut sign = 1i8;
        // insertion sort so the swap count gives the permutation parity
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex { index: 0, vertex: w[0] });
        }
        Ok(Simplex { vertices: v, sign })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn reversed(&self) -> Simplex {
        Simplex { vertices: self.vertices.clone(), sign: -self.sign }
    }

    /// Codimension-one faces with the alternating signs of the boundary formula.
    pub fn boundary(&self) -> Vec<(Vec<Vertex>, i8)> {
        if self.vertices.len() < 2 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|k| {
                let mut f = self.vertices.clone();
                f.remove(k);
                let s = if k % 2 == 0 { 1 } else { -1 };
                (f, s * self.sign)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<Vertex>>>,
    index: Vec<HashMap<Vec<Vertex>, usize>>,
    maximal: Vec<Vec<Vertex>>,
}

pub fn build_complex(maximal: &[Vec<Vertex>]) -> Result<SimplicialComplex, ComplexError> {
    if maximal.is_empty() {
        return Err(ComplexError::EmptyComplex);
    }
    let mut sets: Vec<BTreeSet<Vec<Vertex>>> = Vec::new();
    let mut canon = Vec::with_capacity(maximal.len());
    for (index, s) in maximal.iter().enumerate() {
        let simplex = Simplex::oriented(s).map_err(|e| match e {
            ComplexError::DuplicateVertex { vertex, .. } => {
                ComplexError::DuplicateVertex { index, vertex }
            }
            _ => ComplexError::EmptySimplex { index },
        })?;
        let v = simplex.vertices;
        let k = v.len();
        if sets.len() < k {
            sets.resize_with(k, BTreeSet::new);
        }
        // every nonempty subset is a face
        for mask in 1u64..(1u64 << k) {
            let face: Vec<Vertex> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| v[b]).collect();
            sets[face.len() - 1].insert(face);
        }
        canon.push(v);
    }
    canon.sort();
    canon.dedup();
    let by_dim: Vec<Vec<Vec<Vertex>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    let index = by_dim
        .iter()
        .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let maximal = canon
        .iter()
        .filter(|s| {
            let d = s.len() - 1;
            d + 1 >= by_dim.len() || !by_dim[d + 1].iter().any(|t| is_face(s, t))
        })
        .cloned()
        .collect();
    Ok(SimplicialComplex { by_dim, index, maximal })
}

fn is_face(small: &[Vertex], big: &[Vertex]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

impl SimplicialComplex {
    pub fn top_dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.by_dim.get(d).map_or(0, |l| l.len())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(|l| l.len()).collect()
    }

    pub fn simplices(&self, d: usize) -> &[Vec<Vertex>] {
        self.by_dim.get(d).map_or(&[], |l| l.as_slice())
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[Vertex] {
        &self.by_dim[d][i]
    }

    /// Index of a simplex given in sorted vertex order.
    pub fn index_of(&self, sorted: &[Vertex]) -> Option<usize> {
        if sorted.is_empty() {
            return None;
        }
        self.index.get(sorted.len() - 1)?.get(sorted).copied()
    }

    /// Index plus orientation sign of an arbitrarily ordered vertex list.
    pub fn locate(&self, labels: &[Vertex]) -> Result<(usize, i8), ComplexError> {
        let s = Simplex::oriented(labels)?;
        let i = self
            .index_of(s.vertices())
            .ok_or_else(|| ComplexError::UnknownSimplex(labels.to_vec()))?;
        Ok((i, s.sign()))
    }

    pub fn maximal_simplices(&self) -> &[Vec<Vertex>] {
        &self.maximal
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    pub fn boundary_matrix(&self, q: usize) -> Result<BoundaryMatrix, ComplexError> {
        if q == 0 || q > self.top_dim() {
            return Err(ComplexError::DimensionOutOfRange { q, top: self.top_dim() });
        }
        let columns = self.by_dim[q]
            .iter()
            .map(|s| {
                let simplex = Simplex { vertices: s.clone(), sign: 1 };
                let mut col: Vec<(usize, i8)> = simplex
                    .boundary()
                    .into_iter()
                    .map(|(f, sg)| (self.index[q - 1][&f], sg))
                    .collect();
                col.sort();
                col
            })
            .collect();
        Ok(BoundaryMatrix::from_columns(q - 1, self.count(q - 1), columns))
    }

    /// ∂_{p+1}, or an m×0 matrix when p is the top dimension.
    pub fn boundary_above(&self, p: usize) -> Result<BoundaryMatrix, ComplexError> {
        if p >= self.by_dim.len() {
            return Err(ComplexError::DimensionOutOfRange { q: p + 1, top: self.top_dim() });
        }
        if p == self.top_dim() {
            Ok(BoundaryMatrix::from_columns(p, self.count(p), Vec::new()))
        } else {
            self.boundary_matrix(p + 1)
        }
    }
}

/// Sparse {0, ±1} matrix of ∂_q: rows are p-simplices, columns q-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    p: usize,
    rows: usize,
    columns: Vec<Vec<(usize, i8)>>,
    row_lists: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn from_columns(p: usize, rows: usize, columns: Vec<Vec<(usize, i8)>>) -> BoundaryMatrix {
        let mut row_lists = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for &(i, s) in col {
                row_lists[i].push((j, s));
            }
        }
        BoundaryMatrix { p, rows, columns, row_lists }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.p + 1
    }

    pub fn m(&self) -> usize {
        self.rows
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i8)] {
        &self.columns[j]
    }

    pub fn row(&self, i: usize) -> &[(usize, i8)] {
        &self.row_lists[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.columns[j].iter().find(|e| e.0 == i).map_or(0, |e| e.1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.n()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                d[i][j] = s as i64;
            }
        }
        d
    }

    pub fn mul_vec(&self, y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if y[j].is_zero() {
                continue;
            }
            for &(i, s) in col {
                if s > 0 {
                    out[i] += &y[j];
                } else {
                    out[i] -= &y[j];
                }
            }
        }
        out
    }

    pub fn mul_vec_i64(&self, y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                out[i] += s as i64 * y[j];
            }
        }
        out
    }

    /// Negates column j, as reversing the orientation of that q-simplex does.
    pub fn with_column_negated(&self, j: usize) -> BoundaryMatrix {
        let mut cols = self.columns.clone();
        for e in &mut cols[j] {
            e.1 = -e.1;
        }
        BoundaryMatrix::from_columns(self.p, self.rows, cols)
    }
}

/// Sparse rational chain on p-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    coeffs: BTreeMap<usize, Q>,
}

impl Chain {
    pub fn zero(dim: usize) -> Chain {
        Chain { dim, coeffs: BTreeMap::new() }
    }

    pub fn from_dense(dim: usize, v: &[Q]) -> Chain {
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Chain { dim, coeffs }
    }

    /// Builds a chain from (coefficient, vertex list) terms, honoring orientation.
    pub fn from_terms(
        k: &SimplicialComplex,
        dim: usize,
        terms: &[(Q, Vec<Vertex>)],
    ) -> Result<Chain, ComplexError> {
        let mut c = Chain::zero(dim);
        for (coef, labels) in terms {
            if labels.len() != dim + 1 {
                return Err(ComplexError::DimensionMismatch(dim, labels.len().saturating_sub(1)));
            }
            let (i, s) = k.locate(labels)?;
            let v = if s > 0 { coef.clone() } else { -coef.clone() };
            c.add_at(i, &v);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> Q {
        self.coeffs.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); len];
        for (i, c) in &self.coeffs {
            v[*i] = c.clone();
        }
        v
    }

    pub fn add_at(&mut self, i: usize, v: &Q) {
        let e = self.coeffs.entry(i).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn validate(&self, k: &SimplicialComplex) -> Result<(), ComplexError> {
        let count = k.count(self.dim);
        match self.coeffs.keys().find(|&&i| i >= count) {
            Some(&index) => Err(ComplexError::IndexOutOfRange { dim: self.dim, index }),
            None => Ok(()),
        }
    }

    pub fn l1_norm(&self) -> Q {
        self.coeffs.values().fold(Q::zero(), |a, c| a + c.abs())
    }
}

pub fn chain_add(a: &Chain, b: &Chain) -> Result<Chain, ComplexError> {
    if a.dim != b.dim {
        return Err(ComplexError::DimensionMismatch(a.dim, b.dim));
    }
    let mut c = a.clone();
    for (i, v) in &b.coeffs {
        c.add_at(*i, v);
    }
    Ok(c)
}

pub fn chain_scale(a: &Chain, s: &Q) -> Chain {
    if s.is_zero() {
        return Chain::zero(a.dim);
    }
    Chain { dim: a.dim, coeffs: a.coeffs.iter().map(|(i, c)| (*i, c * s)).collect() }
}

pub fn apply_boundary(k: &SimplicialComplex, chain: &Chain) -> Result<Chain, ComplexError> {
    if chain.dim == 0 {
        return Err(ComplexError::ZeroDimensionalChain);
    }
    chain.validate(k)?;
    let b = k.boundary_matrix(chain.dim)?;
    let mut out = Chain::zero(chain.dim - 1);
    for (j, c) in chain.iter() {
        for &(i, s) in b.column(j) {
            let v = if s > 0 { c.clone() } else { -c.clone() };
            out.add_at(i, &v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mobius5() -> SimplicialComplex {
        build_complex(&[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]])
            .unwrap()
    }

    #[test]
    fn orientation_parity() {
        let s = Simplex::oriented(&[2, 0, 1]).unwrap();
        assert_eq!(s.vertices(), &[0, 1, 2]);
        assert_eq!(s.sign(), 1);
        assert_eq!(Simplex::oriented(&[1, 0, 2]).unwrap().sign(), -1);
        assert!(matches!(
            Simplex::oriented(&[1, 1]),
            Err(ComplexError::DuplicateVertex { vertex: 1, .. })
        ));
    }

    #[test]
    fn closure_counts() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        let k = build_complex(&[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 2]);
        assert_eq!(mobius5().f_vector(), vec![5, 10, 5]);
    }

    #[test]
    fn duplicate_reports_position() {
        let e = build_complex(&[vec![0, 1, 2], vec![3, 4, 3]]).unwrap_err();
        assert_eq!(e, ComplexError::DuplicateVertex { index: 1, vertex: 3 });
    }

    #[test]
    fn triangle_column() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let b = k.boundary_matrix(2).unwrap();
        assert_eq!(b.to_dense(), vec![vec![1], vec![-1], vec![1]]);
        assert!(k.boundary_matrix(3).is_err());
        assert!(k.boundary_matrix(0).is_err());
    }

    #[test]
    fn mobius_edge_order_and_degrees() {
        let k = mobius5();
        let edges: Vec<Vec<Vertex>> = k.simplices(1).to_vec();
        let expected: Vec<Vec<Vertex>> = [[1, 2], [1, 3], [1, 4], [1, 5], [2, 3], [2, 4], [2, 5], [3, 4], [3, 5], [4, 5]]
            .iter()
            .map(|e| e.to_vec())
            .collect();
        assert_eq!(edges, expected);
        let b = k.boundary_matrix(2).unwrap();
        assert_eq!((b.m(), b.n()), (10, 5));
        let interior = [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]];
        for e in interior {
            assert_eq!(b.row(k.index_of(&e).unwrap()).len(), 2);
        }
        for e in [[1, 3], [1, 4], [2, 4], [2, 5], [3, 5]] {
            assert_eq!(b.row(k.index_of(&e).unwrap()).len(), 1);
        }
    }

    #[test]
    fn boundary_of_triangle_chain() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let c = Chain::from_terms(&k, 2, &[(int(1), vec![0, 1, 2])]).unwrap();
        let d = apply_boundary(&k, &c).unwrap();
        let want = Chain::from_terms(
            &k,
            1,
            &[(int(1), vec![0, 1]), (int(1), vec![1, 2]), (int(-1), vec![0, 2])],
        )
        .unwrap();
        assert_eq!(d, want);
        assert!(apply_boundary(&k, &d).unwrap().is_empty());
        assert!(apply_boundary(&k, &Chain::zero(0)).is_err());
    }

    #[test]
    fn reversed_terms_negate() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let a = Chain::from_terms(&k, 1, &[(int(1), vec![1, 0])]).unwrap();
        assert_eq!(a.get(0), int(-1));
    }

    #[test]
    fn chain_arithmetic() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let c = Chain::from_terms(&k, 1, &[(int(1), vec![0, 1])]).unwrap();
        let d = Chain::from_terms(&k, 1, &[(int(1), vec![0, 1]), (int(1), vec![1, 2])]).unwrap();
        let s = chain_add(&c, &d).unwrap();
        assert_eq!(s.get(0), int(2));
        assert_eq!(s.get(2), int(1));
        assert!(chain_add(&c, &chain_scale(&c, &int(-1))).unwrap().is_empty());
        assert!(chain_scale(&d, &int(0)).is_empty());
        assert!(chain_add(&c, &Chain::zero(2)).is_err());
    }

    #[test]
    fn mobius_coherent_boundary() {
        let k = mobius5();
        let b = k.boundary_matrix(2).unwrap();
        let interior: Vec<usize> = (0..10).filter(|&i| b.row(i).len() == 2).collect();
        // best sign choice cancels all but one interior edge, which doubles
        let best = (0..32u32)
            .map(|mask| {
                let eps: Vec<i64> = (0..5).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
                b.mul_vec_i64(&eps)
            })
            .min_by_key(|d| interior.iter().filter(|&&i| d[i] != 0).count())
            .unwrap();
        let doubled: Vec<usize> = interior.iter().copied().filter(|&i| best[i] != 0).collect();
        assert_eq!(doubled.len(), 1);
        assert_eq!(best[doubled[0]].abs(), 2);
        for i in (0..10).filter(|i| !interior.contains(i)) {
            assert_eq!(best[i].abs(), 1);
        }
    }
}
