//! Exact rational and integer linear algebra.

use std::fmt::Write as _;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::rational::Q;

pub const SIZE_LIMIT: usize = 500;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is {rows}x{cols}, beyond the supported {SIZE_LIMIT}x{SIZE_LIMIT}")]
    SizeLimit { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("homology dimension {p} out of range 0..={top}")]
    HomologyOutOfRange { p: usize, top: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn check_size(rows: usize, cols: usize) -> Result<(), LinalgError> {
    if rows > SIZE_LIMIT || cols > SIZE_LIMIT {
        Err(LinalgError::SizeLimit { rows, cols })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
        }
        Ok(RationalMatrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let q: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::from_rows(&q)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut s = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a, b, self.get(i, j).clone());
            }
        }
        s
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.select(&all, cols)
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Exact `p/q` text grid, one row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref(m: &RationalMatrix) -> Result<(RationalMatrix, Vec<usize>), LinalgError> {
    check_size(m.rows, m.cols)?;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                if a.get(r, j).is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok((a, pivots))
}

pub fn rank(m: &RationalMatrix) -> Result<usize, LinalgError> {
    Ok(rref(m)?.1.len())
}

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive(v: &[Q]) -> Vec<Q> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let first_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if first_neg { -g } else { g };
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// Basis of the right null space, each vector primitive integral.
pub fn kernel_basis(m: &RationalMatrix) -> Result<Vec<Vec<Q>>, LinalgError> {
    let (r, pivots) = rref(m)?;
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); m.cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            primitive(&v)
        })
        .collect())
}

/// Some solution of M x = b with free variables set to zero, or None when inconsistent.
pub fn solve_exact(m: &RationalMatrix, b: &[Q]) -> Result<Option<Vec<Q>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let mut aug = RationalMatrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let (r, pivots) = rref(&aug)?;
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, m.cols).clone();
    }
    Ok(Some(x))
}

pub fn determinant(m: &RationalMatrix) -> Result<Q, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    check_size(m.rows, m.cols)?;
    // clear denominators row by row, then run integer Bareiss
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(m.row(i).iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect());
        scale *= l;
    }
    let d = bareiss(rows);
    Ok(Q::new(d, scale))
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Visits every set of row indices that forms a basis of the row space, in
/// lexicographic order. Stops early when `visit` returns false; returns
/// whether the enumeration finished within `budget` visited bases.
pub fn for_each_row_basis(
    m: &RationalMatrix,
    budget: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<bool, LinalgError> {
    let r = rank(m)?;
    let mut chosen = Vec::with_capacity(r);
    let mut echelon: Vec<(usize, Vec<Q>)> = Vec::with_capacity(r);
    let mut visited = 0usize;
    let mut stopped = false;
    row_basis_dfs(m, r, 0, &mut chosen, &mut echelon, budget, &mut visited, &mut stopped, &mut visit);
    Ok(!stopped)
}

#[allow(clippy::too_many_arguments)]
fn row_basis_dfs(
    m: &RationalMatrix,
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    echelon: &mut Vec<(usize, Vec<Q>)>,
    budget: usize,
    visited: &mut usize,
    stopped: &mut bool,
    visit: &mut impl FnMut(&[usize]) -> bool,
) {
    if chosen.len() == r {
        if *visited >= budget {
            *stopped = true;
            return;
        }
        *visited += 1;
        if !visit(chosen) {
            *stopped = true;
        }
        return;
    }
    let need = r - chosen.len();
    for i in start..m.rows {
        if *stopped || m.rows - i < need {
            return;
        }
        let mut v = m.row(i).to_vec();
        for (pc, row) in echelon.iter() {
            if v[*pc].is_zero() {
                continue;
            }
            let f = &v[*pc] / &row[*pc];
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        chosen.push(i);
        echelon.push((pc, v));
        row_basis_dfs(m, r, i + 1, chosen, echelon, budget, visited, stopped, visit);
        chosen.pop();
        echelon.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &a * other.get(k, j);
                    *out.at(i, j) += v;
                }
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(bareiss((0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            if !v.is_zero() {
                *self.at(dst, j) += v;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            if !v.is_zero() {
                *self.at(i, dst) += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            *self.at(r, j) = v;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors d₁ | d₂ | … | d_r.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

/// Smith normal form with U·M·V = D.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SnfResult, LinalgError> {
    check_size(m.rows, m.cols)?;
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, t..rows, t..cols) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t) / a.get(t, t));
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j) / a.get(t, t));
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                // a smaller remainder now sits in row or column t
                let best_row = min_abs_entry(&a, t, t..rows, t..t + 1);
                let best_col = min_abs_entry(&a, t, t..t + 1, t..cols);
                let pick = [best_row, best_col]
                    .into_iter()
                    .flatten()
                    .min_by_key(|&(i, j)| a.get(i, j).abs())
                    .expect("pivot present");
                a.swap_rows(t, pick.0);
                u.swap_rows(t, pick.0);
                a.swap_cols(t, pick.1);
                v.swap_cols(t, pick.1);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(a.get(i, j) % a.get(t, t)).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..t).map(|i| a.get(i, i).clone()).collect();
    Ok(SnfResult { invariant_factors, rank: t, u, v, d: a })
}

fn min_abs_entry(
    a: &IntegerMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

pub fn homology(k: &SimplicialComplex, p: usize) -> Result<HomologyGroup, LinalgError> {
    let top = k.top_dim();
    if p > top {
        return Err(LinalgError::HomologyOutOfRange { p, top });
    }
    let rank_p = if p == 0 { 0 } else { smith_normal_form(&boundary_integer(k, p)?)?.rank };
    let (rank_up, torsion) = if p < top {
        let snf = smith_normal_form(&boundary_integer(k, p + 1)?)?;
        let t = snf.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect();
        (snf.rank, t)
    } else {
        (0, Vec::new())
    };
    Ok(HomologyGroup { betti: k.count(p) - rank_p - rank_up, torsion })
}

pub fn boundary_integer(k: &SimplicialComplex, q: usize) -> Result<IntegerMatrix, LinalgError> {
    Ok(IntegerMatrix::from_i64(&k.boundary_matrix(q)?.to_dense())
        .unwrap_or_else(|_| IntegerMatrix::zeros(k.count(q - 1), k.count(q))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&RationalMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), int(-1));
        let h = RationalMatrix::from_rows(&[vec![frac(1, 2), int(1)], vec![int(1), int(4)]]).unwrap();
        assert_eq!(determinant(&h).unwrap(), int(1));
        assert!(determinant(&m(&[&[1, 2]])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RationalMatrix::identity(3)).unwrap().is_empty());
        assert_eq!(kernel_basis(&m(&[&[1, -1]])).unwrap(), vec![vec![int(1), int(1)]]);
        let k = kernel_basis(&m(&[&[2, 4, 6]])).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![int(2), int(-1), int(0)]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(3), frac(-1, 3)];
        assert_eq!(solve_exact(&RationalMatrix::identity(2), &b).unwrap(), Some(b));
        assert_eq!(solve_exact(&m(&[&[2]]), &[int(1)]).unwrap(), Some(vec![frac(1, 2)]));
        assert_eq!(solve_exact(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]).unwrap(), None);
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&IntegerMatrix::from_i64(&[vec![2]]).unwrap()).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(2)]);
        let s = smith_normal_form(&IntegerMatrix::from_i64(&[vec![6, 0], vec![0, 4]]).unwrap()).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn row_bases_of_rank_one() {
        let a = m(&[&[1, 1], &[2, 2], &[0, 0], &[1, 0]]);
        let mut seen = Vec::new();
        let done = for_each_row_basis(&a, 100, |b| {
            seen.push(b.to_vec());
            true
        })
        .unwrap();
        assert!(done);
        assert_eq!(seen, vec![vec![0, 3], vec![1, 3]]);
        let partial = for_each_row_basis(&a, 1, |_| true).unwrap();
        assert!(!partial);
    }

    #[test]
    fn size_limit() {
        let big = RationalMatrix::zeros(501, 1);
        assert!(matches!(rank(&big), Err(LinalgError::SizeLimit { .. })));
    }

    #[test]
    fn hollow_triangle_and_tetrahedron() {
        let k = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(homology(&k, 1).unwrap(), HomologyGroup { betti: 1, torsion: vec![] });
        let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let t = build_complex(&faces.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap();
        assert!(homology(&t, 1).unwrap().is_trivial());
        assert_eq!(homology(&t, 2).unwrap().betti, 1);
        assert_eq!(homology(&t, 0).unwrap().betti, 1);
        assert!(homology(&t, 3).is_err());
    }
}
