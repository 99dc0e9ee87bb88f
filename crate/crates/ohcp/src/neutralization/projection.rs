//! Row-basis enumeration for the projection procedure, in checked integer
//! arithmetic. Each row basis Z of B fixes the point x = e_i + B y with
//! x_Z = 0 for every elementary input at once.

use std::collections::{BTreeSet, HashSet};

use num::integer::{gcd, lcm};

use crate::rational::{frac, Q};

use super::{internal, Result};

fn overflow() -> super::NeutralizationError {
    internal("integer overflow in projection enumeration")
}

fn mul_sub(a: i128, b: i128, c: i128, d: i128) -> Result<i128> {
    let x = a.checked_mul(b).ok_or_else(overflow)?;
    let y = c.checked_mul(d).ok_or_else(overflow)?;
    x.checked_sub(y).ok_or_else(overflow)
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Eliminates `v` against the echelon rows; returns the pivot column of the
/// remainder, or None when `v` is dependent.
fn reduce(echelon: &[(usize, Vec<i128>)], v: &mut [i128]) -> Result<Option<usize>> {
    for (pc, row) in echelon {
        if v[*pc] == 0 {
            continue;
        }
        let (a, b) = (row[*pc], v[*pc]);
        for (x, &y) in v.iter_mut().zip(row) {
            *x = mul_sub(*x, a, y, b)?;
        }
        normalize(v);
    }
    Ok(v.iter().position(|&x| x != 0))
}

/// Columns forming a basis of the column space.
fn column_basis(b: &[Vec<i64>], m: usize, n: usize) -> Result<Vec<usize>> {
    let mut echelon: Vec<(usize, Vec<i128>)> = Vec::new();
    let mut basis = Vec::new();
    for j in 0..n {
        let mut v: Vec<i128> = (0..m).map(|i| b[i][j] as i128).collect();
        if let Some(pc) = reduce(&echelon, &mut v)? {
            echelon.push((pc, v));
            basis.push(j);
        }
    }
    Ok(basis)
}

/// D and N with N / D the inverse of the nonsingular square matrix `a`.
fn scaled_inverse(a: &[Vec<i128>]) -> Result<(i128, Vec<Vec<i128>>)> {
    let r = a.len();
    let mut t: Vec<Vec<i128>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| i128::from(i == j)));
            v
        })
        .collect();
    for c in 0..r {
        let p = (c..r).find(|&i| t[i][c] != 0).ok_or_else(|| internal("row basis minor is singular"))?;
        t.swap(p, c);
        for i in 0..r {
            if i == c || t[i][c] == 0 {
                continue;
            }
            let (a, b) = (t[c][c], t[i][c]);
            let (pivot, row) = (t[c].clone(), &mut t[i]);
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = mul_sub(*x, a, y, b)?;
            }
            normalize(row);
        }
    }
    let d = t.iter().enumerate().try_fold(1i128, |d, (i, row)| {
        let l = lcm(d, row[i].abs());
        if l > i64::MAX as i128 {
            Err(overflow())
        } else {
            Ok(l)
        }
    })?;
    let mut n = vec![vec![0i128; r]; r];
    for (i, row) in t.iter().enumerate() {
        let f = d / row[i];
        for j in 0..r {
            n[i][j] = row[r + j].checked_mul(f).ok_or_else(overflow)?;
        }
    }
    Ok((d, n))
}

struct Enumeration<'a> {
    b: &'a [Vec<i64>],
    /// B restricted to a column basis.
    bs: Vec<Vec<i128>>,
    r: usize,
    budget: usize,
    visited: usize,
    stopped: bool,
    chosen: Vec<usize>,
    echelon: Vec<(usize, Vec<i128>)>,
    /// Per row: number of bases containing it.
    hits: Vec<usize>,
    points: Vec<HashSet<(Vec<i128>, i128)>>,
}

impl Enumeration<'_> {
    fn dfs(&mut self, start: usize) -> Result<()> {
        if self.chosen.len() == self.r {
            if self.visited >= self.budget {
                self.stopped = true;
                return Ok(());
            }
            self.visited += 1;
            return self.leaf();
        }
        let m = self.b.len();
        let need = self.r - self.chosen.len();
        for i in start..m {
            if self.stopped || m - i < need {
                return Ok(());
            }
            let mut v = self.bs[i].clone();
            let Some(pc) = reduce(&self.echelon, &mut v)? else { continue };
            self.chosen.push(i);
            self.echelon.push((pc, v));
            self.dfs(i + 1)?;
            self.chosen.pop();
            self.echelon.pop();
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let minor: Vec<Vec<i128>> = self.chosen.iter().map(|&i| self.bs[i].clone()).collect();
        let (d, n) = scaled_inverse(&minor)?;
        for (pos, &i) in self.chosen.iter().enumerate() {
            self.hits[i] += 1;
            // D x = D e_i - B_S N e_pos
            let mut x: Vec<i128> = Vec::with_capacity(self.bs.len() + 1);
            for (j, row) in self.bs.iter().enumerate() {
                let mut s = if j == i { d } else { 0 };
                for (a, &v) in row.iter().enumerate() {
                    if v != 0 {
                        s = s.checked_sub(v.checked_mul(n[a][pos]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    }
                }
                x.push(s);
            }
            x.push(d);
            normalize(&mut x);
            let den = x.pop().expect("denominator");
            self.points[i].insert((x, den));
        }
        Ok(())
    }
}

/// For each row i, the distinct points c + B y with c = e_i and (c + B y)_Z = 0
/// over all row bases Z. The flag is false when `budget` bases did not suffice.
pub(super) fn projection_points(b: &[Vec<i64>], m: usize, n: usize, budget: usize) -> Result<(bool, Vec<BTreeSet<Vec<Q>>>)> {
    let unit = |i: usize| (0..m).map(|j| frac(i64::from(i == j), 1)).collect::<Vec<Q>>();
    let s = column_basis(b, m, n)?;
    if s.is_empty() {
        return Ok((true, (0..m).map(|i| BTreeSet::from([unit(i)])).collect()));
    }
    let bs: Vec<Vec<i128>> = b.iter().map(|row| s.iter().map(|&j| row[j] as i128).collect()).collect();
    let mut e = Enumeration {
        b,
        bs,
        r: s.len(),
        budget,
        visited: 0,
        stopped: false,
        chosen: Vec::new(),
        echelon: Vec::new(),
        hits: vec![0; m],
        points: vec![HashSet::new(); m],
    };
    e.dfs(0)?;
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let mut set: BTreeSet<Vec<Q>> = e.points[i]
            .iter()
            .map(|(x, den)| x.iter().map(|&v| Q::new((v).into(), (*den).into())).collect())
            .collect();
        if e.hits[i] < e.visited {
            set.insert(unit(i));
        }
        out.push(set);
    }
    Ok((!e.stopped, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{for_each_row_basis, rank, RationalMatrix};
    use crate::rational::int;
    use num::Zero;
    use rand::{Rng, SeedableRng};

    /// For each row basis Z of `b`, the points c + B y with (c + B y)_Z = 0 for
    /// every c = e_i, as `out[basis][i]`. Linear in c, so one elimination per
    /// basis covers all inputs.
    fn rational_points(b: &RationalMatrix, budget: usize) -> Result<(bool, Vec<Vec<Vec<Q>>>)> {
        let (m, n) = (b.rows(), b.cols());
        let identity: Vec<Vec<Q>> =
            (0..m).map(|i| (0..m).map(|j| if i == j { int(1) } else { Q::zero() }).collect()).collect();
        if rank(b)? == 0 {
            return Ok((true, vec![identity]));
        }
        let mut out = Vec::new();
        let mut failure = None;
        let complete = for_each_row_basis(b, budget, |rows| {
            let mut aug = RationalMatrix::zeros(rows.len(), n + m);
            for (a, &j) in rows.iter().enumerate() {
                for c in 0..n {
                    aug.set(a, c, b.get(j, c).clone());
                }
                aug.set(a, n + j, int(-1));
            }
            let (red, pivots) = match crate::linalg::rref(&aug) {
                Ok(x) => x,
                Err(err) => {
                    failure = Some(err.into());
                    return false;
                }
            };
            if pivots.len() != rows.len() || pivots.iter().any(|&c| c >= n) {
                failure = Some(internal("row basis gave an inconsistent system"));
                return false;
            }
            let mut xs = identity.clone();
            for (i, x) in xs.iter_mut().enumerate() {
                let mut y = vec![Q::zero(); n];
                for (a, &pc) in pivots.iter().enumerate() {
                    y[pc] = red.get(a, n + i).clone();
                }
                match b.mul_vec(&y) {
                    Ok(by) => x.iter_mut().zip(by).for_each(|(v, d)| *v += d),
                    Err(err) => {
                        failure = Some(err.into());
                        return false;
                    }
                }
            }
            out.push(xs);
            true
        })?;
        if let Some(f) = failure {
            return Err(f);
        }
        Ok((complete, out))
    }

    fn check(b: &[Vec<i64>], n: usize) {
        let m = b.len();
        let (done, fast) = projection_points(b, m, n, 1_000_000).unwrap();
        let (done2, slow) = rational_points(&RationalMatrix::from_i64(b).unwrap(), 1_000_000).unwrap();
        assert!(done && done2);
        for i in 0..m {
            let expected: BTreeSet<Vec<Q>> = slow.iter().map(|x| x[i].clone()).collect();
            assert_eq!(fast[i], expected, "row {i} of {b:?}");
        }
    }

    #[test]
    fn agrees_with_rational_elimination() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let (m, n) = (rng.random_range(1..7), rng.random_range(1..6));
            let b: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.random_range(-1..=1)).collect()).collect();
            check(&b, n);
        }
        for k in [crate::fixtures::mobius5(), crate::fixtures::rp2(), crate::fixtures::edge_glued_strip()] {
            let b = crate::complex::build_complex(&k).unwrap().boundary_matrix(2).unwrap();
            check(&b.to_dense(), b.n());
        }
    }
}
