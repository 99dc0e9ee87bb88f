//! Revised simplex over exact rationals with Bland's rule, plus a walk over
//! the optimal face to list every optimal vertex.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num::{One, Signed, Zero};

use super::{LpError, OhcpInstance, SolutionVector};
use crate::rational::Q;

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub vertex: SolutionVector,
    pub objective: Q,
    pub basis: Vec<usize>,
    pub pivots: usize,
}

#[derive(Debug, Clone)]
pub struct OptimalVertices {
    /// Sorted, deduplicated optimal vertices.
    pub vertices: Vec<SolutionVector>,
    pub objective: Q,
    pub truncated: bool,
    pub bases_visited: usize,
}

/// Bases explored per allowed vertex before the walk gives up.
const BASES_PER_VERTEX: usize = 256;

#[derive(Clone)]
struct BasisState {
    basis: Vec<usize>,
    binv: Vec<Vec<Q>>,
    xb: Vec<Q>,
}

impl BasisState {
    fn initial(inst: &OhcpInstance) -> Self {
        let m = inst.m();
        let mut basis = Vec::with_capacity(m);
        let mut binv = vec![vec![Q::zero(); m]; m];
        let mut xb = Vec::with_capacity(m);
        for (j, c) in inst.input().iter().enumerate() {
            if c.is_negative() {
                basis.push(m + j);
                binv[j][j] = -Q::one();
                xb.push(-c.clone());
            } else {
                basis.push(j);
                binv[j][j] = Q::one();
                xb.push(c.clone());
            }
        }
        BasisState { basis, binv, xb }
    }

    fn ftran(&self, col: &[(usize, i64)]) -> Vec<Q> {
        self.binv
            .iter()
            .map(|row| {
                col.iter().fold(Q::zero(), |acc, &(i, a)| {
                    if row[i].is_zero() {
                        acc
                    } else {
                        acc + &row[i] * Q::from_integer(a.into())
                    }
                })
            })
            .collect()
    }

    fn duals(&self, inst: &OhcpInstance) -> Vec<Q> {
        let m = inst.m();
        let mut pi = vec![Q::zero(); m];
        for (r, &j) in self.basis.iter().enumerate() {
            let c = inst.cost(j);
            if c.is_zero() {
                continue;
            }
            for i in 0..m {
                if !self.binv[r][i].is_zero() {
                    pi[i] += &c * &self.binv[r][i];
                }
            }
        }
        pi
    }

    fn pivot(&mut self, r: usize, e: usize, u: &[Q]) {
        let ur = u[r].clone();
        let theta = &self.xb[r] / &ur;
        for i in 0..self.xb.len() {
            if i != r && !u[i].is_zero() {
                let v = &self.xb[i] - &theta * &u[i];
                self.xb[i] = v;
            }
        }
        self.xb[r] = theta;
        let inv = ur.recip();
        for v in self.binv[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.binv[r].clone();
        for i in 0..self.binv.len() {
            if i == r || u[i].is_zero() {
                continue;
            }
            for (k, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    let v = &self.binv[i][k] - &u[i] * pv;
                    self.binv[i][k] = v;
                }
            }
        }
        self.basis[r] = e;
    }

    fn vertex(&self, inst: &OhcpInstance) -> SolutionVector {
        let mut z = SolutionVector::zeros(inst.m(), inst.n());
        for (r, &j) in self.basis.iter().enumerate() {
            z.set(j, self.xb[r].clone());
        }
        z
    }

    fn key(&self) -> Vec<usize> {
        let mut k = self.basis.clone();
        k.sort_unstable();
        k
    }
}

fn reduced_cost(inst: &OhcpInstance, pi: &[Q], j: usize) -> Q {
    inst.column(j)
        .iter()
        .fold(inst.cost(j), |acc, &(i, a)| acc - &pi[i] * Q::from_integer(a.into()))
}

fn run_simplex(inst: &OhcpInstance) -> Result<(BasisState, usize), LpError> {
    let mut st = BasisState::initial(inst);
    let mut pivots = 0usize;
    loop {
        let pi = st.duals(inst);
        let in_basis: HashSet<usize> = st.basis.iter().copied().collect();
        let entering = (0..inst.num_columns())
            .filter(|j| !in_basis.contains(j))
            .find(|&j| reduced_cost(inst, &pi, j).is_negative());
        let Some(e) = entering else {
            return Ok((st, pivots));
        };
        let u = st.ftran(&inst.column(e));
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..u.len() {
            if !u[r].is_positive() {
                continue;
            }
            let ratio = &st.xb[r] / &u[r];
            let better = match &leave {
                None => true,
                Some((lr, lv)) => ratio < *lv || (ratio == *lv && st.basis[r] < st.basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Err(LpError::Internal("OHCP LP reported unbounded".into()));
        };
        st.pivot(r, e, &u);
        pivots += 1;
    }
}

/// Optimal basic feasible solution by the revised simplex method.
pub fn solve(inst: &OhcpInstance) -> Result<LpSolution, LpError> {
    let (st, pivots) = run_simplex(inst)?;
    let vertex = st.vertex(inst);
    if !inst.is_feasible(&vertex) {
        return Err(LpError::Internal("simplex returned an infeasible point".into()));
    }
    if !super::is_concise(&vertex) {
        return Err(LpError::Internal("basic solution is not concise".into()));
    }
    let objective = inst.objective(&vertex);
    Ok(LpSolution { vertex, objective, basis: st.basis, pivots })
}

/// All optimal vertices, found by pivoting within the optimal face.
///
/// The face is cut out by the reduced costs of the first optimal basis; every
/// feasible basis of that face is visited (degenerate pivots included) until
/// `limit` vertices or the basis budget is reached.
pub fn enumerate_optimal_vertices(inst: &OhcpInstance, limit: usize) -> Result<OptimalVertices, LpError> {
    let (start, _) = run_simplex(inst)?;
    let pi = start.duals(inst);
    let face: Vec<usize> = (0..inst.num_columns())
        .filter(|&j| reduced_cost(inst, &pi, j).is_zero())
        .collect();
    let objective = inst.objective(&start.vertex(inst));
    let max_bases = limit.saturating_mul(BASES_PER_VERTEX).max(1);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut vertices: BTreeSet<SolutionVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.key());
    queue.push_back(start);
    let mut truncated = false;
    while let Some(st) = queue.pop_front() {
        vertices.insert(st.vertex(inst));
        if vertices.len() > limit {
            truncated = true;
            break;
        }
        let in_basis: HashSet<usize> = st.basis.iter().copied().collect();
        for &e in face.iter().filter(|j| !in_basis.contains(j)) {
            let u = st.ftran(&inst.column(e));
            let theta = (0..u.len())
                .filter(|&r| u[r].is_positive())
                .map(|r| &st.xb[r] / &u[r])
                .min();
            for r in 0..u.len() {
                let feasible = if u[r].is_positive() {
                    Some(&st.xb[r] / &u[r]) == theta
                } else {
                    u[r].is_negative() && st.xb[r].is_zero()
                };
                if !feasible {
                    continue;
                }
                let mut next = st.clone();
                next.basis[r] = e;
                let key = next.key();
                if seen.contains(&key) {
                    continue;
                }
                if seen.len() >= max_bases {
                    truncated = true;
                    continue;
                }
                next.basis[r] = st.basis[r];
                next.pivot(r, e, &u);
                seen.insert(key);
                queue.push_back(next);
            }
        }
    }
    let mut vertices: Vec<SolutionVector> = vertices.into_iter().collect();
    if truncated && vertices.len() > limit {
        vertices.truncate(limit);
    }
    for v in &vertices {
        if !inst.is_feasible(v) || inst.objective(v) != objective || !super::is_concise(v) {
            return Err(LpError::Internal("optimal face walk left the optimal face".into()));
        }
    }
    Ok(OptimalVertices { vertices, objective, truncated, bases_visited: seen.len() })
}
