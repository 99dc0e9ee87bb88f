//! Vertex enumeration through the hyperplane arrangement in y-space:
//! vertices of P are the points where {(c + B y)_j = 0} ∪ {y_k = 0} has
//! full rank.

use std::collections::BTreeSet;

use num::{One, Zero};

use super::{LpError, OhcpInstance, SolutionVector};
use crate::linalg::{for_each_row_basis, solve_exact, RationalMatrix};
use crate::rational::Q;

#[derive(Debug, Clone)]
pub struct VertexEnumeration {
    /// Sorted canonical vertices.
    pub vertices: Vec<SolutionVector>,
    pub complete: bool,
}

/// Vertices of P, optionally restricted to the face where y vanishes outside `columns`.
pub fn enumerate_vertices(
    inst: &OhcpInstance,
    columns: Option<&[usize]>,
    budget: usize,
) -> Result<VertexEnumeration, LpError> {
    let (m, n) = (inst.m(), inst.n());
    let t: Vec<usize> = match columns {
        Some(c) => c.to_vec(),
        None => (0..n).collect(),
    };
    let mut found: BTreeSet<SolutionVector> = BTreeSet::new();
    if t.is_empty() {
        found.insert(super::identity_solution(inst));
        return Ok(VertexEnumeration { vertices: found.into_iter().collect(), complete: true });
    }
    let b = inst.boundary();
    let mut g = RationalMatrix::zeros(m + t.len(), t.len());
    for i in 0..m {
        for (a, &k) in t.iter().enumerate() {
            let v = b.get(i, k);
            if v != 0 {
                g.set(i, a, Q::from_integer((v as i64).into()));
            }
        }
    }
    for a in 0..t.len() {
        g.set(m + a, a, Q::one());
    }
    let mut failure = None;
    let complete = for_each_row_basis(&g, budget, |rows| {
        let gs = g.select(rows, &(0..t.len()).collect::<Vec<_>>());
        let rhs: Vec<Q> = rows
            .iter()
            .map(|&r| if r < m { -inst.input()[r].clone() } else { Q::zero() })
            .collect();
        match solve_exact(&gs, &rhs) {
            Ok(Some(yt)) => {
                let mut y = vec![Q::zero(); n];
                for (a, &k) in t.iter().enumerate() {
                    y[k] = yt[a].clone();
                }
                let by = b.mul_vec(&y);
                let p: Vec<Q> = inst.input().iter().zip(by).map(|(c, v)| c + v).collect();
                found.insert(SolutionVector::from_coefficients(&p, &y));
                true
            }
            Ok(None) => {
                failure = Some(LpError::Internal("row basis gave a singular system".into()));
                false
            }
            Err(e) => {
                failure = Some(e.into());
                false
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(VertexEnumeration { vertices: found.into_iter().collect(), complete })
}
