//! Brute-force second implementation of the LP optimum: every column
//! support with independent columns, solved directly.

use num::{Signed, Zero};


use super::{LpError, OhcpInstance, SolutionVector};
use crate::linalg::{rank, solve_exact, RationalMatrix};
use crate::rational::Q;

pub const ORACLE_COLUMN_LIMIT: usize = 16;

#[derive(Debug, Clone)]
pub struct OracleOptimum {
    pub objective: Q,
    /// All optimal basic feasible solutions, sorted.
    pub vertices: Vec<SolutionVector>,
    pub supports_checked: usize,
}

pub fn brute_force_optimum(inst: &OhcpInstance) -> Result<OracleOptimum, LpError> {
    let cols = inst.num_columns();
    if cols > ORACLE_COLUMN_LIMIT {
        return Err(LpError::OracleTooLarge { columns: cols, limit: ORACLE_COLUMN_LIMIT });
    }
    let m = inst.m();
    let a = inst.constraint_matrix();
    let mut best: Option<Q> = None;
    let mut vertices: Vec<SolutionVector> = Vec::new();
    let mut checked = 0;
    for mask in 0u32..(1u32 << cols) {
        let s: Vec<usize> = (0..cols).filter(|j| mask >> j & 1 == 1).collect();
        if s.len() > m {
            continue;
        }
        checked += 1;
        let sub: RationalMatrix = a.select_columns(&s);
        if rank(&sub)? != s.len() {
            continue;
        }
        let Some(zs) = solve_exact(&sub, inst.input())? else {
            continue;
        };
        if zs.iter().any(|v| v.is_negative() || v.is_zero()) {
            continue;
        }
        let mut z = SolutionVector::zeros(m, inst.n());
        for (k, &j) in s.iter().enumerate() {
            z.set(j, zs[k].clone());
        }
        let f = inst.objective(&z);
        match &best {
            Some(b) if f > *b => {}
            Some(b) if f == *b => vertices.push(z),
            _ => {
                best = Some(f);
                vertices = vec![z];
            }
        }
    }
    let objective = best.ok_or_else(|| LpError::Internal("no feasible support".into()))?;
    vertices.sort();
    vertices.dedup();
    Ok(OracleOptimum { objective, vertices, supports_checked: checked })
}
