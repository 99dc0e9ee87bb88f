//! Conciseness, basic-solution tests, kernel decompositions and projection to X.

use num::{Signed, Zero};

use super::{LpError, OhcpInstance, SolutionVector};
use crate::linalg::{kernel_basis, rank, solve_exact, RationalMatrix};
use crate::rational::Q;

pub fn identity_solution(inst: &OhcpInstance) -> SolutionVector {
    SolutionVector::from_coefficients(inst.input(), &vec![Q::zero(); inst.n()])
}

pub fn is_concise(z: &SolutionVector) -> bool {
    (0..z.len()).all(|i| z.get(i).is_zero() || z.get(z.opposite(i)).is_zero())
}

/// The unique nonnegative concise vector equivalent to z.
pub fn canonicalize_concise(z: &SolutionVector) -> SolutionVector {
    SolutionVector::from_coefficients(&z.p_coefficients(), &z.q_coefficients())
}

/// Every linear combination of the set is concise: across the union of
/// supports, no opposite pair is touched on both sides.
pub fn linearly_concise(set: &[&SolutionVector]) -> bool {
    let Some(first) = set.first() else {
        return true;
    };
    (0..first.len()).all(|i| {
        let j = first.opposite(i);
        let a = set.iter().any(|z| !z.get(i).is_zero());
        let b = set.iter().any(|z| !z.get(j).is_zero());
        !(a && b)
    })
}

fn support_columns(inst: &OhcpInstance, cols: &[usize]) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(inst.m(), cols.len());
    for (b, &j) in cols.iter().enumerate() {
        for (i, v) in inst.column(j) {
            a.set(i, b, Q::from_integer(v.into()));
        }
    }
    a
}

/// Columns of A on supp(z) are linearly independent.
pub fn is_basic_solution(inst: &OhcpInstance, z: &SolutionVector) -> Result<bool, LpError> {
    inst.check_solution(z)?;
    Ok(columns_independent(inst, z)?)
}

fn columns_independent(inst: &OhcpInstance, z: &SolutionVector) -> Result<bool, LpError> {
    let s = z.support();
    Ok(rank(&support_columns(inst, &s))? == s.len())
}

/// Basicness by the kernel-witness criterion: z is basic iff no nonzero
/// element of Ker(A) vanishes wherever z does.
pub struct KernelWitnessTest {
    basis: Vec<Vec<Q>>,
}

impl KernelWitnessTest {
    pub fn new(inst: &OhcpInstance) -> Result<Self, LpError> {
        Ok(KernelWitnessTest { basis: kernel_basis(&inst.constraint_matrix())? })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// A nonzero kernel element supported inside supp(z), if any.
    pub fn witness(&self, z: &SolutionVector) -> Result<Option<Vec<Q>>, LpError> {
        let zeros: Vec<usize> = (0..z.len()).filter(|&i| z.get(i).is_zero()).collect();
        let d = self.basis.len();
        let mut restricted = RationalMatrix::zeros(zeros.len(), d);
        for (a, &i) in zeros.iter().enumerate() {
            for (b, v) in self.basis.iter().enumerate() {
                restricted.set(a, b, v[i].clone());
            }
        }
        let comb = kernel_basis(&restricted)?;
        Ok(comb.first().map(|t| {
            (0..z.len())
                .map(|i| self.basis.iter().zip(t).fold(Q::zero(), |acc, (v, ti)| acc + &v[i] * ti))
                .collect()
        }))
    }

    pub fn is_basic(&self, inst: &OhcpInstance, z: &SolutionVector) -> Result<bool, LpError> {
        inst.check_solution(z)?;
        Ok(self.witness(z)?.is_none())
    }
}

fn kernel_direction_in_support(inst: &OhcpInstance, z: &SolutionVector) -> Result<Option<SolutionVector>, LpError> {
    let s = z.support();
    let k = kernel_basis(&support_columns(inst, &s))?;
    Ok(k.first().map(|v| {
        let mut d = SolutionVector::zeros(inst.m(), inst.n());
        for (a, &j) in s.iter().enumerate() {
            d.set(j, v[a].clone());
        }
        d
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDecomposition {
    pub z_c: SolutionVector,
    pub z_d: SolutionVector,
    /// z0 + z_c, a basic solution.
    pub z_1: SolutionVector,
    pub iterations: usize,
}

/// Splits zK = zC + zD when z0 + zK is not basic; `None` when it is.
pub fn decompose_against_basic(
    inst: &OhcpInstance,
    z0: &SolutionVector,
    zk: &SolutionVector,
) -> Result<Option<KernelDecomposition>, LpError> {
    inst.check_solution(z0)?;
    if !columns_independent(inst, z0)? {
        return Err(LpError::NotBasic);
    }
    if !inst.in_kernel(zk) {
        return Err(LpError::NotInKernel);
    }
    if !linearly_concise(&[z0, zk]) {
        return Err(LpError::NotLinearlyConcise);
    }
    let z = z0.add(zk);
    if columns_independent(inst, &z)? {
        return Ok(None);
    }
    let mut zd = SolutionVector::zeros(inst.m(), inst.n());
    let mut z1 = z.clone();
    let mut iterations = 0;
    while !columns_independent(inst, &z1)? {
        if iterations > inst.n() {
            return Err(LpError::Internal("kernel decomposition did not terminate".into()));
        }
        let zn = kernel_direction_in_support(inst, &z1)?
            .ok_or_else(|| LpError::Internal("nonbasic point without kernel witness".into()))?;
        let y_range = 2 * inst.m()..zn.len();
        let pick = y_range
            .filter(|&j| !zn.get(j).is_zero())
            .min_by(|&a, &b| (z1.get(a) / zn.get(a)).abs().cmp(&(z1.get(b) / zn.get(b)).abs()))
            .ok_or_else(|| LpError::Internal("kernel witness without y-entry".into()))?;
        let alpha = z1.get(pick) / zn.get(pick);
        let step = zn.scale(&alpha);
        zd = zd.add(&step);
        z1 = z1.sub(&step);
        iterations += 1;
    }
    let zc = zk.sub(&zd);
    let dec = KernelDecomposition { z_c: zc, z_d: zd, z_1: z1, iterations };
    verify_decomposition(inst, z0, zk, &z, &dec)?;
    Ok(Some(dec))
}

fn verify_decomposition(
    inst: &OhcpInstance,
    z0: &SolutionVector,
    zk: &SolutionVector,
    z: &SolutionVector,
    d: &KernelDecomposition,
) -> Result<(), LpError> {
    let fail = |what: &str| Err(LpError::Internal(format!("decomposition property failed: {what}")));
    if d.z_c.add(&d.z_d) != *zk {
        return fail("zC + zD = zK");
    }
    if !inst.in_kernel(&d.z_c) || !inst.in_kernel(&d.z_d) {
        return fail("kernel membership");
    }
    if d.z_d.is_zero() {
        return fail("zD nonzero");
    }
    if !linearly_concise(&[z0, zk, &d.z_d]) {
        return fail("linear conciseness");
    }
    if z0.add(&d.z_c) != d.z_1 || !columns_independent(inst, &d.z_1)? {
        return fail("z0 + zC basic");
    }
    let m2 = 2 * inst.m();
    if (m2..z.len()).any(|j| !d.z_1.get(j).is_zero() && z.get(j).is_zero()) {
        return fail("no new y-entries");
    }
    if (0..m2).any(|i| !d.z_d.get(i).is_zero() && z.get(i).is_zero()) {
        return fail("zD inside supp(z) on x");
    }
    Ok(())
}

/// Columns Z_i with Z·c = z, each basic for its elementary instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryDecomposition {
    pub columns: Vec<SolutionVector>,
    /// False when peeling stalled and the columns come from an extended
    /// column basis instead.
    pub peeled: bool,
}

impl ElementaryDecomposition {
    pub fn combine(&self, c: &[Q]) -> SolutionVector {
        let first = &self.columns[0];
        let mut acc = SolutionVector::zeros(first.m(), first.n());
        for (zi, ci) in self.columns.iter().zip(c) {
            if !ci.is_zero() {
                acc = acc.add(&zi.scale(ci));
            }
        }
        acc
    }
}

pub fn decompose_into_elementary(inst: &OhcpInstance, z: &SolutionVector) -> Result<ElementaryDecomposition, LpError> {
    inst.check_solution(z)?;
    if !columns_independent(inst, z)? {
        return Err(LpError::NotBasic);
    }
    let zi = identity_solution(inst);
    if !linearly_concise(&[z, &zi]) {
        return Err(LpError::NotLinearlyConcise);
    }
    if inst.m() == 0 {
        return Ok(ElementaryDecomposition { columns: Vec::new(), peeled: true });
    }
    let c = inst.input().to_vec();
    let dec = match peel(inst, z, zi)? {
        Some(columns) => ElementaryDecomposition { columns, peeled: true },
        None => ElementaryDecomposition { columns: extended_basis_columns(inst, z)?, peeled: false },
    };
    if dec.combine(&c) != *z {
        return Err(LpError::Internal("Z·c differs from z".into()));
    }
    for (i, col) in dec.columns.iter().enumerate() {
        if c[i].is_zero() {
            continue;
        }
        let e = inst.elementary(i, true);
        if !e.satisfies_constraints(col) || !columns_independent(&e, col)? {
            return Err(LpError::Internal(format!("column {i} is not basic for its elementary instance")));
        }
    }
    Ok(dec)
}

/// Peels z^C fragments of z − z^I onto the columns of rows whose input is
/// nonzero. `None` when no candidate row yields a nonempty fragment.
fn peel(inst: &OhcpInstance, z: &SolutionVector, zi: SolutionVector) -> Result<Option<Vec<SolutionVector>>, LpError> {
    let (m, n) = (inst.m(), inst.n());
    let c = inst.input().to_vec();
    let mut cols: Vec<SolutionVector> = (0..m)
        .map(|i| {
            let mut col = SolutionVector::zeros(m, n);
            let minus = !zi.get(m + i).is_zero() || (zi.get(i).is_zero() && !z.get(m + i).is_zero());
            if minus {
                col.set(m + i, -Q::from_integer(1.into()));
            } else {
                col.set(i, Q::from_integer(1.into()));
            }
            col
        })
        .collect();
    let mut z0 = zi;
    let mut zk = z.sub(&z0);
    let mut used = Vec::new();
    'peel: while !zk.is_zero() {
        let candidates: Vec<usize> = (0..2 * m)
            .filter(|&i| !z0.get(i).is_zero() && z.get(i).is_zero() && !used.contains(&(i % m)))
            .map(|i| i % m)
            .collect();
        if candidates.is_empty() {
            return Ok(None);
        }
        for row in candidates {
            let ci = c[row].clone();
            if ci.is_zero() {
                return Err(LpError::Internal("peeled row has zero input".into()));
            }
            let mut unit = vec![Q::zero(); m];
            unit[row] = ci.clone();
            let sub = inst.with_input(unit)?;
            let base = cols[row].scale(&ci);
            match decompose_against_basic(&sub, &base, &zk)? {
                None => {
                    cols[row] = cols[row].add(&zk.scale(&ci.recip()));
                    zk = SolutionVector::zeros(m, n);
                }
                Some(d) if d.z_c.is_zero() => continue,
                Some(d) => {
                    cols[row] = cols[row].add(&d.z_c.scale(&ci.recip()));
                    z0 = z0.add(&d.z_c);
                    zk = d.z_d;
                }
            }
            used.push(row);
            continue 'peel;
        }
        return Ok(None);
    }
    Ok(Some(cols))
}

/// Extends supp(z) to a column basis of A with x-columns and solves
/// A Z_i = e_i on it. Every column is basic, and z is the unique point on
/// that basis with A z = c, so Z·c = z.
fn extended_basis_columns(inst: &OhcpInstance, z: &SolutionVector) -> Result<Vec<SolutionVector>, LpError> {
    let (m, n) = (inst.m(), inst.n());
    let mut basis = z.support();
    for i in 0..m {
        let j = if inst.input()[i].is_negative() { m + i } else { i };
        let mut trial = basis.clone();
        trial.push(j);
        if rank(&support_columns(inst, &trial))? == trial.len() {
            basis = trial;
        }
    }
    let a = support_columns(inst, &basis);
    let mut cols = Vec::with_capacity(m);
    for i in 0..m {
        let mut e = vec![Q::zero(); m];
        e[i] = Q::from_integer(1.into());
        let t = solve_exact(&a, &e)?.ok_or_else(|| LpError::Internal("extended basis does not span".into()))?;
        let mut col = SolutionVector::zeros(m, n);
        for (v, &j) in t.into_iter().zip(&basis) {
            col.set(j, v);
        }
        cols.push(col);
    }
    Ok(cols)
}

/// Moves the integral part of the q-coefficients into the input chain.
pub fn strip_integral_y(inst: &OhcpInstance, z: &SolutionVector) -> Result<(OhcpInstance, SolutionVector), LpError> {
    inst.check_solution(z)?;
    if z.is_integral() {
        return Err(LpError::IntegralSolution);
    }
    if !columns_independent(inst, z)? {
        return Err(LpError::NotBasic);
    }
    let (m, n) = (inst.m(), inst.n());
    let mut cur_inst = inst.clone();
    let mut cur = z.clone();
    for _ in 0..=n {
        let q = cur.q_coefficients();
        let moved: Vec<Q> = q.iter().map(|v| if v.is_integer() { v.clone() } else { Q::zero() }).collect();
        if moved.iter().all(|v| v.is_zero()) {
            if !columns_independent(&cur_inst, &cur)? {
                return Err(LpError::Internal("stripped solution is not basic".into()));
            }
            return Ok((cur_inst, cur));
        }
        let bq = inst.boundary().mul_vec(&moved);
        let c: Vec<Q> = cur_inst.input().iter().zip(bq).map(|(a, b)| a + b).collect();
        for k in 0..n {
            if !moved[k].is_zero() {
                cur.set(2 * m + k, Q::zero());
                cur.set(2 * m + n + k, Q::zero());
            }
        }
        cur_inst = cur_inst.with_input(c)?;
        cur_inst.check_solution(&cur).map_err(|_| LpError::Internal("stripping broke A z = c".into()))?;
    }
    Err(LpError::Internal("stripping did not terminate".into()))
}

pub fn project_to_x(z: &SolutionVector) -> Vec<Q> {
    z.entries()[..2 * z.m()].to_vec()
}

fn fiber_point(inst: &OhcpInstance, x: &[Q]) -> Result<Option<Vec<Q>>, LpError> {
    let m = inst.m();
    if x.len() != 2 * m {
        return Err(LpError::DimensionMismatch { expected: 2 * m, found: x.len() });
    }
    let rhs: Vec<Q> = (0..m).map(|i| &x[i] - &x[m + i] - &inst.input()[i]).collect();
    if inst.n() == 0 {
        return Ok(rhs.iter().all(|v| v.is_zero()).then(Vec::new));
    }
    let b = RationalMatrix::from_i64(&inst.boundary().to_dense())?;
    Ok(solve_exact(&b, &rhs)?)
}

/// Basic in the projection: no nonzero element of Ker(A)↾X lies inside supp(x).
pub fn is_basic_solution_x(inst: &OhcpInstance, x: &[Q]) -> Result<bool, LpError> {
    if fiber_point(inst, x)?.is_none() {
        return Err(LpError::NotProjection);
    }
    let (m, n) = (inst.m(), inst.n());
    // Ker(A)↾X = {(a + B t, a)}; restrict to coordinates where x vanishes
    let zeros: Vec<usize> = (0..2 * m).filter(|&i| x[i].is_zero()).collect();
    let mut k = RationalMatrix::zeros(zeros.len(), m + n);
    for (r, &i) in zeros.iter().enumerate() {
        let row = i % m;
        k.set(r, row, Q::from_integer(1.into()));
        if i < m {
            for &(j, s) in inst.boundary().row(row) {
                k.set(r, m + j, Q::from_integer((s as i64).into()));
            }
        }
    }
    let b_rank = if n == 0 { 0 } else { rank(&RationalMatrix::from_i64(&inst.boundary().to_dense())?)? };
    Ok(rank(&k)? == m + b_rank)
}

/// Solution vector with the given x-part and a y-part placed concisely.
pub fn compose_from_x(x: &[Q], y: &[Q]) -> SolutionVector {
    let m = x.len() / 2;
    let mut z = SolutionVector::from_coefficients(&vec![Q::zero(); m], y);
    for (i, v) in x.iter().enumerate() {
        z.set(i, v.clone());
    }
    z
}

/// A basic solution over x: walk the fiber y0 + Ker(B) to a point whose
/// y-support has independent B-columns.
pub fn preimage_vertex(inst: &OhcpInstance, x: &[Q]) -> Result<SolutionVector, LpError> {
    let mut y = fiber_point(inst, x)?.ok_or(LpError::NotProjection)?;
    let b = RationalMatrix::from_i64(&inst.boundary().to_dense())?;
    for _ in 0..=inst.n() {
        let supp: Vec<usize> = (0..y.len()).filter(|&k| !y[k].is_zero()).collect();
        let kb = kernel_basis(&b.select_columns(&supp))?;
        let Some(t) = kb.first() else {
            return Ok(compose_from_x(x, &y));
        };
        let (a, _) = t
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(a, v)| (a, (&y[supp[a]] / v).abs()))
            .min_by(|l, r| l.1.cmp(&r.1))
            .expect("nonzero kernel vector");
        let alpha = &y[supp[a]] / &t[a];
        for (a2, v) in t.iter().enumerate() {
            y[supp[a2]] -= &alpha * v;
        }
        y[supp[a]] = Q::zero();
    }
    Err(LpError::Internal("fiber walk did not terminate".into()))
}
