//! Unit nulls of an MNTUS, the elementary fractional vertices z^i,
//! neutralizing chains, and the two decision procedures for NTU
//! neutralization.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::linalg::{for_each_row_basis, homology, solve_exact, LinalgError, RationalMatrix};
use crate::lp::{
    identity_solution, is_basic_solution, is_basic_solution_x, is_concise, project_to_x, LpError, OhcpInstance,
    SolutionVector,
};
use crate::rational::{frac, int, Q};
use crate::tu::{bipartite_graph, find_mntus_in_graph, MntuCertificate, TuError};

mod projection;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NeutralizationError {
    #[error("row {row} is not an interior row of the certificate")]
    NotInterior { row: usize },
    #[error("solution vector is not concise")]
    NotConcise,
    #[error("certificate does not match the chain or vertex: {0}")]
    Mismatch(String),
    #[error("shortcut needs a 2-complex, top dimension is {0}")]
    NotTwoComplex(usize),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Tu(#[from] TuError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

type Result<T> = std::result::Result<T, NeutralizationError>;

fn internal(s: &str) -> NeutralizationError {
    NeutralizationError::Internal(s.into())
}

fn interior_position(cert: &MntuCertificate, i: usize) -> Result<usize> {
    cert.rows.iter().position(|&r| r == i).ok_or(NeutralizationError::NotInterior { row: i })
}

/// 2·M⁻¹, which is integral because det M = ±2.
fn doubled_inverse(cert: &MntuCertificate) -> Result<Vec<Vec<i64>>> {
    let k = cert.size();
    let m = RationalMatrix::from_i64(&cert.matrix)?;
    let mut w = vec![vec![0i64; k]; k];
    for a in 0..k {
        let mut rhs = vec![Q::zero(); k];
        rhs[a] = int(2);
        let col = solve_exact(&m, &rhs)?.ok_or_else(|| internal("MNTU submatrix is singular"))?;
        for (b, v) in col.iter().enumerate() {
            if !v.is_integer() {
                return Err(internal("2·M⁻¹ is not integral"));
            }
            w[b][a] = v.to_integer().to_i64().ok_or_else(|| internal("2·M⁻¹ entry overflow"))?;
        }
    }
    Ok(w)
}

/// q-coefficients (full length n) of the element of 𝓜 whose interior
/// p-coefficients are `interior` (indexed like cert.rows).
fn null_q_coefficients(cert: &MntuCertificate, w: &[Vec<i64>], interior: &[Q], n: usize) -> Vec<Q> {
    let mut q = vec![Q::zero(); n];
    for (b, &col) in cert.cols.iter().enumerate() {
        let s: Q = w[b].iter().zip(interior).map(|(&wv, p)| p * int(wv)).sum();
        q[col] = s / int(2);
    }
    q
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitNull {
    pub row: usize,
    /// Kernel element with canonical concise placement.
    pub element: SolutionVector,
}

impl UnitNull {
    pub fn p_coefficients(&self) -> Vec<Q> {
        self.element.p_coefficients()
    }

    pub fn q_coefficients(&self) -> Vec<Q> {
        self.element.q_coefficients()
    }
}

pub fn unit_null(inst: &OhcpInstance, cert: &MntuCertificate, i: usize) -> Result<UnitNull> {
    let a = interior_position(cert, i)?;
    let w = doubled_inverse(cert)?;
    let mut e = vec![Q::zero(); cert.size()];
    e[a] = int(1);
    let q = null_q_coefficients(cert, &w, &e, inst.n());
    let p = inst.boundary().mul_vec(&q);
    let element = SolutionVector::from_coefficients(&p, &q);
    if !inst.in_kernel(&element) {
        return Err(internal("unit null is not in Ker(A)"));
    }
    let half = frac(1, 2);
    for (k, v) in q.iter().enumerate() {
        let on_q = cert.cols.contains(&k);
        if on_q != (v.abs() == half) || (!on_q && !v.is_zero()) {
            return Err(internal("unit null q-coefficient is not ±1/2 on Q_M"));
        }
    }
    for &r in &cert.rows {
        if p[r] != if r == i { int(1) } else { Q::zero() } {
            return Err(internal("unit null interior p-coefficients differ from e_i"));
        }
    }
    Ok(UnitNull { row: i, element })
}

/// m(z): the element of 𝓜 agreeing with z on interior p-coefficients,
/// linearly concise with z, and nonpositive wherever z vanishes.
pub fn m_of(inst: &OhcpInstance, z: &SolutionVector, cert: &MntuCertificate) -> Result<SolutionVector> {
    if !is_concise(z) {
        return Err(NeutralizationError::NotConcise);
    }
    let w = doubled_inverse(cert)?;
    let zp = z.p_coefficients();
    let interior: Vec<Q> = cert.rows.iter().map(|&r| zp[r].clone()).collect();
    let q = null_q_coefficients(cert, &w, &interior, inst.n());
    let p = inst.boundary().mul_vec(&q);
    let (m, n) = (inst.m(), inst.n());
    let mut out = SolutionVector::zeros(m, n);
    let pairs = (0..m).map(|i| (i, &p[i])).chain((0..n).map(|k| (2 * m + k, &q[k])));
    for (plus, t) in pairs {
        if t.is_zero() {
            continue;
        }
        let minus = z.opposite(plus);
        if !z.get(plus).is_zero() {
            out.set(plus, t.clone());
        } else if !z.get(minus).is_zero() || t.is_positive() {
            out.set(minus, -t.clone());
        } else {
            out.set(plus, t.clone());
        }
    }
    if !inst.in_kernel(&out) {
        return Err(internal("m(z) is not in Ker(A)"));
    }
    Ok(out)
}

/// z^i = z^I − m(z^I) for the elementary input ±e_i.
pub fn elementary_fractional_vertex(
    inst: &OhcpInstance,
    cert: &MntuCertificate,
    i: usize,
    positive: bool,
) -> Result<SolutionVector> {
    interior_position(cert, i)?;
    let e = inst.elementary(i, positive);
    let zi_identity = identity_solution(&e);
    let mz = m_of(&e, &zi_identity, cert)?;
    let z = zi_identity.sub(&mz);
    if !e.is_feasible(&z) {
        return Err(internal("z^i is infeasible"));
    }
    if !is_basic_solution(&e, &z)? {
        return Err(internal("z^i is not basic"));
    }
    let p = z.p_coefficients();
    if cert.rows.iter().any(|&r| !p[r].is_zero()) {
        return Err(internal("z^i has a nonzero interior p-coefficient"));
    }
    let q = z.q_coefficients();
    if q.iter().enumerate().any(|(k, v)| v.is_zero() == cert.cols.contains(&k)) {
        return Err(internal("z^i q-support differs from Q_M"));
    }
    Ok(z)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeutralizingChain {
    /// The integer q-coefficients u with k = (B u, u).
    pub u: Vec<i64>,
    pub k: SolutionVector,
    pub m_k: SolutionVector,
    /// k − m(k).
    pub difference: SolutionVector,
    pub interior_sum: i64,
}

impl NeutralizingChain {
    /// Rechecks the defining conditions against z^i in exact arithmetic.
    pub fn verify(&self, inst: &OhcpInstance, cert: &MntuCertificate, z_i: &SolutionVector) -> Result<()> {
        let bad = |s: &str| Err(NeutralizationError::Mismatch(s.into()));
        if !self.k.is_integral() || !inst.in_kernel(&self.k) || !is_concise(&self.k) {
            return bad("k is not a concise integral kernel element");
        }
        let kp = self.k.p_coefficients();
        let sum: Q = cert.rows.iter().map(|&r| kp[r].clone()).sum();
        if sum != int(self.interior_sum) || self.interior_sum % 2 == 0 {
            return bad("interior p-coefficient sum is not odd");
        }
        if m_of(inst, &self.k, cert)? != self.m_k || self.k.sub(&self.m_k) != self.difference {
            return bad("stored m(k) or difference is stale");
        }
        if project_to_x(&self.difference).iter().all(Zero::is_zero) {
            return bad("(k − m(k)) vanishes on X");
        }
        let dp = self.difference.p_coefficients();
        let zp = z_i.p_coefficients();
        if dp.iter().zip(&zp).any(|(d, z)| d.abs() > z.abs()) {
            return bad("p-coefficients of k − m(k) exceed those of z^i");
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ChainSearch {
    pub chain: Option<NeutralizingChain>,
    pub nodes: usize,
    pub exhausted: bool,
}

/// Lattice search for k = N·u over the q-block of N: integer u with
/// ‖u‖∞ ≤ radius. Returns the certificate of least ℓ1 norm. Columns meeting
/// an interior row are assigned first, each coordinate trying 0, 1, −1, 2,
/// −2, …; ties go to the first certificate met in that order.
pub fn search_neutralizing_chain(
    inst: &OhcpInstance,
    cert: &MntuCertificate,
    z_i: &SolutionVector,
    radius: usize,
    node_budget: usize,
) -> Result<ChainSearch> {
    let b = inst.boundary().to_dense();
    let (m, n) = (inst.m(), inst.n());
    let w = doubled_inverse(cert)?;
    let bound2: Vec<i64> = z_i
        .p_coefficients()
        .iter()
        .map(|v| (v.abs() * int(2)).to_integer().to_i64().unwrap_or(i64::MAX))
        .collect();
    let interior: BTreeSet<usize> = cert.rows.iter().copied().collect();
    let meets_interior = |c: usize| (0..m).any(|j| b[j][c] != 0 && interior.contains(&j));
    let mut order: Vec<usize> = (0..n).filter(|&c| meets_interior(c)).collect();
    let prefix = order.len();
    order.extend((0..n).filter(|&c| !meets_interior(c)));
    let mut position = vec![0; n];
    for (t, &c) in order.iter().enumerate() {
        position[c] = t;
    }
    let touched: BTreeSet<usize> =
        cert.cols.iter().flat_map(|&c| inst.boundary().column(c).iter().map(|e| e.0)).collect();
    // each non-interior row is checked once its columns (and, if Q_M meets it, v) are known
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in (0..m).filter(|j| !interior.contains(j)) {
        let Some(last) = (0..n).filter(|&c| b[j][c] != 0).map(|c| position[c]).max() else {
            continue;
        };
        let at = if touched.contains(&j) { last.max(prefix - 1) } else { last };
        checks[at].push(j);
    }
    let r = radius as i64;
    let mut values = vec![0i64];
    for v in 1..=r {
        values.extend([v, -v]);
    }
    let mut s = LatticeSearch {
        b: &b,
        cert,
        w: &w,
        bound2: &bound2,
        order,
        prefix,
        checks,
        values,
        u: vec![0; n],
        bu: vec![0; m],
        v2: vec![0; cert.size()],
        l1: 0,
        nodes: 0,
        budget: node_budget,
        exhausted: false,
        best: None,
    };
    s.dfs(0);
    let chain = match s.best.take() {
        Some((_, u)) => Some(build_chain(inst, cert, &u)?),
        None => None,
    };
    if let Some(c) = &chain {
        c.verify(inst, cert, z_i)?;
    }
    Ok(ChainSearch { chain, nodes: s.nodes, exhausted: s.exhausted })
}

pub fn find_neutralizing_chain(
    inst: &OhcpInstance,
    cert: &MntuCertificate,
    i: usize,
    radius: usize,
) -> Result<Option<NeutralizingChain>> {
    let z_i = elementary_fractional_vertex(inst, cert, i, true)?;
    let e = inst.elementary(i, true);
    Ok(search_neutralizing_chain(&e, cert, &z_i, radius, usize::MAX)?.chain)
}

fn build_chain(inst: &OhcpInstance, cert: &MntuCertificate, u: &[i64]) -> Result<NeutralizingChain> {
    let uq: Vec<Q> = u.iter().map(|&v| int(v)).collect();
    let k = inst.kernel_element(&uq);
    let m_k = m_of(inst, &k, cert)?;
    let difference = k.sub(&m_k);
    let kp = k.p_coefficients();
    let sum: Q = cert.rows.iter().map(|&r| kp[r].clone()).sum();
    let interior_sum = sum.to_integer().to_i64().ok_or_else(|| internal("interior sum overflow"))?;
    Ok(NeutralizingChain { u: u.to_vec(), k, m_k, difference, interior_sum })
}

struct LatticeSearch<'a> {
    b: &'a [Vec<i64>],
    cert: &'a MntuCertificate,
    w: &'a [Vec<i64>],
    bound2: &'a [i64],
    order: Vec<usize>,
    prefix: usize,
    checks: Vec<Vec<usize>>,
    values: Vec<i64>,
    u: Vec<i64>,
    bu: Vec<i64>,
    /// 2v on Q_M, valid once the prefix is assigned.
    v2: Vec<i64>,
    l1: i64,
    nodes: usize,
    budget: usize,
    exhausted: bool,
    best: Option<(i64, Vec<i64>)>,
}

impl LatticeSearch<'_> {
    fn dfs(&mut self, t: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if t == self.order.len() {
            if self.l1 > 0 && (0..self.bu.len()).any(|j| self.diff2(j) != 0) {
                self.best = Some((self.l1, self.u.clone()));
            }
            return;
        }
        let col = self.order[t];
        for a in 0..self.values.len() {
            let v = self.values[a];
            if self.best.as_ref().is_some_and(|(l, _)| self.l1 + v.abs() >= *l) {
                break;
            }
            self.set(col, v);
            if self.admissible(t) {
                self.dfs(t + 1);
            }
            self.set(col, 0);
            if self.exhausted {
                return;
            }
        }
    }

    fn admissible(&mut self, t: usize) -> bool {
        if t + 1 == self.prefix {
            let interior: Vec<i64> = self.cert.rows.iter().map(|&r| self.bu[r]).collect();
            if interior.iter().sum::<i64>().rem_euclid(2) != 1 {
                return false;
            }
            self.v2 = self.w.iter().map(|row| row.iter().zip(&interior).map(|(a, b)| a * b).sum()).collect();
        }
        self.checks[t].iter().all(|&j| self.diff2(j).abs() <= self.bound2[j])
    }

    /// 2·(B(u − v))_j.
    fn diff2(&self, j: usize) -> i64 {
        let row = &self.b[j];
        let bv2: i64 = self.cert.cols.iter().zip(&self.v2).map(|(&c, v)| row[c] * v).sum();
        2 * self.bu[j] - bv2
    }

    fn set(&mut self, col: usize, v: i64) {
        let d = v - self.u[col];
        if d != 0 {
            for (j, row) in self.b.iter().enumerate() {
                if row[col] != 0 {
                    self.bu[j] += d * row[col];
                }
            }
            self.l1 += v.abs() - self.u[col].abs();
            self.u[col] = v;
        }
    }
}

/// z1 = z^i + (k − m(k)) and z2 = z^i − (k − m(k)), canonicalized; both
/// integral, and z^i↾X is their midpoint.
pub fn neutralized_vertex_decomposition(
    inst: &OhcpInstance,
    cert: &MntuCertificate,
    z_i: &SolutionVector,
    chain: &NeutralizingChain,
) -> Result<(SolutionVector, SolutionVector)> {
    chain.verify(inst, cert, z_i)?;
    let d = &chain.difference;
    let zp = z_i.p_coefficients();
    let zq = z_i.q_coefficients();
    let dp = d.p_coefficients();
    let dq = d.q_coefficients();
    let plus = |a: &[Q], b: &[Q], s: i64| -> Vec<Q> { a.iter().zip(b).map(|(x, y)| x + y * int(s)).collect() };
    let z1 = SolutionVector::from_coefficients(&plus(&zp, &dp, 1), &plus(&zq, &dq, 1));
    let z2 = SolutionVector::from_coefficients(&plus(&zp, &dp, -1), &plus(&zq, &dq, -1));
    for z in [&z1, &z2] {
        if !z.is_integral() || !inst.is_feasible(z) {
            return Err(NeutralizationError::Mismatch("decomposed point is not an integral solution".into()));
        }
    }
    let (x1, x2, x) = (project_to_x(&z1), project_to_x(&z2), project_to_x(z_i));
    let half = frac(1, 2);
    if x.iter().zip(x1.iter().zip(&x2)).any(|(v, (a, b))| *v != (a + b) * &half) {
        return Err(NeutralizationError::Mismatch("z^i↾X is not the midpoint".into()));
    }
    Ok((z1, z2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Procedure {
    Projection,
    Definition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    /// No MNTU submatrix at all.
    YesVacuous,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionWitness {
    /// A nonintegral vertex of P_i whose projection is a vertex of P_i↾X.
    pub vertex: SolutionVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellVerdict {
    /// Definition procedure: a neutralizing chain for this row and sign.
    Chain(NeutralizingChain),
    /// Projection procedure: every projection vertex was checked and none
    /// lifts to a nonintegral vertex.
    Census { projection_vertices: usize, fiber_vertices: usize },
    NotNeutralized(ProjectionWitness),
    Unknown { reason: String },
}

impl CellVerdict {
    pub fn is_neutralized(&self) -> bool {
        matches!(self, CellVerdict::Chain(_) | CellVerdict::Census { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Index into the report's MNTUS list; None for per-instance cells.
    pub mntus: Option<usize>,
    pub row: usize,
    pub positive: bool,
    pub verdict: CellVerdict,
}

#[derive(Debug, Clone)]
pub struct NeutralizationReport {
    pub procedure: Procedure,
    pub q: usize,
    pub mntus: Vec<MntuCertificate>,
    pub mntus_complete: bool,
    pub cells: Vec<Cell>,
    pub verdict: Verdict,
    pub radius: Option<usize>,
    pub budget: usize,
}

impl NeutralizationReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| matches!(c.verdict, CellVerdict::NotNeutralized(_)))
    }

    fn settle(&mut self) {
        self.verdict = if self.mntus.is_empty() && self.mntus_complete {
            Verdict::YesVacuous
        } else if self.witnesses().next().is_some() {
            Verdict::No
        } else if self.mntus_complete && self.cells.iter().all(|c| c.verdict.is_neutralized()) {
            Verdict::Yes
        } else {
            Verdict::Unknown
        };
    }
}

fn uniform_instance(k: &Arc<SimplicialComplex>, q: usize) -> Result<OhcpInstance> {
    let b = Arc::new(k.boundary_matrix(q)?);
    let w = Arc::new(vec![int(1); b.m()]);
    Ok(OhcpInstance::new(k.clone(), b.clone(), vec![Q::zero(); b.m()], w)?)
}

fn mntus_of(inst: &OhcpInstance, budget: usize) -> (Vec<MntuCertificate>, bool) {
    let s = find_mntus_in_graph(&bipartite_graph(inst.boundary()), budget);
    (s.certificates, s.complete)
}

/// Decides neutralization from vertices: for every elementary input ±e_i,
/// each vertex of P_i↾X is lifted to the vertices of P_i above it, and a
/// nonintegral lift is a witness against neutralization. `budget` caps the
/// bases visited per cell.
pub fn decide_by_projection(k: &Arc<SimplicialComplex>, q: usize, budget: usize) -> Result<NeutralizationReport> {
    let inst = uniform_instance(k, q)?;
    let (mntus, mntus_complete) = mntus_of(&inst, budget.saturating_mul(64));
    let mut report = NeutralizationReport {
        procedure: Procedure::Projection,
        q,
        mntus,
        mntus_complete,
        cells: Vec::new(),
        verdict: Verdict::Unknown,
        radius: None,
        budget,
    };
    if report.mntus.is_empty() && report.mntus_complete {
        report.settle();
        return Ok(report);
    }
    let m = inst.m();
    let b = RationalMatrix::from_i64(&inst.boundary().to_dense())?;
    let bt = b.transpose();
    let mut col_bases: Vec<Vec<usize>> = Vec::new();
    let col_complete = for_each_row_basis(&bt, budget, |s| {
        col_bases.push(s.to_vec());
        true
    })?;
    let (row_complete, points) = projection::projection_points(&inst.boundary().to_dense(), m, inst.n(), budget)?;
    for i in 0..m {
        for positive in [true, false] {
            let e = inst.elementary(i, positive);
            let verdict = if !row_complete || !col_complete {
                CellVerdict::Unknown { reason: format!("basis budget {budget} exhausted") }
            } else {
                let xs: BTreeSet<Vec<Q>> = points[i]
                    .iter()
                    .map(|x| x.iter().map(|v| if positive { v.clone() } else { -v }).collect())
                    .collect();
                projection_cell(&e, &b, &col_bases, &xs)?
            };
            report.cells.push(Cell { mntus: None, row: i, positive, verdict });
        }
    }
    report.settle();
    Ok(report)
}

fn projection_cell(
    e: &OhcpInstance,
    b: &RationalMatrix,
    col_bases: &[Vec<usize>],
    xs: &BTreeSet<Vec<Q>>,
) -> Result<CellVerdict> {
    let (m, n) = (e.m(), e.n());
    let mut fiber_vertices = 0;
    for p in xs {
        let rhs: Vec<Q> = p.iter().zip(e.input()).map(|(a, c)| a - c).collect();
        let mut lifts: BTreeSet<SolutionVector> = BTreeSet::new();
        if n == 0 || col_bases.is_empty() {
            lifts.insert(SolutionVector::from_coefficients(p, &vec![Q::zero(); n]));
        }
        for s in col_bases {
            let sub = b.select(&(0..m).collect::<Vec<_>>(), s);
            let ys = solve_exact(&sub, &rhs)?.ok_or_else(|| internal("projection vertex has no lift"))?;
            let mut y = vec![Q::zero(); n];
            for (a, &col) in s.iter().enumerate() {
                y[col] = ys[a].clone();
            }
            lifts.insert(SolutionVector::from_coefficients(p, &y));
        }
        fiber_vertices += lifts.len();
        let x = project_to_x(lifts.first().expect("at least one lift"));
        if !is_basic_solution_x(e, &x)? {
            return Err(internal("row-basis point is not basic in the projection"));
        }
        if let Some(z) = lifts.into_iter().find(|z| !z.is_integral()) {
            if !is_basic_solution(e, &z)? {
                return Err(internal("lifted point is not a vertex"));
            }
            return Ok(CellVerdict::NotNeutralized(ProjectionWitness { vertex: z }));
        }
    }
    Ok(CellVerdict::Census { projection_vertices: xs.len(), fiber_vertices })
}

/// Searches a neutralizing chain for every (MNTUS, interior row, sign).
/// Absence within the radius gives "unknown", never "no".
pub fn decide_by_definition(
    k: &Arc<SimplicialComplex>,
    q: usize,
    radius: usize,
    budget: usize,
) -> Result<NeutralizationReport> {
    let inst = uniform_instance(k, q)?;
    let (mntus, mntus_complete) = mntus_of(&inst, budget);
    let mut report = NeutralizationReport {
        procedure: Procedure::Definition,
        q,
        mntus,
        mntus_complete,
        cells: Vec::new(),
        verdict: Verdict::Unknown,
        radius: Some(radius),
        budget,
    };
    let mut cache: HashMap<(usize, Vec<Q>), Option<Vec<i64>>> = HashMap::new();
    for (t, cert) in report.mntus.iter().enumerate() {
        for &i in &cert.rows {
            for positive in [true, false] {
                let e = inst.elementary(i, positive);
                let z_i = elementary_fractional_vertex(&inst, cert, i, positive)?;
                let pattern: Vec<Q> = z_i.p_coefficients().iter().map(|v| v.abs()).collect();
                let key = (t, pattern);
                let verdict = match cache.get(&key) {
                    Some(Some(u)) => {
                        let c = build_chain(&e, cert, u)?;
                        c.verify(&e, cert, &z_i)?;
                        CellVerdict::Chain(c)
                    }
                    Some(None) => CellVerdict::Unknown { reason: format!("no chain within radius {radius}") },
                    None => {
                        let s = search_neutralizing_chain(&e, cert, &z_i, radius, budget)?;
                        match s.chain {
                            Some(c) => {
                                cache.insert(key, Some(c.u.clone()));
                                CellVerdict::Chain(c)
                            }
                            None if s.exhausted => {
                                CellVerdict::Unknown { reason: format!("lattice budget {budget} exhausted") }
                            }
                            None => {
                                cache.insert(key, None);
                                CellVerdict::Unknown { reason: format!("no chain within radius {radius}") }
                            }
                        }
                    }
                };
                report.cells.push(Cell { mntus: Some(t), row: i, positive, verdict });
            }
        }
    }
    report.settle();
    Ok(report)
}

/// A 2-complex with H₁ = 0 is neutralized; otherwise nothing follows.
pub fn h1_trivial_shortcut(k: &SimplicialComplex) -> Result<Option<Verdict>> {
    if k.top_dim() != 2 {
        return Err(NeutralizationError::NotTwoComplex(k.top_dim()));
    }
    let h = homology(k, 1)?;
    Ok(h.is_trivial().then_some(Verdict::Yes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::tu::DEFAULT_SEARCH_BUDGET;

    fn mobius5() -> Arc<SimplicialComplex> {
        Arc::new(build_complex(&[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]]).unwrap())
    }

    #[test]
    fn mobius_elementary_vertex() {
        let k = mobius5();
        let inst = uniform_instance(&k, 2).unwrap();
        let (certs, _) = mntus_of(&inst, DEFAULT_SEARCH_BUDGET);
        let cert = &certs[0];
        let i = k.index_of(&[1, 2]).unwrap();
        let un = unit_null(&inst, cert, i).unwrap();
        assert!(un.q_coefficients().iter().all(|v| v.abs() == frac(1, 2)));
        let z = elementary_fractional_vertex(&inst, cert, i, true).unwrap();
        let p = z.p_coefficients();
        for (j, v) in p.iter().enumerate() {
            let expect = if cert.rows.contains(&j) { Q::zero() } else { frac(1, 2) };
            assert_eq!(v.abs(), expect);
        }
        let zm = elementary_fractional_vertex(&inst, cert, i, false).unwrap();
        assert_ne!(z, zm);
        assert!(find_neutralizing_chain(&inst, cert, i, 2).unwrap().is_none());
    }

    #[test]
    fn mobius_is_not_neutralized() {
        let r = decide_by_projection(&mobius5(), 2, 100_000).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        let d = decide_by_definition(&mobius5(), 2, 2, 10_000_000).unwrap();
        assert_eq!(d.verdict, Verdict::Unknown);
        assert_eq!(h1_trivial_shortcut(&mobius5()).unwrap(), None);
    }

    #[test]
    fn square_is_vacuous() {
        let k = Arc::new(build_complex(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap());
        assert_eq!(decide_by_projection(&k, 2, 1000).unwrap().verdict, Verdict::YesVacuous);
        assert_eq!(decide_by_definition(&k, 2, 2, 1000).unwrap().verdict, Verdict::YesVacuous);
    }
}
