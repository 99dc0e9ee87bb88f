//! The OHCP linear program `min (w,w,0,0)·z  s.t.  [I −I −B B] z = c, z ≥ 0`
//! and the algebra of its solution vectors.

mod calculus;
pub mod oracle;
pub mod sample;
mod simplex;
mod vertices;

use std::sync::Arc;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{BoundaryMatrix, Chain, ComplexError, SimplicialComplex};
use crate::linalg::{LinalgError, RationalMatrix};
use crate::rational::Q;

pub use calculus::{
    canonicalize_concise, compose_from_x, decompose_against_basic, decompose_into_elementary,
    identity_solution, is_basic_solution, is_basic_solution_x, is_concise, linearly_concise,
    preimage_vertex, project_to_x, strip_integral_y, ElementaryDecomposition, KernelDecomposition,
    KernelWitnessTest,
};
pub use simplex::{enumerate_optimal_vertices, solve, LpSolution, OptimalVertices};
pub use vertices::{enumerate_vertices, VertexEnumeration};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("weight of simplex {0} is negative")]
    NegativeWeight(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("input chain entry {0} is not an integer")]
    NonIntegralInput(usize),
    #[error("vector does not satisfy A z = c")]
    NotInAffineSpace,
    #[error("vector is not in the kernel of A")]
    NotInKernel,
    #[error("solution is not basic")]
    NotBasic,
    #[error("solution is not concise")]
    NotConcise,
    #[error("vectors are not linearly concise")]
    NotLinearlyConcise,
    #[error("solution is integral")]
    IntegralSolution,
    #[error("x-vector is not the projection of a feasible point")]
    NotProjection,
    #[error("oracle limited to {limit} LP columns, instance has {columns}")]
    OracleTooLarge { columns: usize, limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A point of R^{2(m+n)} laid out as (x⁺, x⁻, y⁺, y⁻).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionVector {
    m: usize,
    n: usize,
    z: Vec<Q>,
}

impl SolutionVector {
    pub fn zeros(m: usize, n: usize) -> Self {
        SolutionVector { m, n, z: vec![Q::zero(); 2 * (m + n)] }
    }

    pub fn from_entries(m: usize, n: usize, z: Vec<Q>) -> Result<Self, LpError> {
        if z.len() != 2 * (m + n) {
            return Err(LpError::DimensionMismatch { expected: 2 * (m + n), found: z.len() });
        }
        Ok(SolutionVector { m, n, z })
    }

    /// The nonnegative concise vector with the given p- and q-coefficients.
    pub fn from_coefficients(p: &[Q], q: &[Q]) -> Self {
        let (m, n) = (p.len(), q.len());
        let mut s = Self::zeros(m, n);
        for (i, v) in p.iter().enumerate() {
            s.place(i, v);
        }
        for (k, v) in q.iter().enumerate() {
            s.place(2 * m + k, v);
        }
        s
    }

    /// Writes coefficient v onto the pair whose positive side is `plus`.
    fn place(&mut self, plus: usize, v: &Q) {
        let minus = self.opposite(plus);
        if v.is_negative() {
            self.z[plus] = Q::zero();
            self.z[minus] = -v.clone();
        } else {
            self.z[plus] = v.clone();
            self.z[minus] = Q::zero();
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn entries(&self) -> &[Q] {
        &self.z
    }

    pub fn get(&self, i: usize) -> &Q {
        &self.z[i]
    }

    pub fn set(&mut self, i: usize, v: Q) {
        self.z[i] = v;
    }

    pub fn x_plus(&self) -> &[Q] {
        &self.z[..self.m]
    }

    pub fn x_minus(&self) -> &[Q] {
        &self.z[self.m..2 * self.m]
    }

    pub fn y_plus(&self) -> &[Q] {
        &self.z[2 * self.m..2 * self.m + self.n]
    }

    pub fn y_minus(&self) -> &[Q] {
        &self.z[2 * self.m + self.n..]
    }

    /// Index of the opposite entry z_{−i}.
    pub fn opposite(&self, i: usize) -> usize {
        let (m, n) = (self.m, self.n);
        if i < m {
            i + m
        } else if i < 2 * m {
            i - m
        } else if i < 2 * m + n {
            i + n
        } else {
            i - n
        }
    }

    pub fn is_x_coordinate(&self, i: usize) -> bool {
        i < 2 * self.m
    }

    /// Row (p-simplex) or column (q-simplex) index the entry belongs to.
    pub fn simplex_of(&self, i: usize) -> usize {
        if i < 2 * self.m {
            i % self.m
        } else {
            (i - 2 * self.m) % self.n
        }
    }

    pub fn p_coefficients(&self) -> Vec<Q> {
        self.x_plus().iter().zip(self.x_minus()).map(|(a, b)| a - b).collect()
    }

    pub fn q_coefficients(&self) -> Vec<Q> {
        self.y_plus().iter().zip(self.y_minus()).map(|(a, b)| a - b).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.z.len()).filter(|&i| !self.z[i].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().all(|v| v.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.z.iter().all(|v| v.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.z.iter().all(|v| !v.is_negative())
    }

    pub fn add(&self, o: &SolutionVector) -> SolutionVector {
        let z = self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect();
        SolutionVector { m: self.m, n: self.n, z }
    }

    pub fn sub(&self, o: &SolutionVector) -> SolutionVector {
        let z = self.z.iter().zip(&o.z).map(|(a, b)| a - b).collect();
        SolutionVector { m: self.m, n: self.n, z }
    }

    pub fn scale(&self, s: &Q) -> SolutionVector {
        SolutionVector { m: self.m, n: self.n, z: self.z.iter().map(|a| a * s).collect() }
    }

    /// Same p- and q-coefficients.
    pub fn equivalent(&self, o: &SolutionVector) -> bool {
        self.p_coefficients() == o.p_coefficients() && self.q_coefficients() == o.q_coefficients()
    }
}

#[derive(Debug, Clone)]
pub struct OhcpInstance {
    complex: Arc<SimplicialComplex>,
    boundary: Arc<BoundaryMatrix>,
    input: Vec<Q>,
    weights: Arc<Vec<Q>>,
}

/// Builds OHCP for p-chains of `complex`; B is ∂_{p+1} (possibly with no columns).
pub fn formulate(
    complex: Arc<SimplicialComplex>,
    p: usize,
    input: &Chain,
    weights: &[Q],
) -> Result<OhcpInstance, LpError> {
    if input.dim() != p {
        return Err(LpError::DimensionMismatch { expected: p, found: input.dim() });
    }
    input.validate(&complex)?;
    let boundary = complex.boundary_above(p)?;
    let m = boundary.m();
    OhcpInstance::new(complex, Arc::new(boundary), input.to_dense(m), Arc::new(weights.to_vec()))
}

impl OhcpInstance {
    pub fn new(
        complex: Arc<SimplicialComplex>,
        boundary: Arc<BoundaryMatrix>,
        input: Vec<Q>,
        weights: Arc<Vec<Q>>,
    ) -> Result<Self, LpError> {
        let m = boundary.m();
        if input.len() != m {
            return Err(LpError::DimensionMismatch { expected: m, found: input.len() });
        }
        if weights.len() != m {
            return Err(LpError::DimensionMismatch { expected: m, found: weights.len() });
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(LpError::NegativeWeight(i));
        }
        if let Some(i) = input.iter().position(|c| !c.is_integer()) {
            return Err(LpError::NonIntegralInput(i));
        }
        Ok(OhcpInstance { complex, boundary, input, weights })
    }

    /// Same complex, B and weights with a different input chain.
    pub fn with_input(&self, input: Vec<Q>) -> Result<Self, LpError> {
        Self::new(self.complex.clone(), self.boundary.clone(), input, self.weights.clone())
    }

    pub fn with_weights(&self, weights: Vec<Q>) -> Result<Self, LpError> {
        Self::new(self.complex.clone(), self.boundary.clone(), self.input.clone(), Arc::new(weights))
    }

    /// The elementary instance with input ±e_i.
    pub fn elementary(&self, i: usize, positive: bool) -> Self {
        let mut c = vec![Q::zero(); self.m()];
        c[i] = if positive { Q::one() } else { -Q::one() };
        self.with_input(c).expect("unit input is valid")
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn boundary(&self) -> &BoundaryMatrix {
        &self.boundary
    }

    pub fn boundary_arc(&self) -> &Arc<BoundaryMatrix> {
        &self.boundary
    }

    pub fn p(&self) -> usize {
        self.boundary.p()
    }

    pub fn q(&self) -> usize {
        self.boundary.q()
    }

    pub fn m(&self) -> usize {
        self.boundary.m()
    }

    pub fn n(&self) -> usize {
        self.boundary.n()
    }

    pub fn num_columns(&self) -> usize {
        2 * (self.m() + self.n())
    }

    pub fn input(&self) -> &[Q] {
        &self.input
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    /// Column j of A = [I −I −B B] as sparse (row, value) pairs.
    pub fn column(&self, j: usize) -> Vec<(usize, i64)> {
        let (m, n) = (self.m(), self.n());
        if j < m {
            vec![(j, 1)]
        } else if j < 2 * m {
            vec![(j - m, -1)]
        } else if j < 2 * m + n {
            self.boundary.column(j - 2 * m).iter().map(|&(i, s)| (i, -(s as i64))).collect()
        } else {
            self.boundary.column(j - 2 * m - n).iter().map(|&(i, s)| (i, s as i64)).collect()
        }
    }

    pub fn cost(&self, j: usize) -> Q {
        if j < 2 * self.m() {
            self.weights[j % self.m()].clone()
        } else {
            Q::zero()
        }
    }

    /// (w, w, 0, 0)·z
    pub fn objective(&self, z: &SolutionVector) -> Q {
        (0..2 * self.m()).fold(Q::zero(), |a, j| a + &self.weights[j % self.m()] * z.get(j))
    }

    /// A·z
    pub fn apply(&self, z: &SolutionVector) -> Vec<Q> {
        let q = z.q_coefficients();
        let bq = self.boundary.mul_vec(&q);
        z.p_coefficients().into_iter().zip(bq).map(|(p, b)| p - b).collect()
    }

    pub fn satisfies_constraints(&self, z: &SolutionVector) -> bool {
        z.m() == self.m() && z.n() == self.n() && self.apply(z) == self.input
    }

    pub fn in_kernel(&self, z: &SolutionVector) -> bool {
        z.m() == self.m() && z.n() == self.n() && self.apply(z).iter().all(|v| v.is_zero())
    }

    pub fn is_feasible(&self, z: &SolutionVector) -> bool {
        self.satisfies_constraints(z) && z.is_nonnegative()
    }

    pub fn constraint_matrix(&self) -> RationalMatrix {
        let mut a = RationalMatrix::zeros(self.m(), self.num_columns());
        for j in 0..self.num_columns() {
            for (i, v) in self.column(j) {
                a.set(i, j, Q::from_integer(v.into()));
            }
        }
        a
    }

    /// The kernel basis N of A, columns (e_j, e_j | 0), (0 | e_k, e_k), (B_k, 0 | e_k, 0).
    pub fn kernel_basis_n(&self) -> RationalMatrix {
        let (m, n) = (self.m(), self.n());
        let mut nm = RationalMatrix::zeros(2 * (m + n), m + 2 * n);
        for j in 0..m {
            nm.set(j, j, Q::one());
            nm.set(m + j, j, Q::one());
        }
        for k in 0..n {
            nm.set(2 * m + k, m + k, Q::one());
            nm.set(2 * m + n + k, m + k, Q::one());
            for &(i, s) in self.boundary.column(k) {
                nm.set(i, m + n + k, Q::from_integer((s as i64).into()));
            }
            nm.set(2 * m + k, m + n + k, Q::one());
        }
        nm
    }

    /// Kernel element of the last block of N for integer combination u over q-simplices.
    pub fn kernel_element(&self, u: &[Q]) -> SolutionVector {
        let p = self.boundary.mul_vec(u);
        SolutionVector::from_coefficients(&p, u)
    }

    pub fn check_solution(&self, z: &SolutionVector) -> Result<(), LpError> {
        if z.m() != self.m() || z.n() != self.n() {
            return Err(LpError::DimensionMismatch { expected: self.num_columns(), found: z.len() });
        }
        if !self.satisfies_constraints(z) {
            return Err(LpError::NotInAffineSpace);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::linalg::rank;
    use crate::rational::int;

    fn square() -> Arc<SimplicialComplex> {
        Arc::new(build_complex(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap())
    }

    #[test]
    fn block_dimensions() {
        let k = square();
        let c = Chain::from_terms(&k, 1, &[(int(1), vec![0, 1])]).unwrap();
        let inst = formulate(k, 1, &c, &vec![int(1); 5]).unwrap();
        assert_eq!((inst.m(), inst.n()), (5, 2));
        let a = inst.constraint_matrix();
        assert_eq!((a.rows(), a.cols()), (5, 14));
    }

    #[test]
    fn rejects_bad_inputs() {
        let k = square();
        let c = Chain::zero(1);
        let mut w = vec![int(1); 5];
        w[2] = int(-1);
        assert_eq!(formulate(k.clone(), 1, &c, &w).unwrap_err(), LpError::NegativeWeight(2));
        assert!(matches!(
            formulate(k.clone(), 1, &c, &[int(1)]),
            Err(LpError::DimensionMismatch { .. })
        ));
        let half = Chain::from_dense(1, &[crate::rational::frac(1, 2)]);
        assert_eq!(formulate(k, 1, &half, &vec![int(1); 5]).unwrap_err(), LpError::NonIntegralInput(0));
    }

    #[test]
    fn n_spans_kernel() {
        let k = Arc::new(
            build_complex(&[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]])
                .unwrap(),
        );
        let inst = formulate(k, 1, &Chain::zero(1), &vec![int(1); 10]).unwrap();
        let nm = inst.kernel_basis_n();
        assert!(inst.constraint_matrix().mul(&nm).unwrap().is_zero());
        let dim = inst.m() + 2 * inst.n();
        assert_eq!(rank(&nm).unwrap(), dim);
        let a_rank = rank(&inst.constraint_matrix()).unwrap();
        assert_eq!(inst.num_columns() - a_rank, dim);
    }

    #[test]
    fn opposite_is_involution() {
        let z = SolutionVector::zeros(4, 3);
        for i in 0..z.len() {
            assert_ne!(z.opposite(i), i);
            assert_eq!(z.opposite(z.opposite(i)), i);
        }
    }
}
