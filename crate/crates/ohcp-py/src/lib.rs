//! Python bindings. Rationals come back as `fractions.Fraction` and are
//! accepted as anything whose `str()` is an integer or `p/q`.

use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use ohcp::fixtures::{by_name, corpus};
use ohcp::io::{read_complex, write_complex};
use ohcp::linalg::homology;
use ohcp::lp::{enumerate_optimal_vertices, formulate, solve, OhcpInstance, SolutionVector};
use ohcp::neutralization::{decide_by_definition, decide_by_projection, h1_trivial_shortcut, Verdict};
use ohcp::rational::{self, Q};
use ohcp::tu::{find_mntus, DEFAULT_SEARCH_BUDGET};
use ohcp::{build_complex, Chain, SimplicialComplex, Vertex};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_q(x: &Bound<'_, PyAny>) -> PyResult<Q> {
    let s = x.str()?.to_string();
    rational::parse(&s).ok_or_else(|| PyValueError::new_err(format!("`{s}` is not an integer or p/q")))
}

fn fraction<'py>(py: Python<'py>, x: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((rational::fmt(x),))
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::YesVacuous => "yes (vacuous)",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

/// A finite simplicial complex given by its maximal simplices.
#[pyclass(frozen, name = "Complex", module = "ohcp_py")]
struct PyComplex {
    inner: Arc<SimplicialComplex>,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(maximal: Vec<Vec<Vertex>>) -> PyResult<Self> {
        Ok(PyComplex { inner: Arc::new(build_complex(&maximal).map_err(value_error)?) })
    }

    /// Parses the text format: one maximal simplex per line.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyComplex { inner: Arc::new(read_complex(text).map_err(value_error)?) })
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let f = by_name(name).ok_or_else(|| PyKeyError::new_err(name.to_string()))?;
        Ok(PyComplex { inner: Arc::new(f.complex()) })
    }

    fn to_text(&self) -> String {
        write_complex(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.top_dim()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn simplices(&self, d: usize) -> Vec<Vec<Vertex>> {
        if d > self.inner.top_dim() {
            return Vec::new();
        }
        self.inner.simplices(d).to_vec()
    }

    /// Betti number and torsion coefficients of H_p.
    fn homology(&self, p: usize) -> PyResult<(usize, Vec<String>)> {
        let h = homology(&self.inner, p).map_err(value_error)?;
        Ok((h.betti, h.torsion.iter().map(|t| t.to_string()).collect()))
    }

    /// The boundary matrix ∂_q as dense rows.
    fn boundary_matrix(&self, q: usize) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.inner.boundary_matrix(q).map_err(value_error)?.to_dense())
    }

    /// MNTU submatrices of ∂_q as dicts, or raises if the search budget ran out.
    #[pyo3(signature = (q = 2, budget = DEFAULT_SEARCH_BUDGET))]
    fn mntus<'py>(&self, py: Python<'py>, q: usize, budget: usize) -> PyResult<Vec<Bound<'py, pyo3::types::PyDict>>> {
        let b = self.inner.boundary_matrix(q).map_err(value_error)?;
        let s = find_mntus(&b, budget);
        if !s.complete {
            return Err(PyValueError::new_err(format!("circuit search budget {budget} exhausted")));
        }
        let simplices = |d: usize, idx: &[usize]| -> Vec<Vec<Vertex>> {
            idx.iter().map(|&i| self.inner.simplex(d, i).to_vec()).collect()
        };
        s.certificates
            .iter()
            .map(|c| {
                let d = pyo3::types::PyDict::new(py);
                d.set_item("rows", simplices(q - 1, &c.rows))?;
                d.set_item("columns", simplices(q, &c.cols))?;
                d.set_item("exterior_rows", simplices(q - 1, &c.exterior_rows))?;
                d.set_item("determinant", c.determinant)?;
                d.set_item("entry_sum", c.entry_sum())?;
                d.set_item("cmntus", c.is_cmntus)?;
                Ok(d)
            })
            .collect()
    }

    /// True, False, or None when the search was cut off.
    #[pyo3(signature = (q = 2, budget = DEFAULT_SEARCH_BUDGET))]
    fn is_totally_unimodular(&self, q: usize, budget: usize) -> PyResult<Option<bool>> {
        let s = find_mntus(&self.inner.boundary_matrix(q).map_err(value_error)?, budget);
        Ok(if !s.certificates.is_empty() { Some(false) } else { s.complete.then_some(true) })
    }

    /// "yes", "yes (vacuous)", "no" or "unknown". `procedure` is
    /// "projection" or "definition".
    #[pyo3(signature = (q = 2, procedure = "projection", radius = 2, budget = 1_000_000))]
    fn neutralization(&self, q: usize, procedure: &str, radius: usize, budget: usize) -> PyResult<&'static str> {
        let r = match procedure {
            "projection" => decide_by_projection(&self.inner, q, budget),
            "definition" => decide_by_definition(&self.inner, q, radius, budget),
            other => return Err(PyValueError::new_err(format!("unknown procedure `{other}`"))),
        };
        Ok(verdict(r.map_err(value_error)?.verdict))
    }

    /// "yes" when H1 vanishes, otherwise None. Only for 2-complexes.
    fn h1_shortcut(&self) -> PyResult<Option<&'static str>> {
        Ok(h1_trivial_shortcut(&self.inner).map_err(value_error)?.map(verdict))
    }

    fn __repr__(&self) -> String {
        format!("Complex(f_vector={:?})", self.inner.f_vector())
    }
}

/// An optimal homologous chain problem on the p-chains of a complex.
#[pyclass(frozen, name = "Instance", module = "ohcp_py")]
struct PyInstance {
    inner: OhcpInstance,
}

#[pymethods]
impl PyInstance {
    /// `chain` is a list of (coefficient, simplex) pairs; `weights` a list
    /// with one entry per p-simplex in `complex.simplices(p)` order, or
    /// None for unit weights.
    #[new]
    #[pyo3(signature = (complex, chain, p = 1, weights = None))]
    fn new(
        complex: &PyComplex,
        chain: Vec<(Bound<'_, PyAny>, Vec<Vertex>)>,
        p: usize,
        weights: Option<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<Self> {
        let k = &complex.inner;
        let terms = chain.iter().map(|(c, s)| Ok((to_q(c)?, s.clone()))).collect::<PyResult<Vec<_>>>()?;
        let c = Chain::from_terms(k, p, &terms).map_err(value_error)?;
        let w = match weights {
            Some(w) => w.iter().map(to_q).collect::<PyResult<Vec<_>>>()?,
            None => vec![rational::one(); k.count(p)],
        };
        Ok(PyInstance { inner: formulate(k.clone(), p, &c, &w).map_err(value_error)? })
    }

    #[getter]
    fn num_columns(&self) -> usize {
        self.inner.num_columns()
    }

    fn solve(&self) -> PyResult<PySolution> {
        let s = solve(&self.inner).map_err(value_error)?;
        Ok(PySolution { objective: s.objective, vertex: s.vertex, k: self.inner.complex().clone(), p: self.inner.p() })
    }

    /// Every optimal vertex, up to `limit`.
    #[pyo3(signature = (limit = 64))]
    fn optimal_vertices(&self, limit: usize) -> PyResult<Vec<PySolution>> {
        let o = enumerate_optimal_vertices(&self.inner, limit).map_err(value_error)?;
        Ok(o.vertices
            .into_iter()
            .map(|v| PySolution {
                objective: o.objective.clone(),
                vertex: v,
                k: self.inner.complex().clone(),
                p: self.inner.p(),
            })
            .collect())
    }
}

/// A basic feasible solution and its cost.
#[pyclass(frozen, name = "Solution", module = "ohcp_py")]
struct PySolution {
    objective: Q,
    vertex: SolutionVector,
    k: Arc<SimplicialComplex>,
    p: usize,
}

impl PySolution {
    fn terms<'py>(&self, py: Python<'py>, d: usize, coeffs: &[Q]) -> PyResult<Vec<(Vec<Vertex>, Bound<'py, PyAny>)>> {
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != rational::zero())
            .map(|(i, c)| Ok((self.k.simplex(d, i).to_vec(), fraction(py, c)?)))
            .collect()
    }
}

#[pymethods]
impl PySolution {
    #[getter]
    fn objective<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.objective)
    }

    #[getter]
    fn integral(&self) -> bool {
        self.vertex.is_integral()
    }

    /// The optimal chain as (simplex, coefficient) pairs.
    fn chain<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<Vertex>, Bound<'py, PyAny>)>> {
        self.terms(py, self.p, &self.vertex.p_coefficients())
    }

    /// The (p+1)-chain whose boundary is the difference to the input.
    fn bounding_chain<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<Vertex>, Bound<'py, PyAny>)>> {
        self.terms(py, self.p + 1, &self.vertex.q_coefficients())
    }

    fn __repr__(&self) -> String {
        format!("Solution(objective={}, integral={})", rational::fmt(&self.objective), self.vertex.is_integral())
    }
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    corpus().iter().map(|f| f.name).collect()
}

#[pymodule]
fn ohcp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyInstance>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
