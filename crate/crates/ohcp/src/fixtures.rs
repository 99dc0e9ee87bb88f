//! Built-in corpus of small complexes with their expected properties.
//!
//! "standard" fixtures are textbook triangulations. "analog" fixtures are
//! pinched Möbius strips built to show the same phenomena as the pictured
//! three-complex family; they are not exact copies of any drawing.

use std::sync::Arc;

use crate::complex::{build_complex, Chain, SimplicialComplex, Vertex};
use crate::lp::{formulate, LpError, OhcpInstance};
use crate::neutralization::Verdict;
use crate::rational::{frac, int, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpExpectation {
    /// (coefficient, simplex) pairs of the input chain.
    pub chain: Vec<(Q, Vec<Vertex>)>,
    /// Explicit weights; every other simplex weighs `default_weight`.
    pub weights: Vec<(Vec<Vertex>, Q)>,
    pub default_weight: Q,
    pub objective: Q,
    /// Some optimal vertex is integral.
    pub integral_optimum: bool,
    pub optimal_vertices: usize,
    pub integral_optimal_vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectations {
    pub f_vector: Vec<usize>,
    pub h1_betti: usize,
    pub h1_torsion: Vec<u64>,
    /// Total unimodularity of the top boundary matrix.
    pub tu: bool,
    pub mntus: usize,
    pub cmntus: usize,
    pub neutralization: Verdict,
    pub lp: Option<LpExpectation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub provenance: &'static str,
    pub description: &'static str,
    pub maximal: Vec<Vec<Vertex>>,
    pub expect: Expectations,
}

impl Fixture {
    pub fn complex(&self) -> SimplicialComplex {
        build_complex(&self.maximal).expect("fixture complexes are well formed")
    }
}

impl LpExpectation {
    /// The OHCP instance on the 1-chains of `k` described by this expectation.
    pub fn instance(&self, k: &Arc<SimplicialComplex>) -> Result<OhcpInstance, LpError> {
        let chain = Chain::from_terms(k, 1, &self.chain)?;
        let mut w = vec![self.default_weight.clone(); k.count(1)];
        for (e, v) in &self.weights {
            w[k.locate(e)?.0] = v.clone();
        }
        formulate(k.clone(), 1, &chain, &w)
    }
}

fn tris(t: &[[Vertex; 3]]) -> Vec<Vec<Vertex>> {
    t.iter().map(|s| s.to_vec()).collect()
}

pub fn square() -> Vec<Vec<Vertex>> {
    tris(&[[0, 1, 2], [0, 2, 3]])
}

pub fn tetrahedron_boundary() -> Vec<Vec<Vertex>> {
    tris(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
}

/// Five-triangle Möbius strip. Interior edges 12 23 34 45 15, boundary
/// edges 13 35 25 24 14.
pub fn mobius5() -> Vec<Vec<Vertex>> {
    tris(&[[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 1], [5, 1, 2]])
}

/// Möbius-5 with a disc (cone from 6) glued along its core circle.
pub fn filled_core() -> Vec<Vec<Vertex>> {
    let mut k = mobius5();
    k.extend(tris(&[[6, 1, 2], [6, 2, 3], [6, 3, 4], [6, 4, 5], [6, 5, 1]]));
    k
}

/// Möbius-5 with a disc glued along its boundary circle.
pub fn rp2() -> Vec<Vec<Vertex>> {
    let mut k = mobius5();
    k.extend(tris(&[[6, 1, 3], [6, 3, 5], [6, 5, 2], [6, 2, 4], [6, 4, 1]]));
    k
}

/// Eleven-triangle Möbius strip with vertices 0 and 5 identified.
pub fn pinched_strip() -> Vec<Vec<Vertex>> {
    tris(&[
        [0, 1, 2],
        [0, 1, 10],
        [0, 3, 4],
        [0, 4, 6],
        [0, 6, 7],
        [0, 9, 10],
        [1, 2, 3],
        [2, 3, 4],
        [6, 7, 8],
        [7, 8, 9],
        [8, 9, 10],
    ])
}

/// The pinched strip plus triangle 013, an odd disc across the strip.
pub fn pinched_strip_odd_disc() -> Vec<Vec<Vertex>> {
    let mut k = pinched_strip();
    k.push(vec![0, 1, 3]);
    k
}

/// The pinched strip plus triangle 079, which closes a second, smaller
/// strip inside the first.
pub fn pinched_strip_nested() -> Vec<Vec<Vertex>> {
    let mut k = pinched_strip();
    k.push(vec![0, 7, 9]);
    k
}

/// Nine-triangle Möbius strip glued to itself along an edge (0=4, 1=6).
pub fn edge_glued_strip() -> Vec<Vec<Vertex>> {
    tris(&[
        [0, 1, 2],
        [0, 1, 5],
        [0, 1, 8],
        [0, 2, 3],
        [0, 3, 5],
        [0, 7, 8],
        [1, 2, 3],
        [1, 5, 7],
        [1, 7, 8],
    ])
}

fn boundary_edges(w: Q) -> Vec<(Vec<Vertex>, Q)> {
    [[1, 3], [3, 5], [2, 5], [2, 4], [1, 4]].iter().map(|e| (e.to_vec(), w.clone())).collect()
}

pub fn corpus() -> Vec<Fixture> {
    let edge12 = vec![(int(1), vec![1, 2])];
    let mut balanced = boundary_edges(frac(1, 20));
    for (e, w) in balanced.iter_mut() {
        if e == &[1, 4] || e == &[2, 4] {
            *w = frac(3, 40);
        }
    }
    vec![
        Fixture {
            name: "square",
            provenance: "standard",
            description: "two triangles sharing a diagonal",
            maximal: square(),
            expect: Expectations {
                f_vector: vec![4, 5, 2],
                h1_betti: 0,
                h1_torsion: vec![],
                tu: true,
                mntus: 0,
                cmntus: 0,
                neutralization: Verdict::YesVacuous,
                lp: Some(LpExpectation {
                    chain: vec![(int(1), vec![0, 1])],
                    weights: vec![(vec![0, 1], int(10))],
                    default_weight: int(1),
                    objective: int(2),
                    integral_optimum: true,
                    optimal_vertices: 1,
                    integral_optimal_vertices: 1,
                }),
            },
        },
        Fixture {
            name: "tetrahedron",
            provenance: "standard",
            description: "boundary of a tetrahedron, a 2-sphere",
            maximal: tetrahedron_boundary(),
            expect: Expectations {
                f_vector: vec![4, 6, 4],
                h1_betti: 0,
                h1_torsion: vec![],
                tu: true,
                mntus: 0,
                cmntus: 0,
                neutralization: Verdict::YesVacuous,
                lp: None,
            },
        },
        Fixture {
            name: "mobius5",
            provenance: "standard",
            description: "five-triangle Möbius strip",
            maximal: mobius5(),
            expect: Expectations {
                f_vector: vec![5, 10, 5],
                h1_betti: 1,
                h1_torsion: vec![],
                tu: false,
                mntus: 1,
                cmntus: 1,
                neutralization: Verdict::No,
                lp: Some(LpExpectation {
                    chain: edge12.clone(),
                    weights: boundary_edges(frac(1, 20)),
                    default_weight: int(1),
                    objective: frac(1, 8),
                    integral_optimum: false,
                    optimal_vertices: 1,
                    integral_optimal_vertices: 0,
                }),
            },
        },
        Fixture {
            name: "filled-core",
            provenance: "standard",
            description: "Möbius-5 with a disc on its core circle",
            maximal: filled_core(),
            expect: Expectations {
                f_vector: vec![6, 15, 10],
                h1_betti: 0,
                h1_torsion: vec![],
                tu: false,
                mntus: 16,
                cmntus: 11,
                neutralization: Verdict::Yes,
                lp: Some(LpExpectation {
                    chain: edge12,
                    weights: balanced,
                    default_weight: int(1),
                    objective: frac(3, 20),
                    integral_optimum: true,
                    optimal_vertices: 3,
                    integral_optimal_vertices: 2,
                }),
            },
        },
        Fixture {
            name: "rp2",
            provenance: "standard",
            description: "Möbius-5 with a disc on its boundary circle, the projective plane",
            maximal: rp2(),
            expect: Expectations {
                f_vector: vec![6, 15, 10],
                h1_betti: 0,
                h1_torsion: vec![2],
                tu: false,
                mntus: 26,
                cmntus: 16,
                neutralization: Verdict::No,
                lp: None,
            },
        },
        Fixture {
            name: "pinched-strip",
            provenance: "analog",
            description: "Möbius strip pinched at one vertex; not neutralized",
            maximal: pinched_strip(),
            expect: Expectations {
                f_vector: vec![10, 22, 11],
                h1_betti: 2,
                h1_torsion: vec![],
                tu: false,
                mntus: 1,
                cmntus: 1,
                neutralization: Verdict::No,
                lp: None,
            },
        },
        Fixture {
            name: "edge-glued-strip",
            provenance: "analog",
            description: "Möbius strip glued to itself along an edge; totally unimodular",
            maximal: edge_glued_strip(),
            expect: Expectations {
                f_vector: vec![7, 15, 9],
                h1_betti: 0,
                h1_torsion: vec![],
                tu: true,
                mntus: 0,
                cmntus: 0,
                neutralization: Verdict::YesVacuous,
                lp: None,
            },
        },
        Fixture {
            name: "pinched-strip-odd-disc",
            provenance: "analog",
            description: "pinched strip plus an odd disc; neutralized with nontrivial H1",
            maximal: pinched_strip_odd_disc(),
            expect: Expectations {
                f_vector: vec![10, 22, 12],
                h1_betti: 1,
                h1_torsion: vec![],
                tu: false,
                mntus: 1,
                cmntus: 1,
                neutralization: Verdict::Yes,
                lp: None,
            },
        },
        Fixture {
            name: "pinched-strip-nested",
            provenance: "analog",
            description: "pinched strip containing a smaller strip; MNTUS that is not columnwise minimal",
            maximal: pinched_strip_nested(),
            expect: Expectations {
                f_vector: vec![10, 22, 12],
                h1_betti: 1,
                h1_torsion: vec![],
                tu: false,
                mntus: 4,
                cmntus: 2,
                neutralization: Verdict::No,
                lp: None,
            },
        },
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    corpus().into_iter().find(|f| f.name == name)
}
