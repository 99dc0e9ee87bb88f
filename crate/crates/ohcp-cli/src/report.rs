//! JSON encodings. Rationals are exact strings, `p/q` or `p`.

use serde_json::{json, Value};

use ohcp::linalg::HomologyGroup;
use ohcp::lp::SolutionVector;
use ohcp::neutralization::{CellVerdict, NeutralizationReport, Procedure, Verdict};
use ohcp::rational::{self, Q};
use ohcp::tu::{BipartiteIncidenceGraph, MntuCertificate, OrientationReversingChain};
use ohcp::SimplicialComplex;

pub fn rational(x: &Q) -> Value {
    Value::String(rational::fmt(x))
}

pub fn simplex(k: &SimplicialComplex, d: usize, i: usize) -> Value {
    json!(k.simplex(d, i))
}

fn simplices(k: &SimplicialComplex, d: usize, idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|&i| simplex(k, d, i)).collect())
}

/// Nonzero coefficients as `{simplex, coefficient}` in index order.
pub fn chain(k: &SimplicialComplex, d: usize, coeffs: &[Q]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != rational::zero())
            .map(|(i, c)| json!({ "simplex": simplex(k, d, i), "coefficient": rational(c) }))
            .collect(),
    )
}

pub fn solution(k: &SimplicialComplex, p: usize, z: &SolutionVector) -> Value {
    json!({
        "chain": chain(k, p, &z.p_coefficients()),
        "bounding_chain": chain(k, p + 1, &z.q_coefficients()),
        "integral": z.is_integral(),
    })
}

pub fn homology(h: &HomologyGroup) -> Value {
    json!({
        "betti": h.betti,
        "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

pub fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::YesVacuous => "yes (vacuous)",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

pub fn orientation_chain(k: &SimplicialComplex, q: usize, c: &OrientationReversingChain) -> Value {
    json!({
        "simplices": simplices(k, q, &c.simplices),
        "shared_faces": simplices(k, q - 1, &c.shared_faces),
        "entry_sum": c.entry_sum(),
    })
}

pub fn certificate(
    k: &SimplicialComplex,
    q: usize,
    g: &BipartiteIncidenceGraph,
    c: &MntuCertificate,
    chain: Option<&OrientationReversingChain>,
) -> Value {
    let exterior: Vec<Value> = c
        .exterior_rows
        .iter()
        .map(|&r| json!({ "simplex": simplex(k, q - 1, r), "count": c.count_in_columns(g, r) }))
        .collect();
    json!({
        "rows": simplices(k, q - 1, &c.rows),
        "columns": simplices(k, q, &c.cols),
        "determinant": c.determinant,
        "entry_sum": c.entry_sum(),
        "cmntus": c.is_cmntus,
        "exterior_rows": exterior,
        "orientation_reversing_chain": chain.map_or(Value::Null, |o| orientation_chain(k, q, o)),
    })
}

pub fn neutralization(k: &SimplicialComplex, r: &NeutralizationReport) -> Value {
    let p = r.q - 1;
    let cells: Vec<Value> = r
        .cells
        .iter()
        .map(|c| {
            let detail = match &c.verdict {
                CellVerdict::Chain(ch) => json!({
                    "kind": "chain",
                    "chain": chain(k, r.q, &ch.u.iter().map(|&v| rational::int(v)).collect::<Vec<_>>()),
                    "interior_sum": ch.interior_sum,
                }),
                CellVerdict::Census { projection_vertices, fiber_vertices } => json!({
                    "kind": "census",
                    "projection_vertices": projection_vertices,
                    "fiber_vertices": fiber_vertices,
                }),
                CellVerdict::NotNeutralized(w) => json!({
                    "kind": "witness",
                    "vertex": solution(k, p, &w.vertex),
                }),
                CellVerdict::Unknown { reason } => json!({ "kind": "unknown", "reason": reason }),
            };
            json!({
                "mntus": c.mntus,
                "row": simplex(k, p, c.row),
                "sign": if c.positive { "+" } else { "-" },
                "verdict": detail,
            })
        })
        .collect();
    json!({
        "procedure": match r.procedure { Procedure::Projection => "projection", Procedure::Definition => "definition" },
        "verdict": verdict(r.verdict),
        "mntus_count": r.mntus.len(),
        "mntus_complete": r.mntus_complete,
        "radius": r.radius,
        "budget": r.budget,
        "cells": cells,
    })
}
