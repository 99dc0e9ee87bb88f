use std::path::Path;

use serde_json::json;

use ohcp::linalg::homology as homology_group;
use ohcp::lp::oracle::{brute_force_optimum, ORACLE_COLUMN_LIMIT};
use ohcp::lp::{enumerate_optimal_vertices, enumerate_vertices, formulate, solve as solve_lp, LpError};
use ohcp::neutralization::{
    decide_by_definition, decide_by_projection, h1_trivial_shortcut, CellVerdict, NeutralizationError,
    NeutralizationReport, Verdict,
};
use ohcp::rational::{self, Q};
use ohcp::tu::oracle::minimal_non_tu;
use ohcp::tu::{bipartite_graph, extract_orientation_reversing_chain, find_mntus, TuError};

use crate::report;
use crate::{envelope, load_chain, load_complex, load_weights, read, CliError, Outcome, WeightArgs};

/// Largest submatrix the determinant oracle scans.
const TU_ORACLE_CAP: usize = 12;
/// Square submatrices the determinant oracle may visit; there are C(m + n, n).
const TU_ORACLE_SUBMATRICES: u128 = 5_000_000;
/// Bases the vertex-enumeration oracle may visit.
const LP_ORACLE_BASES: usize = 2_000_000;

pub(crate) fn lp_error(e: LpError) -> CliError {
    match e {
        LpError::Internal(s) => CliError::Internal(s),
        other => CliError::Input(other.to_string()),
    }
}

pub(crate) fn tu_error(e: TuError) -> CliError {
    match e {
        TuError::MalformedCircuit(_) | TuError::InconsistentCertificate(_) | TuError::EvenExteriorRow { .. } => {
            CliError::Internal(e.to_string())
        }
        other => CliError::Input(other.to_string()),
    }
}

pub(crate) fn neutralization_error(e: NeutralizationError) -> CliError {
    match e {
        NeutralizationError::Internal(_) | NeutralizationError::Mismatch(_) => CliError::Internal(e.to_string()),
        NeutralizationError::Lp(e) => lp_error(e),
        NeutralizationError::Tu(e) => tu_error(e),
        other => CliError::Input(other.to_string()),
    }
}

fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub fn homology(complex: &Path, p: usize) -> Result<Outcome, CliError> {
    let (input, k) = load_complex(complex)?;
    let h = homology_group(&k, p).map_err(input_error)?;
    let result = json!({
        "p": p,
        "f_vector": k.f_vector(),
        "euler_characteristic": k.euler_characteristic(),
        "homology": report::homology(&h),
    });
    let config = json!({ "p": p });
    Ok(Outcome { report: envelope("homology", &[&input], config, result), exhausted: None, failed: None })
}

pub fn solve(
    complex: &Path,
    chain: &Path,
    p: usize,
    weights: &WeightArgs,
    budget: usize,
    oracle: bool,
) -> Result<Outcome, CliError> {
    let (kin, k) = load_complex(complex)?;
    let cin = read(chain)?;
    let c = load_chain(&cin, &k, p)?;
    let mut inputs = vec![&kin, &cin];
    let win;
    let w: Vec<Q> = match (&weights.weights, &weights.uniform_weight) {
        (Some(path), _) => {
            win = read(path)?;
            inputs.push(&win);
            load_weights(&win, &k, p)?
        }
        (None, Some(r)) => vec![r.clone(); k.count(p)],
        (None, None) => vec![rational::one(); k.count(p)],
    };
    let inst = formulate(k.clone(), p, &c, &w).map_err(lp_error)?;
    let sol = solve_lp(&inst).map_err(lp_error)?;
    let opt = enumerate_optimal_vertices(&inst, budget).map_err(lp_error)?;
    if opt.objective != sol.objective {
        return Err(CliError::Internal("optimal-face walk disagrees with the simplex objective".into()));
    }
    let integral = opt.vertices.iter().filter(|v| v.is_integral()).count();
    let mut exhausted = opt.truncated.then(|| format!("optimal vertex budget {budget}"));
    let mut result = json!({
        "p": p,
        "rows": inst.m(),
        "columns": inst.n(),
        "objective": report::rational(&sol.objective),
        "solution": report::solution(&k, p, &sol.vertex),
        "pivots": sol.pivots,
        "optimal_vertices": {
            "count": opt.vertices.len(),
            "integral": integral,
            "truncated": opt.truncated,
        },
    });
    if oracle {
        let (method, objective, complete) = if inst.num_columns() <= ORACLE_COLUMN_LIMIT {
            let o = brute_force_optimum(&inst).map_err(lp_error)?;
            if !o.vertices.contains(&sol.vertex) {
                return Err(CliError::Internal("solver vertex is not among the brute-force optima".into()));
            }
            ("supports", Some(o.objective), true)
        } else {
            let v = enumerate_vertices(&inst, None, LP_ORACLE_BASES).map_err(lp_error)?;
            let best = v.vertices.iter().map(|z| inst.objective(z)).min();
            ("vertices", best, v.complete)
        };
        if !complete {
            exhausted.get_or_insert_with(|| format!("oracle basis budget {LP_ORACLE_BASES}"));
        } else if objective.as_ref() != Some(&sol.objective) {
            return Err(CliError::Internal("solver and oracle optima differ".into()));
        }
        result["oracle"] = json!({
            "method": method,
            "complete": complete,
            "objective": objective.as_ref().map(report::rational),
            "agrees": complete,
        });
    }
    let config = json!({
        "p": p,
        "budget": budget,
        "oracle": oracle,
        "uniform_weight": weights.uniform_weight.as_ref().map(report::rational),
        "weights_file": weights.weights.is_some(),
    });
    Ok(Outcome { report: envelope("solve", &inputs, config, result), exhausted, failed: None })
}

pub fn tu(complex: &Path, q: usize, budget: usize, oracle: bool) -> Result<Outcome, CliError> {
    let (input, k) = load_complex(complex)?;
    let b = k.boundary_matrix(q).map_err(input_error)?;
    let g = bipartite_graph(&b);
    let s = find_mntus(&b, budget);
    let mut certs = Vec::with_capacity(s.certificates.len());
    for c in &s.certificates {
        c.verify(&g).map_err(tu_error)?;
        let chain = extract_orientation_reversing_chain(c, &g).map_err(tu_error)?;
        certs.push(report::certificate(&k, q, &g, c, Some(&chain)));
    }
    let tu = if !s.certificates.is_empty() {
        Some(false)
    } else {
        s.complete.then_some(true)
    };
    let mut result = json!({
        "q": q,
        "rows": b.m(),
        "columns": b.n(),
        "totally_unimodular": tu,
        "search_complete": s.complete,
        "nodes_expanded": s.nodes_expanded,
        "mntus": certs,
    });
    if oracle {
        let dense = b.to_dense();
        let scan = if binomial(b.m() + b.n(), b.n()) > TU_ORACLE_SUBMATRICES {
            Err(TuError::OracleCap { rows: b.m(), cols: b.n(), cap: TU_ORACLE_CAP })
        } else {
            minimal_non_tu(&dense, b.n(), TU_ORACLE_CAP)
        };
        result["oracle"] = match scan {
            Ok(scan) => {
                let mut found: Vec<(Vec<usize>, Vec<usize>)> =
                    s.certificates.iter().map(|c| (c.rows.clone(), c.cols.clone())).collect();
                found.sort();
                if s.complete && found != scan {
                    return Err(CliError::Internal("circuit search and determinant scan disagree".into()));
                }
                json!({ "method": "determinants", "minimal_non_tu": scan.len(), "agrees": s.complete })
            }
            Err(TuError::OracleCap { .. }) => json!({ "method": "determinants", "skipped": "matrix too large" }),
            Err(e) => return Err(tu_error(e)),
        };
    }
    let exhausted = (!s.complete).then(|| format!("circuit search budget {budget}"));
    let config = json!({ "q": q, "budget": budget, "oracle": oracle });
    Ok(Outcome { report: envelope("tu", &[&input], config, result), exhausted, failed: None })
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k.min(n - k)).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn budget_hit(r: &NeutralizationReport) -> bool {
    !r.mntus_complete
        || r.cells.iter().any(|c| matches!(&c.verdict, CellVerdict::Unknown { reason } if reason.contains("budget")))
}

pub fn neutralization(complex: &Path, q: usize, radius: usize, budget: usize) -> Result<Outcome, CliError> {
    let (input, k) = load_complex(complex)?;
    if q == 0 || q > k.top_dim() {
        return Err(CliError::Input(format!("q = {q} is outside 1..={}", k.top_dim())));
    }
    let h = homology_group(&k, q - 1).map_err(input_error)?;
    let shortcut = if k.top_dim() == 2 && q == 2 {
        h1_trivial_shortcut(&k).map_err(neutralization_error)?
    } else {
        None
    };
    let proj = decide_by_projection(&k, q, budget).map_err(neutralization_error)?;
    let def = decide_by_definition(&k, q, radius, budget).map_err(neutralization_error)?;
    let definite_no = |v: Verdict| v == Verdict::No;
    let definite_yes = |v: Verdict| matches!(v, Verdict::Yes | Verdict::YesVacuous);
    if (definite_no(proj.verdict) && definite_yes(def.verdict))
        || (definite_yes(proj.verdict) && definite_no(def.verdict))
    {
        return Err(CliError::Internal("projection and definition procedures disagree".into()));
    }
    if shortcut.is_some() && definite_no(proj.verdict) {
        return Err(CliError::Internal("trivial H1 but the projection procedure found a witness".into()));
    }
    let verdict = if proj.verdict != Verdict::Unknown {
        proj.verdict
    } else if definite_yes(def.verdict) {
        def.verdict
    } else {
        shortcut.unwrap_or(Verdict::Unknown)
    };
    let exhausted = (verdict == Verdict::Unknown && (budget_hit(&proj) || budget_hit(&def)))
        .then(|| format!("neutralization budget {budget}"));
    let result = json!({
        "q": q,
        "homology": report::homology(&h),
        "h1_shortcut": shortcut.map(report::verdict),
        "projection": report::neutralization(&k, &proj),
        "definition": report::neutralization(&k, &def),
        "verdict": report::verdict(verdict),
    });
    let config = json!({ "q": q, "radius": radius, "budget": budget });
    Ok(Outcome { report: envelope("neutralization", &[&input], config, result), exhausted, failed: None })
}
