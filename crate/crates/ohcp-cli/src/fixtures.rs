use std::fs;
use std::path::Path;
use std::sync::Arc;

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ohcp::fixtures::{corpus, Fixture, LpExpectation};
use ohcp::io::{parse_chain, parse_weights, read_complex, write_complex};
use ohcp::linalg::homology;
use ohcp::lp::{enumerate_optimal_vertices, enumerate_vertices, formulate, solve};
use ohcp::neutralization::decide_by_projection;
use ohcp::rational::{self, int};
use ohcp::tu::{find_mntus, DEFAULT_SEARCH_BUDGET};
use ohcp::{Chain, SimplicialComplex};

use crate::commands::{lp_error, neutralization_error};
use crate::report;
use crate::{envelope, CliError, Outcome};

/// Random-input LP checks only run where vertex enumeration is cheap.
const RANDOM_CHECK_MAX_COLUMNS: usize = 6;

fn write(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|source| CliError::Io { file: path.display().to_string(), source })
}

fn chain_text(lp: &LpExpectation) -> String {
    lp.chain.iter().map(|(c, s)| format!("{} {}\n", rational::fmt(c), join(s))).collect()
}

fn weights_text(k: &SimplicialComplex, lp: &LpExpectation) -> String {
    let mut s = String::new();
    for i in 0..k.count(1) {
        let e = k.simplex(1, i);
        let w = lp.weights.iter().find(|(f, _)| f == e).map_or(&lp.default_weight, |(_, w)| w);
        s.push_str(&format!("{} {}\n", rational::fmt(w), join(e)));
    }
    s
}

fn join(s: &[u32]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn manifest_entry(f: &Fixture) -> Value {
    let e = &f.expect;
    json!({
        "name": f.name,
        "provenance": f.provenance,
        "description": f.description,
        "complex": format!("{}.complex", f.name),
        "f_vector": e.f_vector,
        "h1": { "betti": e.h1_betti, "torsion": e.h1_torsion },
        "tu": e.tu,
        "mntus": e.mntus,
        "cmntus": e.cmntus,
        "neutralization": report::verdict(e.neutralization),
        "lp": e.lp.as_ref().map(|lp| json!({
            "chain": format!("{}.chain", f.name),
            "weights": format!("{}.weights", f.name),
            "objective": report::rational(&lp.objective),
            "integral_optimum": lp.integral_optimum,
            "optimal_vertices": lp.optimal_vertices,
            "integral_optimal_vertices": lp.integral_optimal_vertices,
        })),
    })
}

struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }
}

/// Re-derives one fixture's manifest entry from the files just written.
fn verify(dir: &Path, f: &Fixture, budget: usize, rng: &mut ChaCha8Rng) -> Result<Value, CliError> {
    let mut c = Checks { failures: Vec::new() };
    let path = dir.join(format!("{}.complex", f.name));
    let text = fs::read_to_string(&path).map_err(|source| CliError::Io { file: path.display().to_string(), source })?;
    let k = Arc::new(read_complex(&text).map_err(|source| CliError::Parse { file: path.display().to_string(), source })?);
    c.expect("round trip", &*k, &f.complex());
    c.expect("f-vector", k.f_vector(), f.expect.f_vector.clone());
    let h = homology(&k, 1).map_err(|e| CliError::Internal(e.to_string()))?;
    let torsion: Vec<u64> = h.torsion.iter().filter_map(|t| t.to_u64()).collect();
    c.expect("H1", (h.betti, torsion), (f.expect.h1_betti, f.expect.h1_torsion.clone()));
    let b = k.boundary_matrix(2).map_err(|e| CliError::Internal(e.to_string()))?;
    let s = find_mntus(&b, DEFAULT_SEARCH_BUDGET);
    c.expect("MNTUS search complete", s.complete, true);
    c.expect("TU", s.certificates.is_empty(), f.expect.tu);
    c.expect("MNTUS", s.certificates.len(), f.expect.mntus);
    c.expect("CMNTUS", s.certificates.iter().filter(|x| x.is_cmntus).count(), f.expect.cmntus);
    let r = decide_by_projection(&k, 2, budget).map_err(neutralization_error)?;
    c.expect("neutralization", report::verdict(r.verdict), report::verdict(f.expect.neutralization));
    if let Some(lp) = &f.expect.lp {
        let chain = parse_chain(&chain_text(lp), &k, 1).map_err(|e| CliError::Internal(e.to_string()))?;
        let w = parse_weights(&weights_text(&k, lp), &k, 1, &rational::one())
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let inst = formulate(k.clone(), 1, &chain, &w).map_err(lp_error)?;
        c.expect("objective", solve(&inst).map_err(lp_error)?.objective, lp.objective.clone());
        let opt = enumerate_optimal_vertices(&inst, 64).map_err(lp_error)?;
        let integral = opt.vertices.iter().filter(|v| v.is_integral()).count();
        c.expect("optimal vertices", opt.vertices.len(), lp.optimal_vertices);
        c.expect("integral optimal vertices", integral, lp.integral_optimal_vertices);
    }
    let mut random = 0;
    if b.n() <= RANDOM_CHECK_MAX_COLUMNS {
        for _ in 0..3 {
            let dense: Vec<_> = (0..k.count(1)).map(|_| int(rng.random_range(-2..=2))).collect();
            let w: Vec<_> = (0..k.count(1)).map(|_| rational::frac(rng.random_range(1..=9), rng.random_range(1..=3))).collect();
            let inst = formulate(k.clone(), 1, &Chain::from_dense(1, &dense), &w).map_err(lp_error)?;
            let got = solve(&inst).map_err(lp_error)?.objective;
            let all = enumerate_vertices(&inst, None, budget).map_err(lp_error)?;
            let best = all.vertices.iter().map(|z| inst.objective(z)).min();
            c.expect("random optimum", Some(got), best);
            random += 1;
        }
    }
    Ok(json!({
        "name": f.name,
        "random_lp_checks": random,
        "passed": c.failures.is_empty(),
        "failures": c.failures,
    }))
}

pub fn fixtures(dir: &Path, check: bool, budget: usize, seed: u64) -> Result<Outcome, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { file: dir.display().to_string(), source })?;
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for f in corpus() {
        let k = f.complex();
        write(dir, &format!("{}.complex", f.name), &write_complex(&k))?;
        files.push(format!("{}.complex", f.name));
        if let Some(lp) = &f.expect.lp {
            write(dir, &format!("{}.chain", f.name), &chain_text(lp))?;
            write(dir, &format!("{}.weights", f.name), &weights_text(&k, lp))?;
            files.push(format!("{}.chain", f.name));
            files.push(format!("{}.weights", f.name));
        }
        entries.push(manifest_entry(&f));
    }
    let manifest = json!({ "fixtures": entries });
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest is plain JSON");
    text.push('\n');
    write(dir, "manifest.json", &text)?;
    files.push("manifest.json".into());
    let mut result = json!({ "count": entries.len(), "files": files });
    let mut failure = None;
    if check {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut all = Vec::new();
        for f in corpus() {
            all.push(verify(dir, &f, budget, &mut rng)?);
        }
        let failed: Vec<String> = all
            .iter()
            .filter(|v| v["passed"] == false)
            .map(|v| v["name"].as_str().unwrap_or_default().to_string())
            .collect();
        result["verification"] = json!(all);
        if !failed.is_empty() {
            failure = Some(format!("manifest verification failed for {}", failed.join(", ")));
        }
    }
    let config = json!({ "verify": check, "budget": budget, "seed": seed });
    Ok(Outcome { report: envelope("fixtures", &[], config, result), exhausted: None, failed: failure })
}
