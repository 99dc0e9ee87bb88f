use std::collections::BTreeSet;
use std::sync::Arc;

use num::{Signed, Zero};
use ohcp::fixtures::{corpus, Fixture};
use ohcp::lp::sample::{integral_input, positive_weights};
use ohcp::lp::*;
use ohcp::neutralization::*;
use ohcp::rational::{frac, int};
use ohcp::tu::{bipartite_graph, extract_orientation_reversing_chain, find_mntus, MntuCertificate, DEFAULT_SEARCH_BUDGET};
use ohcp::{Chain, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn get(name: &str) -> Fixture {
    corpus().into_iter().find(|f| f.name == name).unwrap()
}

fn setup(f: &Fixture) -> (OhcpInstance, Vec<MntuCertificate>) {
    let k = Arc::new(f.complex());
    let inst = formulate(k.clone(), 1, &Chain::zero(1), &vec![int(1); k.count(1)]).unwrap();
    let s = find_mntus(inst.boundary(), DEFAULT_SEARCH_BUDGET);
    assert!(s.complete);
    (inst, s.certificates)
}

fn q_on(cert: &MntuCertificate, q: &[Q]) -> Vec<Q> {
    cert.cols.iter().map(|&c| q[c].clone()).collect()
}

#[test]
fn unit_nulls_are_half_on_the_columns() {
    for f in corpus() {
        let (inst, certs) = setup(&f);
        for cert in certs.iter().take(6) {
            for &i in &cert.rows {
                let u = unit_null(&inst, cert, i).unwrap();
                assert!(inst.in_kernel(&u.element));
                let q = u.q_coefficients();
                for (k, v) in q.iter().enumerate() {
                    if cert.cols.contains(&k) {
                        assert_eq!(v.abs(), frac(1, 2), "{}", f.name);
                    } else {
                        assert!(v.is_zero());
                    }
                }
                let p = u.p_coefficients();
                for &r in &cert.rows {
                    assert_eq!(p[r], if r == i { int(1) } else { int(0) });
                }
            }
        }
    }
}

#[test]
fn unit_null_parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for name in ["mobius5", "filled-core", "rp2", "pinched-strip-nested"] {
        let (inst, certs) = setup(&get(name));
        for cert in certs.iter().take(4) {
            let nulls: Vec<Vec<Q>> =
                cert.rows.iter().map(|&i| q_on(cert, &unit_null(&inst, cert, i).unwrap().q_coefficients())).collect();
            for a in &nulls {
                for b in &nulls {
                    let sum: Vec<Q> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    let diff: Vec<Q> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                    for v in sum.iter().chain(&diff) {
                        assert!(v.is_zero() || v.abs() == int(1));
                    }
                    for (s, d) in sum.iter().zip(&diff) {
                        assert_ne!(s.is_zero(), d.is_zero());
                    }
                }
            }
            for _ in 0..200 {
                let size = rng.random_range(1..=7);
                let mut total = vec![Q::zero(); cert.size()];
                for _ in 0..size {
                    let pick = &nulls[rng.random_range(0..nulls.len())];
                    let sign = if rng.random_bool(0.5) { int(1) } else { int(-1) };
                    for (t, v) in total.iter_mut().zip(pick) {
                        *t += v * &sign;
                    }
                }
                if size % 2 == 0 {
                    assert!(total.iter().all(|v| v.is_integer()));
                } else {
                    assert!(total.iter().all(|v| !v.is_zero() && !v.is_integer() && *v.denom() == 2.into()));
                }
            }
        }
    }
}

#[test]
fn elementary_vertices_are_basic_with_zero_interior() {
    for f in corpus() {
        let (inst, certs) = setup(&f);
        for cert in certs.iter().take(6) {
            for &i in &cert.rows {
                for positive in [true, false] {
                    let e = inst.elementary(i, positive);
                    let z = elementary_fractional_vertex(&inst, cert, i, positive).unwrap();
                    assert!(e.is_feasible(&z));
                    assert!(is_basic_solution(&e, &z).unwrap());
                    assert!(!z.is_integral());
                    let p = z.p_coefficients();
                    assert!(cert.rows.iter().all(|&r| p[r].is_zero()), "{}", f.name);
                    let q = z.q_coefficients();
                    let support: BTreeSet<usize> = (0..q.len()).filter(|&k| !q[k].is_zero()).collect();
                    assert_eq!(support, cert.cols.iter().copied().collect(), "{}", f.name);
                }
            }
        }
    }
}

#[test]
fn elementary_vertex_is_unique_on_its_columns() {
    for name in ["mobius5", "filled-core", "rp2", "pinched-strip-nested"] {
        let (inst, certs) = setup(&get(name));
        for cert in certs.iter().filter(|c| c.size() <= 6).take(4) {
            let i = cert.rows[0];
            for positive in [true, false] {
                let e = inst.elementary(i, positive);
                let z = elementary_fractional_vertex(&inst, cert, i, positive).unwrap();
                let all = enumerate_vertices(&e, Some(&cert.cols), 1_000_000).unwrap();
                assert!(all.complete);
                let zero_interior: Vec<&SolutionVector> = all
                    .vertices
                    .iter()
                    .filter(|v| {
                        let p = v.p_coefficients();
                        cert.rows.iter().all(|&r| p[r].is_zero())
                    })
                    .collect();
                assert_eq!(zero_interior, vec![&z], "{name} {:?} {:?}", cert.rows, cert.cols);
                if cert.is_cmntus {
                    let fractional: Vec<&SolutionVector> = all.vertices.iter().filter(|v| !v.is_integral()).collect();
                    assert_eq!(fractional, vec![&z], "{name}");
                }
            }
        }
    }
}

#[test]
fn exterior_row_parity_separates_cmntus() {
    for f in corpus() {
        let (inst, certs) = setup(&f);
        let b = inst.boundary().to_dense();
        let count = |c: &MntuCertificate, r: usize| c.cols.iter().filter(|&&j| b[r][j] != 0).count();
        for c in &certs {
            if c.is_cmntus {
                assert!(c.exterior_rows.iter().all(|&r| count(c, r) % 2 == 1), "{}", f.name);
            } else {
                assert!(c.exterior_rows.iter().any(|&r| count(c, r) % 2 == 0), "{}", f.name);
            }
        }
    }
}

#[test]
fn orientation_reversing_chains_sum_to_two_mod_four() {
    for f in corpus() {
        let (inst, certs) = setup(&f);
        let g = bipartite_graph(inst.boundary());
        for c in &certs {
            let chain = extract_orientation_reversing_chain(c, &g).unwrap();
            assert_eq!(chain.entry_sum().rem_euclid(4), 2);
            assert_eq!(chain.len(), c.size());
            assert_eq!(chain.reversed(&g).unwrap().entry_sum().rem_euclid(4), 2);
        }
    }
}

#[test]
fn procedures_never_contradict() {
    for f in corpus() {
        let k = Arc::new(f.complex());
        let proj = decide_by_projection(&k, 2, 1_000_000).unwrap();
        let radius = if f.name == "filled-core" { 2 } else { 1 };
        let def = decide_by_definition(&k, 2, radius, 2_000_000).unwrap();
        let definite = |v: Verdict| matches!(v, Verdict::Yes | Verdict::YesVacuous | Verdict::No);
        if definite(proj.verdict) && definite(def.verdict) {
            assert_eq!(proj.verdict == Verdict::No, def.verdict == Verdict::No, "{}", f.name);
        }
        assert_ne!(def.verdict, Verdict::No, "{}", f.name);
        if let Some(v) = h1_trivial_shortcut(&k).unwrap() {
            assert_eq!(v, Verdict::Yes);
            assert!(matches!(proj.verdict, Verdict::Yes | Verdict::YesVacuous), "{}", f.name);
        }
    }
}

#[test]
fn filled_core_chains_split_the_vertex() {
    let f = get("filled-core");
    let (inst, certs) = setup(&f);
    let k = inst.complex().clone();
    let i = k.index_of(&[1, 2]).unwrap();
    let mut found = 0;
    for cert in certs.iter().filter(|c| c.rows.contains(&i)) {
        let z = elementary_fractional_vertex(&inst, cert, i, true).unwrap();
        let chain = find_neutralizing_chain(&inst, cert, i, 2).unwrap().expect("chain within radius 2");
        let (z1, z2) = neutralized_vertex_decomposition(&inst.elementary(i, true), cert, &z, &chain).unwrap();
        assert!(z1.is_integral() && z2.is_integral());
        assert_ne!(z1, z2);
        found += 1;
    }
    assert!(found > 0);
}

#[test]
fn tu_fixture_vertices_have_unit_coefficients() {
    for name in ["square", "tetrahedron"] {
        let (inst, certs) = setup(&get(name));
        assert!(certs.is_empty());
        for i in 0..inst.m() {
            for positive in [true, false] {
                let v = enumerate_vertices(&inst.elementary(i, positive), None, 1_000_000).unwrap();
                assert!(v.complete);
                for z in &v.vertices {
                    assert!(z.is_integral());
                    assert!(z.p_coefficients().iter().all(|c| c.abs() <= int(1)), "{name}");
                }
            }
        }
    }
}

#[test]
fn neutralized_fixtures_have_integral_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for f in corpus() {
        if !matches!(f.expect.neutralization, Verdict::Yes | Verdict::YesVacuous) || f.name == "filled-core" {
            continue;
        }
        let (base, _) = setup(&f);
        for _ in 0..8 {
            let inst = base
                .with_input(integral_input(&base, 3, &mut rng))
                .unwrap()
                .with_weights(positive_weights(&base, &mut rng))
                .unwrap();
            let opt = enumerate_optimal_vertices(&inst, 4096).unwrap();
            assert!(opt.vertices.iter().any(|z| z.is_integral()), "{}", f.name);
        }
    }
}
