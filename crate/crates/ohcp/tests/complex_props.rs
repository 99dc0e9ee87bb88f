use num::{One, Signed, Zero};
use ohcp::fixtures::corpus;
use ohcp::linalg::{homology, rank, smith_normal_form, IntegerMatrix, RationalMatrix};
use ohcp::{build_complex, SimplicialComplex};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Vec<Vec<u32>>> {
    let simplex = proptest::collection::btree_set(0u32..7, 1..=4).prop_map(|s| s.into_iter().collect::<Vec<_>>());
    proptest::collection::vec(simplex, 1..8)
}

fn product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect()).collect()
}

fn rational_rank(a: &[Vec<i64>]) -> usize {
    if a.is_empty() || a[0].is_empty() {
        return 0;
    }
    rank(&RationalMatrix::from_i64(a).unwrap()).unwrap()
}

/// Betti numbers from ranks over Q, summed with signs.
fn euler_from_ranks(k: &SimplicialComplex) -> i64 {
    let top = k.top_dim();
    let ranks: Vec<usize> =
        (0..=top + 1).map(|q| if q == 0 || q > top { 0 } else { rational_rank(&k.boundary_matrix(q).unwrap().to_dense()) }).collect();
    (0..=top).map(|p| (k.count(p) - ranks[p] - ranks[p + 1]) as i64 * if p % 2 == 0 { 1 } else { -1 }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_of_boundary_vanishes(maximal in complex()) {
        let k = build_complex(&maximal).unwrap();
        for q in 2..=k.top_dim() {
            let lower = k.boundary_matrix(q - 1).unwrap().to_dense();
            let upper = k.boundary_matrix(q).unwrap().to_dense();
            prop_assert!(product(&lower, &upper).iter().flatten().all(|&v| v == 0));
        }
    }

    #[test]
    fn construction_is_order_independent(maximal in complex()) {
        let k = build_complex(&maximal).unwrap();
        let mut shuffled: Vec<Vec<u32>> = maximal.iter().rev().map(|s| s.iter().rev().copied().collect()).collect();
        shuffled.rotate_left(maximal.len() / 2);
        prop_assert_eq!(&k, &build_complex(&shuffled).unwrap());
        prop_assert_eq!(k, build_complex(&maximal).unwrap());
    }

    #[test]
    fn reversed_orientation_negates_column(maximal in complex()) {
        let k = build_complex(&maximal).unwrap();
        for q in 1..=k.top_dim() {
            let b = k.boundary_matrix(q).unwrap();
            for j in 0..b.n() {
                let mut labels = k.simplex(q, j).to_vec();
                labels.swap(0, 1);
                let (idx, sign) = k.locate(&labels).unwrap();
                prop_assert_eq!((idx, sign), (j, -1));
                let neg = b.with_column_negated(j);
                for i in 0..b.m() {
                    prop_assert_eq!(neg.get(i, j), -b.get(i, j));
                }
            }
        }
    }

    #[test]
    fn homology_agrees_with_euler_characteristic(maximal in complex()) {
        let k = build_complex(&maximal).unwrap();
        let chi: i64 = (0..=k.top_dim())
            .map(|p| homology(&k, p).unwrap().betti as i64 * if p % 2 == 0 { 1 } else { -1 })
            .sum();
        prop_assert_eq!(chi, k.euler_characteristic());
        prop_assert_eq!(chi, euler_from_ranks(&k));
    }

    #[test]
    fn smith_form_factors_the_matrix(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..5)) {
        let a = IntegerMatrix::from_i64(&rows).unwrap();
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
        prop_assert_eq!(s.rank, rational_rank(&rows));
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }
}

#[test]
fn fixture_homology() {
    let betti = |name: &str, p: usize| {
        let f = corpus().into_iter().find(|f| f.name == name).unwrap();
        homology(&f.complex(), p).unwrap()
    };
    assert!(betti("tetrahedron", 1).is_trivial());
    assert_eq!(betti("tetrahedron", 2).betti, 1);
    assert_eq!(betti("mobius5", 1).betti, 1);
    let rp2 = betti("rp2", 1);
    assert_eq!((rp2.betti, rp2.torsion.len()), (0, 1));
    assert_eq!(rp2.torsion[0], 2.into());
    assert_eq!(betti("rp2", 2).betti, 0);
}

#[test]
fn mobius_incidence_counts() {
    let k = build_complex(&ohcp::fixtures::mobius5()).unwrap();
    let b = k.boundary_matrix(2).unwrap();
    assert_eq!((b.m(), b.n()), (10, 5));
    let mut degrees: Vec<usize> = (0..b.m()).map(|i| b.row(i).len()).collect();
    degrees.sort();
    assert_eq!(degrees, vec![1, 1, 1, 1, 1, 2, 2, 2, 2, 2]);
}
