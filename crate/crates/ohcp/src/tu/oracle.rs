//! Exhaustive determinant scan, the second implementation behind the
//! circuit search. Exponential; meant for small matrices in tests.

use std::collections::HashSet;

use super::TuError;

/// Fraction-free determinant in i128. Entries must stay small (a {0,±1}
/// matrix up to about 20×20 is safe).
pub fn determinant_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn mask(ix: &[usize]) -> u64 {
    ix.iter().fold(0u64, |m, &i| m | 1 << i)
}

fn check_cap(a: &[Vec<i64>], cols: usize, cap: usize) -> Result<(), TuError> {
    let rows = a.len();
    if rows.min(cols) > cap || rows > 64 || cols > 64 {
        return Err(TuError::OracleCap { rows, cols, cap });
    }
    Ok(())
}

/// Every square submatrix whose determinant leaves {0, ±1} while all of its
/// proper square submatrices stay inside, as sorted (rows, cols).
pub fn minimal_non_tu(a: &[Vec<i64>], cols: usize, cap: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>, TuError> {
    check_cap(a, cols, cap)?;
    let rows = a.len();
    let mut out = Vec::new();
    let mut tainted_prev: HashSet<(u64, u64)> = HashSet::new();
    for k in 1..=rows.min(cols) {
        let mut tainted: HashSet<(u64, u64)> = HashSet::new();
        combinations(rows, k, |r| {
            combinations(cols, k, |c| {
                let (rm, cm) = (mask(r), mask(c));
                let inherits = !tainted_prev.is_empty()
                    && r.iter().any(|&ri| {
                        c.iter().any(|&ci| tainted_prev.contains(&(rm & !(1 << ri), cm & !(1 << ci))))
                    });
                if inherits {
                    tainted.insert((rm, cm));
                    return;
                }
                let sub: Vec<Vec<i64>> = r.iter().map(|&i| c.iter().map(|&j| a[i][j]).collect()).collect();
                if sub.iter().any(|row| row.iter().all(|&v| v == 0)) {
                    return;
                }
                if determinant_i128(&sub).abs() > 1 {
                    tainted.insert((rm, cm));
                    out.push((r.to_vec(), c.to_vec()));
                }
            })
        });
        tainted_prev = tainted;
    }
    out.sort();
    Ok(out)
}

/// Plain scan: true iff every square submatrix up to `cap` has determinant in {0, ±1}.
pub fn is_tu_by_determinants(a: &[Vec<i64>], cols: usize, cap: usize) -> Result<bool, TuError> {
    check_cap(a, cols, cap)?;
    let rows = a.len();
    for k in 1..=rows.min(cols) {
        let mut ok = true;
        combinations(rows, k, |r| {
            if !ok {
                return;
            }
            combinations(cols, k, |c| {
                if ok {
                    let sub: Vec<Vec<i64>> = r.iter().map(|&i| c.iter().map(|&j| a[i][j]).collect()).collect();
                    ok = determinant_i128(&sub).abs() <= 1;
                }
            })
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        assert_eq!(determinant_i128(&[]), 1);
        assert_eq!(determinant_i128(&[vec![1, 1], vec![1, -1]]), -2);
        assert_eq!(determinant_i128(&[vec![0, 1], vec![1, 0]]), -1);
        let c3 = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(determinant_i128(&c3), 2);
    }

    #[test]
    fn finds_the_two_by_two() {
        let a = vec![vec![1, 1, 0], vec![1, -1, 0]];
        assert_eq!(minimal_non_tu(&a, 3, 4).unwrap(), vec![(vec![0, 1], vec![0, 1])]);
        assert!(!is_tu_by_determinants(&a, 3, 4).unwrap());
        assert!(matches!(minimal_non_tu(&a, 3, 1), Err(TuError::OracleCap { .. })));
    }
}
