//! Exact integer linear algebra: fraction-free rank and determinants,
//! and Hermite reduction for integer lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank over `Q` of an integer matrix, by Bareiss fraction-free elimination.
pub fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns only the nonzero rows. Pivots are positive and entries above each
/// pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below r
            let best = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let Some(best) = best else { break };
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot = m[r].clone();
                for (x, p) in m[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &q * p;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let pivot = m[r].clone();
                for (x, p) in m[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &q * p;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Whether `target` lies in the integer span of `generators`.
pub fn lattice_contains(target: &[i64], generators: &[Vec<i64>]) -> bool {
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| big(g)).collect();
    let hnf = hermite_rows(&rows);
    let mut t = big(target);
    for row in &hnf {
        let c = row.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero");
        if t[..c].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = t[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        for (tj, rj) in t.iter_mut().zip(row) {
            *tj -= &q * rj;
        }
    }
    t.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(big(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank(big(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(big(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])), 3);
        assert_eq!(rank(vec![]), 0);
    }

    #[test]
    fn determinant_and_minors() {
        let m = vec![vec![-3, 0, 1], vec![0, -3, 1], vec![1, 1, -2]];
        let minors: Vec<i64> = leading_minors(&m).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(minors, vec![-3, 9, -12]);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn membership() {
        let gens = vec![vec![2, 0], vec![0, 3]];
        assert!(lattice_contains(&[4, 9], &gens));
        assert!(!lattice_contains(&[1, 0], &gens));
        let gens = vec![vec![2, 1], vec![1, 1]];
        assert!(lattice_contains(&[1, 0], &gens));
        assert!(!lattice_contains(&[1, 0], &[]));
        assert!(lattice_contains(&[0, 0], &[]));
    }
}
