//! Randomised comparison of the Smith form and short-vector enumeration
//! with slow, independent reference computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use k3five::lattice::{short_vectors_of_norm, smith_normal_form};
use k3five::linalg::{big_matrix, det, mat_mul};

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors as quotients of gcds of k x k minors.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m[0].len());
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in combinations(r, k) {
            for cols in combinations(c, k) {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                    .collect();
                g = g.gcd(&det(&big_matrix(&minor)));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat(BigInt::zero()).take(r.min(c) - k + 1));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

#[test]
fn smith_form_matches_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let rank = rng.gen_range(1..=rows.min(cols));
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..rank).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let b: Vec<Vec<i64>> = (0..rank)
            .map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| (0..rank).map(|t| a[i][t] * b[t][j]).sum()).collect())
            .collect();
        let big = big_matrix(&m);
        let s = smith_normal_form(&big);
        assert_eq!(mat_mul(&mat_mul(&s.left, &big), &s.right), s.diagonal, "{m:?}");
        assert!(det(&s.left).abs().is_one() && det(&s.right).abs().is_one());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(s.diagonal[i][j].is_zero(), "{m:?}");
                }
            }
        }
        assert_eq!(s.invariant_factors(), determinantal_factors(&m), "{m:?}");
    }
}

fn inverse_diagonal(g: &[Vec<f64>]) -> Vec<f64> {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        let d = a[c][c];
        for x in a[c].iter_mut() {
            *x /= d;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                for j in 0..2 * n {
                    a[r][j] -= f * a[c][j];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n + i]).collect()
}

fn brute_force(gram: &[Vec<i64>], norm: i64, bounds: &[i64]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let q: i64 = (0..n)
            .map(|i| (0..n).map(|j| x[i] * gram[i][j] * x[j]).sum::<i64>())
            .sum();
        if q == norm {
            out.push(x.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return out;
            }
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = -bounds[k];
            k += 1;
        }
    }
}

#[test]
fn short_vectors_match_box_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(1..=5);
        let a: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        // G = -(A A^T), shifted by -I to keep it definite
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        -(0..n).map(|t| a[i][t] * a[j][t]).sum::<i64>() - i64::from(i == j)
                    })
                    .collect()
            })
            .collect();
        if gram.iter().flatten().any(|&v| !(-8..=8).contains(&v)) {
            continue;
        }
        let norm = -rng.gen_range(1..=12);
        let pos: Vec<Vec<f64>> = gram
            .iter()
            .map(|r| r.iter().map(|&v| -(v as f64)).collect())
            .collect();
        let bounds: Vec<i64> = inverse_diagonal(&pos)
            .iter()
            .map(|d| ((-norm) as f64 * d).sqrt().floor() as i64 + 1)
            .collect();
        let expected = brute_force(&gram, norm, &bounds);
        let mut got = short_vectors_of_norm(&gram, norm).unwrap();
        got.sort();
        assert_eq!(got, expected, "{gram:?} norm {norm}");
        done += 1;
    }
}
