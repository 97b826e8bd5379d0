//! Dense exact linear algebra over the integers and the rationals.
//!
//! Matrices are plain row-major `Vec<Vec<_>>`. Nothing here is clever; the
//! matrices in this crate are at most a few dozen rows wide.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type ZMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn big_matrix(m: &[Vec<i64>]) -> ZMat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn big_vector(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts back to machine integers, `None` if any entry does not fit.
pub fn small_matrix(m: &ZMat) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|r| small_vector(r)).collect()
}

pub fn small_vector(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

pub fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &ZMat, b: &ZMat) -> ZMat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[BigInt], m: &ZMat) -> Vec<BigInt> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![BigInt::zero(); cols];
    for (k, coef) in v.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o += coef * &m[k][j];
        }
    }
    out
}

/// `u^T m w` for an integer matrix.
pub fn bilinear(u: &[BigInt], m: &ZMat, w: &[BigInt]) -> BigInt {
    let mw: Vec<BigInt> = m
        .iter()
        .map(|r| r.iter().zip(w).map(|(a, b)| a * b).sum())
        .collect();
    u.iter().zip(&mw).map(|(a, b)| a * b).sum()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &ZMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank over the rationals.
pub fn rank(m: &ZMat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let (f, g) = (a[r][c].clone(), a[i][c].clone());
            for j in c..cols {
                a[i][j] = &a[i][j] * &f - &a[r][j] * &g;
            }
            let content = a[i].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in a[i].iter_mut() {
                    *x /= &content;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn to_rational(m: &ZMat) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Inverse over the rationals, `None` when singular.
pub fn inverse_q(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m.clone();
    let mut inv: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
                let t = &f * &inv[c][j];
                inv[i][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn inverse(m: &ZMat) -> Option<QMat> {
    inverse_q(&to_rational(m))
}

/// Solves `x * m = target` for a square invertible `m`.
pub fn solve_left(m: &ZMat, target: &[BigRational]) -> Option<Vec<BigRational>> {
    let inv = inverse(m)?;
    let n = inv.len();
    Some(
        (0..n)
            .map(|j| {
                target
                    .iter()
                    .zip(&inv)
                    .map(|(t, row)| t * &row[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect(),
    )
}

/// Hermite normal form of the row lattice; returns only the nonzero rows,
/// upper triangular with positive pivots and reduced entries above pivots.
pub fn hnf_rows(m: &ZMat) -> ZMat {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero entry in column c, rows r..
            let Some(p) = (r..rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
            else {
                break;
            };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in c..cols {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let t = &q * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// For an integer row vector `c`, returns `(g, w)` where `w` is unimodular,
/// `c * w = (g, 0, ..., 0)` and `g = gcd(c) >= 0`. The last `len-1` columns
/// of `w` span the kernel of `c`.
pub fn gcd_transform(c: &[BigInt]) -> (BigInt, ZMat) {
    let n = c.len();
    let mut w = identity(n);
    let mut v = c.to_vec();
    for j in 1..n {
        // act on columns 0 and j so that v[j] becomes 0
        while !v[j].is_zero() {
            let q = v[0].div_floor(&v[j]);
            // col0 -= q * colj, then swap
            for row in w.iter_mut() {
                let t = &q * &row[j];
                row[0] -= t;
            }
            let t = &q * &v[j];
            v[0] -= t;
            v.swap(0, j);
            for row in w.iter_mut() {
                row.swap(0, j);
            }
        }
    }
    if v[0].is_negative() {
        v[0] = -&v[0];
        for row in w.iter_mut() {
            row[0] = -&row[0];
        }
    }
    (v[0].clone(), w)
}

/// Signature `(positive, negative)` of a symmetric rational matrix, by
/// congruence diagonalisation.
pub fn signature(m: &ZMat) -> (usize, usize) {
    let mut a = to_rational(m);
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // replace e_k by e_k + e_j: diagonal becomes 2 a_kj != 0
                for i in 0..n {
                    let t = a[j][i].clone();
                    a[k][i] += t;
                }
                for i in 0..n {
                    let t = a[i][j].clone();
                    a[i][k] += t;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        for j in k + 1..n {
            a[k][j] = BigRational::zero();
        }
        for i in k + 1..n {
            a[i][k] = BigRational::zero();
        }
        k += 1;
    }
    (pos, neg)
}

pub fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Integer square root, floor.
pub fn isqrt(n: &BigInt) -> BigInt {
    if n.is_negative() || n.is_zero() {
        return BigInt::zero();
    }
    n.sqrt()
}

/// Smallest integer `s >= 0` with `s^2 >= q` for a nonnegative rational `q`.
pub fn ceil_sqrt(q: &BigRational) -> BigInt {
    if !q.is_positive() {
        return BigInt::zero();
    }
    let c = q.ceil().to_integer();
    let mut s = isqrt(&c);
    if &(&s * &s) < &c {
        s += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: &[&[i64]]) -> ZMat {
        big_matrix(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&z(&[&[2, 1], &[1, -2]])), BigInt::from(-5));
        assert_eq!(det(&z(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&z(&[&[1, 2], &[2, 4]])), BigInt::zero());
        let a4 = z(&[&[-2, 1, 0, 0], &[1, -2, 1, 0], &[0, 1, -2, 1], &[0, 0, 1, -2]]);
        assert_eq!(det(&a4), BigInt::from(5));
    }

    #[test]
    fn hnf_of_redundant_rows() {
        let h = hnf_rows(&z(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(h, z(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn gcd_transform_kernel() {
        let c = big_vector(&[6, 10, 15]);
        let (g, w) = gcd_transform(&c);
        assert_eq!(g, BigInt::one());
        assert_eq!(det(&w).abs(), BigInt::one());
        let cw = vec_mat(&c, &w);
        assert_eq!(cw, big_vector(&[1, 0, 0]));
    }

    #[test]
    fn signature_of_hyperbolic_block() {
        assert_eq!(signature(&z(&[&[0, 1], &[1, 0]])), (1, 1));
        assert_eq!(signature(&z(&[&[2, 1], &[1, -2]])), (1, 1));
        assert_eq!(signature(&z(&[&[-2, 1], &[1, -2]])), (0, 2));
    }

    #[test]
    fn ceil_sqrt_is_tight() {
        let q = BigRational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(ceil_sqrt(&q), BigInt::from(2));
        assert_eq!(ceil_sqrt(&BigRational::from_integer(BigInt::from(4))), BigInt::from(2));
        assert_eq!(ceil_sqrt(&BigRational::from_integer(BigInt::from(5))), BigInt::from(3));
    }
}
