//! Integral LLL reduction driven by a positive definite Gram matrix.
//!
//! All quantities stay integral (the subdeterminants `d_i` and the scaled
//! Gram-Schmidt coefficients `lambda_ij`), so no rationals are needed. The
//! reduction only serves to make later enumeration cheap; correctness of the
//! callers never depends on how well it reduces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::linalg::{identity, mat_mul, transpose, ZMat};

/// Result of a reduction: `transform * gram * transform^T == reduced`.
pub struct Reduced {
    pub transform: ZMat,
    pub reduced: ZMat,
}

/// Reduces a positive definite Gram matrix with parameter 3/4.
///
/// Panics if `gram` is not positive definite; callers check definiteness
/// first.
pub fn lll_gram(gram: &ZMat) -> Reduced {
    let n = gram.len();
    if n <= 1 {
        return Reduced {
            transform: identity(n),
            reduced: gram.clone(),
        };
    }
    let mut g = gram.clone();
    let mut h = identity(n);
    // 1-based bookkeeping: d[0] = 1, d[i] for basis vector i (1..=n)
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::from(1);
    d[1] = g[0][0].clone();
    let mut k = 2usize;
    let mut kmax = 1usize;

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = g[k - 1][j - 1].clone();
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(u.is_positive(), "Gram matrix is not positive definite");
                    d[k] = u;
                }
            }
        }
        loop {
            red(k, k - 1, &mut g, &mut h, &d, &mut lam);
            let lhs = BigInt::from(4) * &d[k] * &d[k - 2];
            let rhs = BigInt::from(3) * &d[k - 1] * &d[k - 1]
                - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                swap(k, kmax, &mut g, &mut h, &mut d, &mut lam);
                k = (k - 1).max(2);
            } else {
                for l in (1..k - 1).rev() {
                    red(k, l, &mut g, &mut h, &d, &mut lam);
                }
                k += 1;
                break;
            }
        }
    }
    let reduced = mat_mul(&mat_mul(&h, gram), &transpose(&h));
    debug_assert_eq!(reduced, g);
    Reduced {
        transform: h,
        reduced,
    }
}

fn red(k: usize, l: usize, g: &mut ZMat, h: &mut ZMat, d: &[BigInt], lam: &mut [Vec<BigInt>]) {
    let two_lam = BigInt::from(2) * &lam[k][l];
    if two_lam.abs() <= d[l] {
        return;
    }
    // nearest integer to lam/d
    let q = (&two_lam + &d[l]).div_floor(&(BigInt::from(2) * &d[l]));
    // b_k -= q b_l
    let (ki, li) = (k - 1, l - 1);
    let hl = h[li].clone();
    for (x, y) in h[ki].iter_mut().zip(&hl) {
        *x -= &q * y;
    }
    let n = g.len();
    let gll = g[li][li].clone();
    let gkl = g[ki][li].clone();
    let gkk_new = &g[ki][ki] - BigInt::from(2) * &q * &gkl + &q * &q * &gll;
    for j in 0..n {
        if j == ki {
            continue;
        }
        let v = &g[ki][j] - &q * &g[li][j];
        g[ki][j] = v.clone();
        g[j][ki] = v;
    }
    g[ki][ki] = gkk_new;
    lam[k][l] -= &q * &d[l];
    for i in 1..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(
    k: usize,
    kmax: usize,
    g: &mut ZMat,
    h: &mut ZMat,
    d: &mut [BigInt],
    lam: &mut [Vec<BigInt>],
) {
    let (a, b) = (k - 1, k - 2);
    h.swap(a, b);
    g.swap(a, b);
    for r in g.iter_mut() {
        r.swap(a, b);
    }
    for j in 1..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = bb;
}
