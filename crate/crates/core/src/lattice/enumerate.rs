//! Vectors of prescribed norm in negative definite lattices and their cosets.
//!
//! The search negates the form, LLL-reduces it, and runs a Fincke-Pohst style
//! depth-first search on the `LDL^T` decomposition. Every bound is an exact
//! rational; the interval for each coordinate is widened to integers with an
//! exact ceiling square root and each candidate is re-checked exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::lll::lll_gram;
use super::LatticeError;
use crate::linalg::{
    big_matrix, ceil_sqrt, inverse, is_symmetric, signature, small_vector, vec_mat, ZMat,
};

/// All integer `v` with `v^T g v == norm`, sorted lexicographically.
pub fn short_vectors_of_norm(gram: &[Vec<i64>], norm: i64) -> Result<Vec<Vec<i64>>, LatticeError> {
    let shift = vec![BigRational::zero(); gram.len()];
    let found = coset_vectors_of_norm_big(
        &big_matrix(gram),
        &shift,
        &BigRational::from_integer(BigInt::from(norm)),
    )?;
    to_small(found)
}

/// All integer `u` with `(u + shift)^T g (u + shift) == norm`, sorted
/// lexicographically. The list may be empty.
pub fn coset_vectors_of_norm(
    gram: &[Vec<i64>],
    shift: &[BigRational],
    norm: &BigRational,
) -> Result<Vec<Vec<i64>>, LatticeError> {
    to_small(coset_vectors_of_norm_big(&big_matrix(gram), shift, norm)?)
}

fn to_small(v: Vec<Vec<BigInt>>) -> Result<Vec<Vec<i64>>, LatticeError> {
    v.iter()
        .map(|x| small_vector(x).ok_or(LatticeError::Overflow))
        .collect()
}

pub(crate) fn coset_vectors_of_norm_big(
    gram: &ZMat,
    shift: &[BigRational],
    norm: &BigRational,
) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let n = gram.len();
    if !is_symmetric(gram) {
        return Err(LatticeError::NotSymmetric);
    }
    if shift.len() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            got: shift.len(),
        });
    }
    if n == 0 {
        return Ok(if norm.is_zero() { vec![vec![]] } else { vec![] });
    }
    if signature(gram) != (0, n) {
        return Err(LatticeError::NotNegativeDefinite);
    }
    let target = -norm.clone();
    if target.is_negative() {
        return Ok(vec![]);
    }

    let pos: ZMat = gram
        .iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    let red = lll_gram(&pos);
    let hinv = inverse(&red.transform).expect("unimodular transform");
    // shift in reduced coordinates: s' = s H^{-1}
    let shift_r: Vec<BigRational> = (0..n)
        .map(|j| {
            shift
                .iter()
                .zip(&hinv)
                .map(|(s, row)| s * &row[j])
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .collect();

    let ldl = Ldl::new(&red.reduced);
    let mut search = Search {
        ldl: &ldl,
        shift: &shift_r,
        current: vec![BigInt::zero(); n],
        x: vec![BigRational::zero(); n],
        out: Vec::new(),
    };
    search.descend(n - 1, target.clone());

    let mut found: Vec<Vec<BigInt>> = search
        .out
        .iter()
        .map(|u| vec_mat(u, &red.transform))
        .collect();
    found.sort();
    Ok(found)
}

/// `Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2`
struct Ldl {
    d: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

impl Ldl {
    fn new(q: &ZMat) -> Self {
        let n = q.len();
        let mut a: Vec<Vec<BigRational>> = q
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut d = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let di = a[i][i].clone();
            for j in i + 1..n {
                mu[i][j] = &a[i][j] / &di;
            }
            for j in i + 1..n {
                for k in i + 1..n {
                    let t = &a[j][i] * &mu[i][k];
                    a[j][k] -= t;
                }
            }
            d.push(di);
        }
        Ldl { d, mu }
    }
}

struct Search<'a> {
    ldl: &'a Ldl,
    shift: &'a [BigRational],
    current: Vec<BigInt>,
    /// `current + shift` for the already fixed coordinates
    x: Vec<BigRational>,
    out: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    fn descend(&mut self, i: usize, remaining: BigRational) {
        let n = self.current.len();
        let mut c = self.shift[i].clone();
        for j in i + 1..n {
            if !self.ldl.mu[i][j].is_zero() && !self.x[j].is_zero() {
                c += &self.ldl.mu[i][j] * &self.x[j];
            }
        }
        let radius = ceil_sqrt(&(&remaining / &self.ldl.d[i]));
        let radius = BigRational::from_integer(radius);
        let neg_c = -c.clone();
        let lo = (&neg_c - &radius).ceil().to_integer();
        let hi = (&neg_c + &radius).floor().to_integer();
        let mut u = lo;
        while u <= hi {
            let y = BigRational::from_integer(u.clone()) + &c;
            let used = &self.ldl.d[i] * &y * &y;
            if used <= remaining {
                let rest = &remaining - &used;
                self.current[i] = u.clone();
                self.x[i] = BigRational::from_integer(u.clone()) + &self.shift[i];
                if i == 0 {
                    if rest.is_zero() {
                        self.out.push(self.current.clone());
                    }
                } else {
                    self.descend(i - 1, rest);
                }
            }
            u += 1;
        }
        self.current[i] = BigInt::zero();
        self.x[i] = BigRational::zero();
    }
}
