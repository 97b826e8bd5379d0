use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::lattice::{DualVector, GramLattice};

use super::s0::{build_s0, lift, g_basis, S0_RANK};
use super::{q_value, DiscformError, GElement, QValue};

/// Outcome of comparing the closed formula for `q` with the discriminant
/// form computed from the Gram matrix of `S0`.
#[derive(Clone, Debug, Serialize)]
pub struct QConsistencyReport {
    pub invariant_factors: Vec<i64>,
    /// `pr` of the six basis dual vectors, in Smith coordinates.
    pub basis_images: Vec<Vec<i64>>,
    pub basis_invertible: bool,
    pub checked: usize,
    /// Elements where the two computations disagree, with the Gram value.
    pub mismatches: Vec<(GElement, String)>,
    /// `pr(b^dual)` in the `[x | y]` basis for every basis vector `b` of `S0`.
    pub dual_images: Vec<(String, GElement)>,
    pub dual_mismatches: Vec<String>,
}

impl QConsistencyReport {
    pub fn ok(&self) -> bool {
        self.basis_invertible
            && self.invariant_factors == vec![5; 6]
            && self.checked == 15625
            && self.mismatches.is_empty()
            && self.dual_mismatches.is_empty()
    }
}

/// Checks `q_value` against `x^2 mod 2Z` on all of `G` and on the image of
/// every dual basis vector.
pub fn verify_q_consistency() -> Result<QConsistencyReport, DiscformError> {
    let s0 = build_s0();
    let group = s0.discriminant_group();
    let invariant_factors: Vec<i64> = group
        .invariant_factors
        .iter()
        .map(|d| d.to_i64().unwrap_or(0))
        .collect();
    let basis_images: Vec<Vec<i64>> = g_basis().iter().map(|b| small(&group.project(b))).collect();
    let inv = if invariant_factors == vec![5; 6] {
        inverse_mod5(&basis_images)
    } else {
        None
    };
    let dual = s0.dual_gram();

    let mut mismatches = Vec::new();
    for v in GElement::all() {
        let l = lift(&v);
        let gram_q = l.pair(&l, &dual);
        if !same_mod_2(&gram_q, q_value(&v)) {
            mismatches.push((v, crate::lattice::rational_to_string(&gram_q)));
        }
    }

    let mut dual_images = Vec::new();
    let mut dual_mismatches = Vec::new();
    if let Some(inv) = &inv {
        for k in 0..S0_RANK {
            let d = DualVector::basis(S0_RANK, k);
            let coords = mat_vec_mod5(&small(&group.project(&d)), inv);
            let v = GElement::from_slice(&coords).unwrap();
            let gram_q = d.pair(&d, &dual);
            if !same_mod_2(&gram_q, q_value(&v)) {
                dual_mismatches.push(label(&s0, k));
            }
            dual_images.push((label(&s0, k), v));
        }
    }

    Ok(QConsistencyReport {
        invariant_factors,
        basis_images,
        basis_invertible: inv.is_some(),
        checked: 15625,
        mismatches,
        dual_images,
        dual_mismatches,
    })
}

fn label(s: &GramLattice, k: usize) -> String {
    s.labels()[k].clone()
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().unwrap_or(0)).collect()
}

fn same_mod_2(gram_q: &BigRational, q: QValue) -> bool {
    let formula = BigRational::new(BigInt::from(q.0), BigInt::from(5));
    let diff = (gram_q - formula) / BigRational::from_integer(BigInt::from(2));
    diff.is_integer()
}

/// Inverse over F5 by Gauss-Jordan.
fn inverse_mod5(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<i64> = r.iter().map(|x| x.rem_euclid(5)).collect();
            row.extend((0..n).map(|j| i64::from(i == j)));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, p);
        let inv = [0, 1, 3, 2, 4][a[c][c] as usize];
        for x in a[c].iter_mut() {
            *x = (*x * inv) % 5;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..2 * n {
                    a[r][j] = (a[r][j] - f * a[c][j]).rem_euclid(5);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix, mod 5: solves `c * basis_images = p` when
/// given the inverse.
fn mat_vec_mod5(p: &[i64], inv: &[Vec<i64>]) -> Vec<i64> {
    (0..inv.len())
        .map(|j| {
            p.iter()
                .zip(inv)
                .map(|(a, row)| a * row[j])
                .sum::<i64>()
                .rem_euclid(5)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod5_round_trip() {
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = inverse_mod5(&m).unwrap();
        assert_eq!(mat_vec_mod5(&mat_vec_mod5(&[1, 0], &m), &inv), vec![1, 0]);
        assert!(inverse_mod5(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn formula_matches_gram() {
        let r = verify_q_consistency().unwrap();
        assert!(r.ok(), "{:?}", r.mismatches.first());
        let find = |l: &str| r.dual_images.iter().find(|(k, _)| k == l).unwrap().1;
        // pr(e_i^dual) = i pr(e_1^dual) within each block, pr(l^dual) = 3 pr(h^dual)
        for j in 1..=5 {
            let e1 = find(&format!("e1^({j})"));
            for i in 1..=4u8 {
                assert_eq!(find(&format!("e{i}^({j})")), e1.scale(i));
            }
        }
        assert_eq!(find("l"), find("h").scale(3));
        assert_eq!(find("h"), GElement::new([0; 5], 1));
    }
}
