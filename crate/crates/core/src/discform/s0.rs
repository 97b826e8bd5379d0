use crate::lattice::{negative_a, DualVector, GramLattice};

use super::GElement;

pub const S0_RANK: usize = 22;

/// Index of `e_i^(j)` (both one-based) in the basis of `S0`.
pub(crate) fn e_index(i: usize, j: usize) -> usize {
    4 * (j - 1) + (i - 1)
}

pub(crate) const H_INDEX: usize = 20;
pub(crate) const L_INDEX: usize = 21;

/// `S0 = 5A4(-1) ⊕ <h, l>` with `h^2 = 2`, `h.l = 1`, `l^2 = -2`, basis
/// `e1^(1), ..., e4^(5), h, l`.
pub fn build_s0() -> GramLattice {
    let mut s = negative_a(4, |i| format!("e{i}^(1)"));
    for j in 2..=5 {
        s = s.direct_sum(&negative_a(4, |i| format!("e{i}^({j})")));
    }
    let hl = GramLattice::new(
        vec![vec![2, 1], vec![1, -2]],
        vec!["h".to_string(), "l".to_string()],
    )
    .expect("hyperbolic block is nondegenerate");
    s.direct_sum(&hl)
}

pub fn h_vector() -> Vec<i64> {
    unit(H_INDEX)
}

pub fn l_vector() -> Vec<i64> {
    unit(L_INDEX)
}

fn unit(i: usize) -> Vec<i64> {
    let mut v = vec![0; S0_RANK];
    v[i] = 1;
    v
}

/// The six dual vectors `e_1^(j)^dual` (j = 1..5) and `h^dual`.
pub fn g_basis() -> Vec<DualVector> {
    (1..=5)
        .map(|j| e_index(1, j))
        .chain(std::iter::once(H_INDEX))
        .map(|k| DualVector::basis(S0_RANK, k))
        .collect()
}

/// A dual vector mapping to `v` under `pr`.
pub fn lift(v: &GElement) -> DualVector {
    let mut c = vec![0i64; S0_RANK];
    for j in 0..5 {
        c[e_index(1, j + 1)] = v.x[j] as i64;
    }
    c[H_INDEX] = v.y as i64;
    DualVector::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn s0_invariants() {
        let s = build_s0();
        assert_eq!(s.rank(), 22);
        assert!(s.is_even());
        assert_eq!(s.signature(), (1, 21));
        assert_eq!(s.det(), BigInt::from(-(5i64.pow(6))));
        assert_eq!(s.labels()[0], "e1^(1)");
        assert_eq!(s.labels()[19], "e4^(5)");
        assert_eq!(s.label_index("h"), Some(20));
        assert_eq!(s.label_index("l"), Some(21));
        let g = s.discriminant_group();
        assert_eq!(g.invariant_factors, vec![BigInt::from(5); 6]);
    }
}
