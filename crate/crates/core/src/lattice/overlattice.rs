//! Overlattices `L ⊆ S ⊆ L^dual` from generators of an isotropic subgroup.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GramLattice, LatticeError, DualVector};
use crate::linalg::{self, big_matrix, hnf_rows, small_matrix, ZMat};

/// An even overlattice `S` of an ambient lattice `L`.
///
/// Vectors of `S` are stored scaled by the exponent `e` of `L^dual / L`, so
/// `e * v` has integer coordinates in the basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlattice {
    ambient: GramLattice,
    scale: i64,
    basis: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    index: u64,
}

/// Builds `pr^{-1}(<gens>)`.
pub fn overlattice_from_generators(
    lattice: &GramLattice,
    gens: &[DualVector],
) -> Result<Overlattice, LatticeError> {
    let n = lattice.rank();
    for g in gens {
        if g.coords.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                got: g.coords.len(),
            });
        }
    }
    let dual = lattice.dual_gram();
    for (i, a) in gens.iter().enumerate() {
        let norm = a.pair(a, &dual);
        if !norm.is_integer() || norm.to_integer().is_odd() {
            return Err(LatticeError::EvennessViolation(format!(
                "generator {i} has norm {}",
                super::rational_to_string(&norm)
            )));
        }
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            let p = a.pair(b, &dual);
            if !p.is_integer() {
                return Err(LatticeError::EvennessViolation(format!(
                    "generators {i} and {j} pair to {}",
                    super::rational_to_string(&p)
                )));
            }
        }
    }

    let exponent = lattice.discriminant_group().exponent();
    let scale = exponent.to_i64().ok_or(LatticeError::Overflow)?;
    let mut rows: ZMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { exponent.clone() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let e = BigRational::from_integer(exponent.clone());
    for g in gens {
        let coords = g.lattice_coords(lattice);
        let row: Vec<BigInt> = coords
            .iter()
            .map(|c| {
                let s = c * &e;
                debug_assert!(s.is_integer());
                s.to_integer()
            })
            .collect();
        rows.push(row);
    }
    let basis = hnf_rows(&rows);
    Overlattice::from_scaled_basis(lattice.clone(), scale, &basis)
}

impl Overlattice {
    /// Wraps a scaled basis, recomputing and checking every invariant.
    pub fn from_scaled_basis(
        ambient: GramLattice,
        scale: i64,
        basis: &ZMat,
    ) -> Result<Self, LatticeError> {
        let n = ambient.rank();
        if basis.len() != n || basis.iter().any(|r| r.len() != n) {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                got: basis.len(),
            });
        }
        let e = BigInt::from(scale);
        let e2 = &e * &e;
        let det_b = linalg::det(basis);
        if det_b.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let g = ambient.big_gram();
        let raw = linalg::mat_mul(&linalg::mat_mul(basis, &g), &linalg::transpose(basis));
        let mut gram = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let (q, r) = raw[i][j].div_rem(&e2);
                if !r.is_zero() {
                    return Err(LatticeError::EvennessViolation(format!(
                        "basis vectors {i} and {j} pair non-integrally"
                    )));
                }
                gram[i][j] = q;
            }
        }
        if (0..n).any(|i| gram[i][i].is_odd()) {
            return Err(LatticeError::EvennessViolation("odd basis vector".into()));
        }
        let en = num_traits::pow(e.clone(), n);
        let (index, rem) = en.div_rem(&det_b.abs());
        if !rem.is_zero() {
            return Err(LatticeError::NotInLattice);
        }
        let inv = linalg::inverse(basis).expect("nonzero determinant");
        for i in 0..n {
            // S must contain L: scale * unit_i = (scale * unit_i * B^-1) * B
            if inv[i].iter().any(|x| !(x * BigRational::from_integer(e.clone())).is_integer()) {
                return Err(LatticeError::NotInLattice);
            }
        }
        let gram_small = small_matrix(&gram).ok_or(LatticeError::Overflow)?;
        let basis_small = small_matrix(basis).ok_or(LatticeError::Overflow)?;
        let index = index.to_u64().ok_or(LatticeError::Overflow)?;
        let out = Overlattice {
            ambient,
            scale,
            basis: basis_small,
            gram: gram_small,
            index,
        };
        debug_assert_eq!(
            out.det() * BigInt::from(index) * BigInt::from(index),
            out.ambient.det()
        );
        Ok(out)
    }

    pub fn ambient(&self) -> &GramLattice {
        &self.ambient
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Rows are `scale * v` in ambient coordinates.
    pub fn scaled_basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&big_matrix(&self.gram))
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    /// `sigma` with `disc(S) = -5^(2 sigma)`, if the discriminant has that
    /// shape.
    pub fn artin_sigma(&self) -> Option<u32> {
        let d = self.det();
        if !d.is_negative() {
            return None;
        }
        let mut m = -d;
        let five = BigInt::from(5);
        let mut k = 0u32;
        while !m.is_one() {
            let (q, r) = m.div_rem(&five);
            if !r.is_zero() {
                return None;
            }
            m = q;
            k += 1;
        }
        (k % 2 == 0).then_some(k / 2)
    }

    /// Coordinates in the basis of `S` of an ambient integer vector, `None`
    /// if it is not in `S`.
    pub fn coords_of(&self, ambient_vector: &[i64]) -> Option<Vec<i64>> {
        let e = BigRational::from_integer(BigInt::from(self.scale));
        let target: Vec<BigRational> = ambient_vector
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)) * &e)
            .collect();
        let z = linalg::solve_left(&big_matrix(&self.basis), &target)?;
        z.iter()
            .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
            .collect()
    }

    pub fn exchange(&self) -> OverlatticeExchange {
        OverlatticeExchange {
            labels: self.ambient.labels().to_vec(),
            gram: self.ambient.gram().to_vec(),
            basis5: self.basis.clone(),
            scale: (self.scale != 5).then_some(self.scale),
            disc: self.det().to_i64().unwrap_or(i64::MIN),
            sigma: self.artin_sigma(),
        }
    }

    pub fn from_exchange(x: &OverlatticeExchange) -> Result<Self, LatticeError> {
        let ambient = GramLattice::new(x.gram.clone(), x.labels.clone())?;
        let s = Self::from_scaled_basis(ambient, x.scale.unwrap_or(5), &big_matrix(&x.basis5))?;
        if s.det().to_i64() != Some(x.disc) {
            return Err(LatticeError::EvennessViolation(format!(
                "recorded discriminant {} does not match {}",
                x.disc,
                s.det()
            )));
        }
        Ok(s)
    }
}

/// JSON exchange form: the ambient lattice plus the scaled basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlatticeExchange {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub basis5: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<i64>,
    pub disc: i64,
    pub sigma: Option<u32>,
}
