//! Integer lattices given by Gram matrices: discriminant groups, overlattices
//! and enumeration of vectors of given norm.

mod enumerate;
mod lll;
mod overlattice;
mod roots;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, big_matrix, QMat, ZMat};

pub use enumerate::{coset_vectors_of_norm, short_vectors_of_norm};
pub use lll::{lll_gram, Reduced};
pub use overlattice::{overlattice_from_generators, Overlattice, OverlatticeExchange};
pub use roots::{
    e_set, e_set_with_base, root_type_orthogonal_to, roots_orthogonal_to, AdeLetter,
    RootSystemType,
};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("expected {expected} labels or coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form is not negative definite")]
    NotNegativeDefinite,
    #[error("vector is not in the dual lattice")]
    NotInDual,
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("generators do not span a totally isotropic subgroup: {0}")]
    EvennessViolation(String),
    #[error("vector has square {0}, expected 2")]
    BadPolarization(String),
    #[error("no lattice vector pairs to 1 with h (gcd of pairings is {0})")]
    DivisibilityError(String),
    #[error("root component of rank {rank} with {roots} roots is not of ADE type")]
    UnknownRootSystem { rank: usize, roots: usize },
    #[error("integer does not fit into 64 bits")]
    Overflow,
}

/// A nondegenerate integral lattice with a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLattice", into = "RawLattice")]
pub struct GramLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<RawLattice> for GramLattice {
    type Error = LatticeError;
    fn try_from(r: RawLattice) -> Result<Self, Self::Error> {
        GramLattice::new(r.gram, r.labels)
    }
}

impl From<GramLattice> for RawLattice {
    fn from(l: GramLattice) -> Self {
        RawLattice {
            labels: l.labels,
            gram: l.gram,
        }
    }
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self, LatticeError> {
        if !linalg::is_symmetric(&gram) {
            return Err(LatticeError::NotSymmetric);
        }
        if labels.len() != gram.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: gram.len(),
                got: labels.len(),
            });
        }
        if linalg::det(&big_matrix(&gram)).is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(GramLattice { labels, gram })
    }

    /// Basis labelled `b1, b2, ...`.
    pub fn unlabelled(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let labels = (1..=gram.len()).map(|i| format!("b{i}")).collect();
        Self::new(gram, labels)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub(crate) fn big_gram(&self) -> ZMat {
        big_matrix(&self.gram)
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&self.big_gram())
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// `(positive, negative)` inertia.
    pub fn signature(&self) -> (usize, usize) {
        linalg::signature(&self.big_gram())
    }

    pub fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += u[i] * self.gram[i][j] * v[j];
            }
        }
        s
    }

    /// The inverse Gram matrix, i.e. the Gram matrix of the dual basis.
    pub fn dual_gram(&self) -> QMat {
        linalg::inverse(&self.big_gram()).expect("nondegenerate by construction")
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        let snf = smith_normal_form(&self.big_gram());
        let factors = snf.invariant_factors();
        let keep: Vec<usize> = (0..factors.len()).filter(|&i| !factors[i].is_one()).collect();
        DiscriminantGroup {
            invariant_factors: keep.iter().map(|&i| factors[i].clone()).collect(),
            projection: snf
                .right
                .iter()
                .map(|row| keep.iter().map(|&i| row[i].clone()).collect())
                .collect(),
        }
    }

    /// Direct sum with labels concatenated.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let n = self.rank() + other.rank();
        let mut gram = vec![vec![0i64; n]; n];
        for (i, r) in self.gram.iter().enumerate() {
            gram[i][..r.len()].copy_from_slice(r);
        }
        let o = self.rank();
        for (i, r) in other.gram.iter().enumerate() {
            gram[o + i][o..].copy_from_slice(r);
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        GramLattice { labels, gram }
    }
}

/// The negative definite root lattice `A_n(-1)` with the path Dynkin diagram.
pub fn negative_a(n: usize, label: impl Fn(usize) -> String) -> GramLattice {
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        gram[i][i] = -2;
        if i + 1 < n {
            gram[i][i + 1] = 1;
            gram[i + 1][i] = 1;
        }
    }
    GramLattice {
        labels: (1..=n).map(label).collect(),
        gram,
    }
}

/// A vector of `L^dual` written in the basis dual to the basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualVector {
    pub coords: Vec<i64>,
}

impl DualVector {
    pub fn new(coords: Vec<i64>) -> Self {
        DualVector { coords }
    }

    /// The dual basis vector dual to basis vector `i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        DualVector { coords }
    }

    /// Converts a rational vector in the basis of `lattice` to dual
    /// coordinates; errors if it does not lie in the dual lattice.
    pub fn from_lattice_coords(
        lattice: &GramLattice,
        coords: &[BigRational],
    ) -> Result<Self, LatticeError> {
        if coords.len() != lattice.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: lattice.rank(),
                got: coords.len(),
            });
        }
        let g = lattice.gram();
        let mut out = Vec::with_capacity(coords.len());
        for j in 0..lattice.rank() {
            let s: BigRational = coords
                .iter()
                .zip(g)
                .map(|(c, row)| c * BigRational::from_integer(BigInt::from(row[j])))
                .fold(BigRational::zero(), |a, b| a + b);
            if !s.is_integer() {
                return Err(LatticeError::NotInDual);
            }
            out.push(s.to_integer().to_i64().ok_or(LatticeError::Overflow)?);
        }
        Ok(DualVector { coords: out })
    }

    /// Rational coordinates in the basis of the lattice.
    pub fn lattice_coords(&self, lattice: &GramLattice) -> Vec<BigRational> {
        let inv = lattice.dual_gram();
        (0..lattice.rank())
            .map(|j| {
                self.coords
                    .iter()
                    .zip(&inv)
                    .map(|(c, row)| BigRational::from_integer(BigInt::from(*c)) * &row[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Pairing with another dual vector through the inverse Gram matrix.
    pub fn pair(&self, other: &DualVector, dual_gram: &QMat) -> BigRational {
        let mut s = BigRational::zero();
        for (i, a) in self.coords.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if *b == 0 {
                    continue;
                }
                s += BigRational::from_integer(BigInt::from(a * b)) * &dual_gram[i][j];
            }
        }
        s
    }
}

/// `L^dual / L` in Smith coordinates.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<BigInt>,
    /// Columns of the right Smith transform belonging to those factors.
    projection: ZMat,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    /// `pr`: reduces a dual vector to its residues modulo the invariant
    /// factors.
    pub fn project(&self, v: &DualVector) -> Vec<BigInt> {
        let k = self.invariant_factors.len();
        (0..k)
            .map(|i| {
                let s: BigInt = v
                    .coords
                    .iter()
                    .zip(&self.projection)
                    .map(|(c, row)| BigInt::from(*c) * &row[i])
                    .sum();
                s.mod_floor(&self.invariant_factors[i])
            })
            .collect()
    }
}

pub(crate) fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
