//! Roots orthogonal to a polarization and the set of "elliptic" vectors
//! `{e : e.h = 1, e^2 = 0}`.
//!
//! Both searches run in the negative definite complement `h^perp ∩ S`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::enumerate::coset_vectors_of_norm_big;
use super::lll::lll_gram;
use super::{LatticeError, Overlattice};
use crate::linalg::{
    self, big_matrix, big_vector, gcd_transform, mat_mul, transpose, vec_mat, ZMat,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AdeLetter {
    A,
    D,
    E,
}

/// A multiset of irreducible ADE components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemType {
    /// Sorted by `(letter, rank)`.
    components: Vec<(AdeLetter, usize)>,
}

impl RootSystemType {
    pub fn new(mut components: Vec<(AdeLetter, usize)>) -> Self {
        components.sort();
        RootSystemType { components }
    }

    pub fn components(&self) -> &[(AdeLetter, usize)] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    pub fn root_count(&self) -> usize {
        self.components
            .iter()
            .map(|&(l, n)| root_count(l, n))
            .sum()
    }

    /// Identifies an irreducible component from its span rank and number of
    /// roots. `A3` and `D3` coincide and are reported as `A3`.
    pub fn identify(rank: usize, roots: usize) -> Option<(AdeLetter, usize)> {
        if roots == rank * (rank + 1) && rank >= 1 {
            return Some((AdeLetter::A, rank));
        }
        if rank >= 4 && roots == 2 * rank * (rank - 1) {
            return Some((AdeLetter::D, rank));
        }
        match (rank, roots) {
            (6, 72) => Some((AdeLetter::E, 6)),
            (7, 126) => Some((AdeLetter::E, 7)),
            (8, 240) => Some((AdeLetter::E, 8)),
            _ => None,
        }
    }

    /// Parses `"E8+3A4"`-style strings.
    pub fn parse(s: &str) -> Option<Self> {
        let mut comps = Vec::new();
        if s.trim() == "0" || s.trim().is_empty() {
            return Some(Self::default());
        }
        for part in s.split('+') {
            let part = part.trim();
            let pos = part.find(|c: char| c.is_ascii_alphabetic())?;
            let mult: usize = if pos == 0 { 1 } else { part[..pos].parse().ok()? };
            let letter = match &part[pos..pos + 1] {
                "A" => AdeLetter::A,
                "D" => AdeLetter::D,
                "E" => AdeLetter::E,
                _ => return None,
            };
            let rank: usize = part[pos + 1..].parse().ok()?;
            comps.extend(std::iter::repeat((letter, rank)).take(mult));
        }
        Some(Self::new(comps))
    }
}

fn root_count(letter: AdeLetter, n: usize) -> usize {
    match letter {
        AdeLetter::A => n * (n + 1),
        AdeLetter::D => 2 * n * (n - 1),
        AdeLetter::E => match n {
            6 => 72,
            7 => 126,
            _ => 240,
        },
    }
}

impl fmt::Display for RootSystemType {
    /// Largest rank first, multiplicities collapsed: `E8+3A4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut counts: BTreeMap<(std::cmp::Reverse<usize>, AdeLetter), usize> = BTreeMap::new();
        for &(l, n) in &self.components {
            *counts.entry((std::cmp::Reverse(n), l)).or_default() += 1;
        }
        let parts: Vec<String> = counts
            .iter()
            .map(|(&(std::cmp::Reverse(n), l), &m)| {
                let sym = format!("{l:?}{n}");
                if m == 1 {
                    sym
                } else {
                    format!("{m}{sym}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// The negative definite lattice `{u in S : u.h = 0}` with an LLL-reduced
/// basis, plus a vector `base` of `S` with `base.h = gcd`, the gcd of all
/// pairings with `h`.
struct Complement {
    /// rows: scale * vector, ambient coordinates
    basis: ZMat,
    gram: ZMat,
    base: Vec<BigInt>,
    gcd: BigInt,
    scale: BigInt,
}

fn check_polarization(s: &Overlattice, h: &[i64]) -> Result<(), LatticeError> {
    let amb = s.ambient();
    if h.len() != amb.rank() {
        return Err(LatticeError::DimensionMismatch {
            expected: amb.rank(),
            got: h.len(),
        });
    }
    let hh = amb.inner(h, h);
    if hh != 2 {
        return Err(LatticeError::BadPolarization(hh.to_string()));
    }
    if s.coords_of(h).is_none() {
        return Err(LatticeError::NotInLattice);
    }
    Ok(())
}

fn complement(s: &Overlattice, h: &[i64]) -> Result<Complement, LatticeError> {
    check_polarization(s, h)?;
    let g = s.ambient().big_gram();
    let scale = BigInt::from(s.scale());
    let basis = big_matrix(s.scaled_basis());
    let gh: Vec<BigInt> = g
        .iter()
        .map(|r| r.iter().zip(h).map(|(a, b)| a * BigInt::from(*b)).sum())
        .collect();
    // pairing of (row / scale) with h
    let pairing: Vec<BigInt> = basis
        .iter()
        .map(|r| {
            let p: BigInt = r.iter().zip(&gh).map(|(a, b)| a * b).sum();
            let (q, rem) = p.div_rem(&scale);
            debug_assert!(rem.is_zero());
            q
        })
        .collect();
    let (gcd, w) = gcd_transform(&pairing);
    let wt = transpose(&w);
    let base = vec_mat(&wt[0], &basis);
    let kernel: ZMat = wt[1..].iter().map(|c| vec_mat(c, &basis)).collect();

    let e2 = &scale * &scale;
    let raw = mat_mul(&mat_mul(&kernel, &g), &transpose(&kernel));
    let gram: ZMat = raw
        .iter()
        .map(|r| r.iter().map(|x| x / &e2).collect())
        .collect();
    let neg: ZMat = gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let red = lll_gram(&neg);
    let basis = mat_mul(&red.transform, &kernel);
    let gram = red
        .reduced
        .iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    Ok(Complement {
        basis,
        gram,
        base,
        gcd,
        scale,
    })
}

/// All roots `r` of `S` with `r.h = 0`, as scaled ambient vectors, sorted.
pub fn roots_orthogonal_to(s: &Overlattice, h: &[i64]) -> Result<Vec<Vec<i64>>, LatticeError> {
    let c = complement(s, h)?;
    let zero = vec![BigRational::zero(); c.gram.len()];
    let found = coset_vectors_of_norm_big(&c.gram, &zero, &BigRational::from_integer(BigInt::from(-2)))?;
    let mut roots: Vec<Vec<i64>> = found
        .iter()
        .map(|u| linalg::small_vector(&vec_mat(u, &c.basis)).ok_or(LatticeError::Overflow))
        .collect::<Result<_, _>>()?;
    roots.sort();
    Ok(roots)
}

/// Dynkin type of `{r in S : r.h = 0, r^2 = -2}`.
pub fn root_type_orthogonal_to(s: &Overlattice, h: &[i64]) -> Result<RootSystemType, LatticeError> {
    let roots = roots_orthogonal_to(s, h)?;
    let amb = s.ambient();
    let n = roots.len();
    // union-find over r.r' != 0
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let gr: Vec<Vec<i64>> = roots
        .iter()
        .map(|r| {
            (0..amb.rank())
                .map(|j| (0..amb.rank()).map(|k| r[k] * amb.gram()[k][j]).sum())
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let ip: i64 = gr[i].iter().zip(&roots[j]).map(|(a, b)| a * b).sum();
            if ip != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut comps = Vec::new();
    for members in classes.values() {
        let m: ZMat = members.iter().map(|&i| big_vector(&roots[i])).collect();
        let rank = linalg::rank(&m);
        let c = RootSystemType::identify(rank, members.len()).ok_or(
            LatticeError::UnknownRootSystem {
                rank,
                roots: members.len(),
            },
        )?;
        comps.push(c);
    }
    Ok(RootSystemType::new(comps))
}

/// `{e in S : e.h = 1, e^2 = 0}` as scaled ambient vectors, sorted.
pub fn e_set(s: &Overlattice, h: &[i64]) -> Result<Vec<Vec<i64>>, LatticeError> {
    let c = complement(s, h)?;
    if !c.gcd.is_one() {
        return Err(LatticeError::DivisibilityError(c.gcd.to_string()));
    }
    let base = linalg::small_vector(&c.base).ok_or(LatticeError::Overflow)?;
    search_e(s, h, &c, &base)
}

/// Same as [`e_set`] but with a caller-chosen base vector `v1` (scaled
/// ambient coordinates) satisfying `v1.h = 1`. Any valid choice yields the
/// same set.
pub fn e_set_with_base(
    s: &Overlattice,
    h: &[i64],
    v1_scaled: &[i64],
) -> Result<Vec<Vec<i64>>, LatticeError> {
    let c = complement(s, h)?;
    let amb = s.ambient();
    let e = s.scale();
    let p = amb.inner(v1_scaled, h);
    if p != e {
        return Err(LatticeError::DivisibilityError(format!(
            "base vector pairs to {p}/{e} with h"
        )));
    }
    if !in_overlattice(s, v1_scaled) {
        return Err(LatticeError::NotInLattice);
    }
    search_e(s, h, &c, v1_scaled)
}

fn in_overlattice(s: &Overlattice, scaled: &[i64]) -> bool {
    let target: Vec<BigRational> = scaled
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    linalg::solve_left(&big_matrix(s.scaled_basis()), &target)
        .is_some_and(|z| z.iter().all(|x| x.is_integer()))
}

fn search_e(
    s: &Overlattice,
    h: &[i64],
    c: &Complement,
    base_scaled: &[i64],
) -> Result<Vec<Vec<i64>>, LatticeError> {
    let g = s.ambient().big_gram();
    let e2 = &c.scale * &c.scale;
    let base = big_vector(base_scaled);
    // t_j = k_j . v1
    let gb = vec_mat(&base, &g);
    let t: Vec<BigRational> = c
        .basis
        .iter()
        .map(|k| {
            let p: BigInt = k.iter().zip(&gb).map(|(a, b)| a * b).sum();
            BigRational::new(p, e2.clone())
        })
        .collect();
    let inv = linalg::inverse(&c.gram).expect("complement is definite");
    let shift: Vec<BigRational> = (0..t.len())
        .map(|j| {
            t.iter()
                .zip(&inv)
                .map(|(x, row)| x * &row[j])
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .collect();
    // e = (1/h^2) h + (p + u) with p + u in h^perp: (p+u)^2 = 0 - 1/2
    let hh = s.ambient().inner(h, h);
    let target = -BigRational::new(BigInt::one(), BigInt::from(hh));
    let found = coset_vectors_of_norm_big(&c.gram, &shift, &target)?;
    let mut out = Vec::with_capacity(found.len());
    for u in &found {
        let k = vec_mat(u, &c.basis);
        let v: Vec<BigInt> = k.iter().zip(&base).map(|(a, b)| a + b).collect();
        out.push(linalg::small_vector(&v).ok_or(LatticeError::Overflow)?);
    }
    out.sort();
    debug_assert!(out.iter().all(|v| {
        let amb = s.ambient();
        let e = s.scale();
        amb.inner(v, h) == e && amb.inner(v, v) == 0
    }));
    Ok(out)
}
