//! The discriminant form of `S0 = 5A4(-1) ⊕ <h, l>` and the classification
//! of its totally isotropic subgroups up to the diagram automorphisms.
//!
//! Elements of `G = S0^dual / S0 ≅ F5^5 ⊕ F5` are written `[x1..x5 | y]` in
//! the basis `pr(e_1^(j)^dual)`, `pr(h^dual)`. In that basis
//! `q = -(4/5) Σ x_i^2 + (2/5) y^2 mod 2Z`; [`verify_q_consistency`] checks
//! this against the Gram matrix instead of trusting it.

mod s0;
mod subgroup;
mod table;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::LatticeError;

pub use s0::{build_s0, h_vector, l_vector, lift, g_basis, S0_RANK};
pub use subgroup::{
    canonical_key, classify_isotropic_subgroups, classify_orbits, condition_ii,
    five_exponent, isotropic_planes, isotropic_vectors, max_isotropic_dimension, reference_subgroups,
    ClassifiedSubgroup, IsotropicSubgroup,
};
pub use table::{isotropic_table, TableRow};
pub use verify::{verify_q_consistency, QConsistencyReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscformError {
    #[error("subgroup is not totally isotropic: {0}")]
    NotIsotropic(String),
    #[error("generators are linearly dependent over F5")]
    Dependent,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An element `[x1, ..., x5 | y]` of `G`, coordinates in `0..5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GElement {
    pub x: [u8; 5],
    pub y: u8,
}

/// Number of elements of `G`.
pub const G_ORDER: u16 = 15625;

fn red(v: i64) -> u8 {
    v.rem_euclid(5) as u8
}

impl GElement {
    pub fn new(x: [i64; 5], y: i64) -> Self {
        GElement {
            x: x.map(red),
            y: red(y),
        }
    }

    /// From the 6-entry form `[x1, ..., x5, y]`.
    pub fn from_slice(v: &[i64]) -> Option<Self> {
        (v.len() == 6).then(|| GElement::new([v[0], v[1], v[2], v[3], v[4]], v[5]))
    }

    pub fn zero() -> Self {
        GElement { x: [0; 5], y: 0 }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.x.iter().chain(std::iter::once(&self.y)).map(|&c| c as i64).collect()
    }

    /// Base-5 code with `x1` most significant, so codes order like the
    /// coordinate tuples.
    pub fn code(&self) -> u16 {
        self.x
            .iter()
            .chain(std::iter::once(&self.y))
            .fold(0u16, |acc, &d| acc * 5 + d as u16)
    }

    pub fn from_code(mut c: u16) -> Self {
        let mut d = [0u8; 6];
        for slot in d.iter_mut().rev() {
            *slot = (c % 5) as u8;
            c /= 5;
        }
        GElement {
            x: [d[0], d[1], d[2], d[3], d[4]],
            y: d[5],
        }
    }

    pub fn all() -> impl Iterator<Item = GElement> {
        (0..G_ORDER).map(GElement::from_code)
    }

    pub fn add(&self, o: &GElement) -> GElement {
        let mut x = [0u8; 5];
        for i in 0..5 {
            x[i] = (self.x[i] + o.x[i]) % 5;
        }
        GElement {
            x,
            y: (self.y + o.y) % 5,
        }
    }

    pub fn scale(&self, k: u8) -> GElement {
        let k = k % 5;
        GElement {
            x: self.x.map(|c| (c * k) % 5),
            y: (self.y * k) % 5,
        }
    }

    pub fn neg(&self) -> GElement {
        self.scale(4)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.x;
        write!(f, "[{},{},{},{},{}|{}]", x[0], x[1], x[2], x[3], x[4], self.y)
    }
}

/// A value of `q` in `(1/5)Z / 2Z`: `QValue(n)` means `n/5`, `0 <= n < 10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QValue(pub u8);

impl QValue {
    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 5 == 0 {
            write!(f, "{}", self.0 / 5)
        } else {
            write!(f, "{}/5", self.0)
        }
    }
}

/// `q([x | y]) = -(4/5) Σ x_i^2 + (2/5) y^2 mod 2Z`.
pub fn q_value(v: &GElement) -> QValue {
    let sx: i64 = v.x.iter().map(|&c| (c as i64) * (c as i64)).sum();
    let y = v.y as i64;
    QValue((-4 * sx + 2 * y * y).rem_euclid(10) as u8)
}

/// The bilinear form `b(v, w) = -(4/5) Σ x_i x'_i + (2/5) y y' mod Z`,
/// returned as `n` meaning `n/5`, `0 <= n < 5`.
pub fn b_value(v: &GElement, w: &GElement) -> u8 {
    let sx: i64 = v.x.iter().zip(&w.x).map(|(&a, &b)| a as i64 * b as i64).sum();
    (-4 * sx + 2 * v.y as i64 * w.y as i64).rem_euclid(5) as u8
}

/// `(a, b, |y|)` classes of Table-1 type whose overlattice keeps `5A4` and
/// has no elliptic vectors. `|y|` is the representative of `{y, -y}` in
/// `0..=2`.
pub const STARRED_TYPES: [(u8, u8, u8); 10] = [
    (0, 0, 0),
    (0, 3, 2),
    (0, 5, 0),
    (1, 3, 1),
    (1, 4, 2),
    (2, 2, 0),
    (3, 0, 1),
    (3, 1, 2),
    (4, 1, 1),
    (5, 0, 0),
];

/// `δ(v) = (a, b, y)`: the counts of `±1` and `±2` among the `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaType {
    pub a: u8,
    pub b: u8,
    pub y: u8,
    pub starred: bool,
}

impl DeltaType {
    /// `y` folded to `min(y, -y)`.
    pub fn y_class(&self) -> u8 {
        self.y.min((5 - self.y) % 5)
    }

    /// The sign-folded class `(a, b, |y|)`.
    pub fn class(&self) -> (u8, u8, u8) {
        (self.a, self.b, self.y_class())
    }
}

impl fmt::Display for DeltaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.y)
    }
}

pub fn delta(v: &GElement) -> DeltaType {
    let a = v.x.iter().filter(|&&c| c == 1 || c == 4).count() as u8;
    let b = v.x.iter().filter(|&&c| c == 2 || c == 3).count() as u8;
    let mut t = DeltaType {
        a,
        b,
        y: v.y,
        starred: false,
    };
    t.starred = STARRED_TYPES.contains(&t.class());
    t
}

/// Element of `{±1}^5 ⋊ S5` acting by `[x | y] ↦ [ε_i x_{σ^{-1}(i)} | y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AutElement {
    /// `true` negates the coordinate at that (target) position.
    pub signs: [bool; 5],
    /// `perm[i] = σ(i)`, zero-based.
    pub perm: [u8; 5],
}

impl AutElement {
    pub fn identity() -> Self {
        AutElement {
            signs: [false; 5],
            perm: [0, 1, 2, 3, 4],
        }
    }

    pub fn transposition(i: usize, j: usize) -> Self {
        let mut g = Self::identity();
        g.perm.swap(i, j);
        g
    }

    pub fn negation(i: usize) -> Self {
        let mut g = Self::identity();
        g.signs[i] = true;
        g
    }

    /// All 3840 elements.
    pub fn all() -> Vec<AutElement> {
        let mut perms = Vec::with_capacity(120);
        permutations(&mut [0, 1, 2, 3, 4], 0, &mut perms);
        let mut out = Vec::with_capacity(3840);
        for p in perms {
            for mask in 0u8..32 {
                let signs = std::array::from_fn(|i| mask >> i & 1 == 1);
                out.push(AutElement { signs, perm: p });
            }
        }
        out
    }

    pub fn apply(&self, v: &GElement) -> GElement {
        let mut x = [0u8; 5];
        for j in 0..5 {
            let i = self.perm[j] as usize;
            let c = v.x[j];
            x[i] = if self.signs[i] { (5 - c) % 5 } else { c };
        }
        GElement { x, y: v.y }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutElement) -> AutElement {
        let mut perm = [0u8; 5];
        let mut signs = [false; 5];
        for j in 0..5 {
            let mid = other.perm[j] as usize;
            perm[j] = self.perm[mid];
        }
        // other negates at its targets; those land at self.perm[target]
        for i in 0..5 {
            let t = self.perm[i] as usize;
            signs[t] = self.signs[t] ^ other.signs[i];
        }
        AutElement { signs, perm }
    }
}

fn permutations(a: &mut [u8; 5], k: usize, out: &mut Vec<[u8; 5]>) {
    if k == a.len() {
        out.push(*a);
        return;
    }
    for i in k..a.len() {
        a.swap(k, i);
        permutations(a, k + 1, out);
        a.swap(k, i);
    }
}

/// `aut_apply` in free-function form.
pub fn aut_apply(g: &AutElement, v: &GElement) -> GElement {
    g.apply(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet};

    #[test]
    fn q_examples() {
        assert_eq!(q_value(&GElement::zero()), QValue(0));
        assert_eq!(q_value(&GElement::new([2, 2, 2, 2, 2], 0)), QValue(0));
        assert_eq!(q_value(&GElement::new([1, 0, 0, 0, 0], 0)), QValue(6));
        assert_eq!(q_value(&GElement::new([0, 0, 0, 0, 0], 1)), QValue(2));
        assert_eq!(QValue(6).to_string(), "6/5");
    }

    #[test]
    fn b_examples() {
        let e1 = GElement::new([1, 0, 0, 0, 0], 0);
        let e2 = GElement::new([0, 1, 0, 0, 0], 0);
        assert_eq!(b_value(&e1, &e2), 0);
        assert_eq!(b_value(&e1, &e1), 1);
    }

    #[test]
    fn polarization_identity() {
        // 2 b(v, w) = q(v + w) - q(v) - q(w) mod 2Z, and b(v, v) = q(v) mod Z
        for c in (0..G_ORDER).step_by(7) {
            let v = GElement::from_code(c);
            let w = GElement::from_code(((c as u32 * 31 + 11) % G_ORDER as u32) as u16);
            let lhs = (2 * b_value(&v, &w) as i64).rem_euclid(10);
            let rhs = (q_value(&v.add(&w)).0 as i64 - q_value(&v).0 as i64 - q_value(&w).0 as i64)
                .rem_euclid(10);
            assert_eq!(lhs % 5, rhs % 5);
            assert_eq!(b_value(&v, &v), q_value(&v).0 % 5);
        }
    }

    #[test]
    fn delta_examples() {
        let t = delta(&GElement::new([0, 0, 2, 2, 2], 2));
        assert_eq!((t.a, t.b, t.y, t.starred), (0, 3, 2, true));
        let t = delta(&GElement::zero());
        assert_eq!((t.a, t.b, t.y, t.starred), (0, 0, 0, true));
        let t = delta(&GElement::new([1, 4, 2, 3, 0], 1));
        assert_eq!((t.a, t.b, t.y), (2, 2, 1));
        assert!(!t.starred);
    }

    #[test]
    fn aut_examples() {
        let v = GElement::new([1, 2, 0, 0, 0], 3);
        assert_eq!(AutElement::identity().apply(&v), v);
        let all_neg = AutElement {
            signs: [true; 5],
            perm: [0, 1, 2, 3, 4],
        };
        assert_eq!(all_neg.apply(&v), GElement::new([4, 3, 0, 0, 0], 3));
        assert_eq!(
            AutElement::transposition(0, 1).apply(&v),
            GElement::new([2, 1, 0, 0, 0], 3)
        );
    }

    #[test]
    fn group_has_order_3840_and_acts() {
        let all = AutElement::all();
        assert_eq!(all.len(), 3840);
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 3840);
        let v = GElement::new([1, 2, 3, 0, 4], 2);
        for (g, h) in all.iter().step_by(97).zip(all.iter().step_by(89)) {
            assert_eq!(g.compose(h).apply(&v), g.apply(&h.apply(&v)));
        }
    }

    #[test]
    fn q_is_even_under_negation() {
        for v in GElement::all() {
            assert_eq!(q_value(&v), q_value(&v.neg()));
            let (a, b) = (delta(&v), delta(&v.neg()));
            assert_eq!((a.a, a.b, (a.y + b.y) % 5), (b.a, b.b, 0));
        }
    }

    #[test]
    fn isotropic_count_matches_integral_form() {
        let by_q = GElement::all().filter(|v| q_value(v).is_zero()).count();
        let mut by_form = 0;
        for c in 0..G_ORDER {
            let v = GElement::from_code(c);
            let s: i64 = v.x.iter().map(|&t| (t as i64).pow(2)).sum();
            if (-2 * s + (v.y as i64).pow(2)).rem_euclid(5) == 0 {
                by_form += 1;
            }
        }
        assert_eq!(by_q, by_form);
    }

    #[test]
    fn delta_classifies_orbits() {
        // orbit partition by breadth-first search over the generators
        let gens: Vec<AutElement> = (0..5)
            .map(AutElement::negation)
            .chain((0..4).map(|i| AutElement::transposition(i, i + 1)))
            .collect();
        let mut orbit_of = vec![u16::MAX; G_ORDER as usize];
        let mut next = 0u16;
        for start in 0..G_ORDER {
            if orbit_of[start as usize] != u16::MAX {
                continue;
            }
            let mut stack = vec![start];
            orbit_of[start as usize] = next;
            while let Some(c) = stack.pop() {
                let v = GElement::from_code(c);
                for g in &gens {
                    let w = g.apply(&v).code();
                    if orbit_of[w as usize] == u16::MAX {
                        orbit_of[w as usize] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        let mut orbit_to_delta: HashMap<u16, (u8, u8, u8)> = HashMap::new();
        let mut delta_to_orbit: HashMap<(u8, u8, u8), u16> = HashMap::new();
        for v in GElement::all() {
            let d = delta(&v);
            let key = (d.a, d.b, d.y);
            let o = orbit_of[v.code() as usize];
            assert_eq!(*orbit_to_delta.entry(o).or_insert(key), key);
            assert_eq!(*delta_to_orbit.entry(key).or_insert(o), o);
        }
    }

    #[test]
    fn code_round_trip_and_order() {
        for c in (0..G_ORDER).step_by(13) {
            assert_eq!(GElement::from_code(c).code(), c);
        }
        let a = GElement::new([0, 1, 0, 0, 0], 0);
        let b = GElement::new([1, 0, 0, 0, 0], 0);
        assert!(a < b && a.code() < b.code());
    }
}
