use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::{
    e_set, overlattice_from_generators, root_type_orthogonal_to, DualVector, GramLattice,
    Overlattice, RootSystemType,
};

use super::s0::{build_s0, h_vector, lift};
use super::{b_value, delta, q_value, AutElement, DiscformError, GElement};

/// A totally isotropic subgroup of `G`, kept with its generators and its
/// sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicSubgroup {
    gens: Vec<GElement>,
    elements: Vec<GElement>,
}

impl IsotropicSubgroup {
    pub fn new(gens: Vec<GElement>) -> Result<Self, DiscformError> {
        let elements = span(&gens);
        if elements.len() != 5usize.pow(gens.len() as u32) {
            return Err(DiscformError::Dependent);
        }
        if let Some(bad) = elements.iter().find(|v| !q_value(v).is_zero()) {
            return Err(DiscformError::NotIsotropic(format!(
                "q({bad}) = {}",
                q_value(bad)
            )));
        }
        Ok(IsotropicSubgroup { gens, elements })
    }

    pub fn trivial() -> Self {
        IsotropicSubgroup {
            gens: Vec::new(),
            elements: vec![GElement::zero()],
        }
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[GElement] {
        &self.gens
    }

    /// All `5^dim` elements, sorted.
    pub fn elements(&self) -> &[GElement] {
        &self.elements
    }

    pub fn contains(&self, v: &GElement) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn lifts(&self) -> Vec<DualVector> {
        self.gens.iter().map(lift).collect()
    }

    /// `pr^{-1}(H)` inside `S0^dual`.
    pub fn overlattice(&self, s0: &GramLattice) -> Result<Overlattice, DiscformError> {
        Ok(overlattice_from_generators(s0, &self.lifts())?)
    }

    /// The image of `H` with the smallest sorted element list under
    /// `Aut(F, h)`, with generators read off that list.
    pub fn canonical(&self) -> IsotropicSubgroup {
        let best = canonical_codes(&self.elements);
        let elements: Vec<GElement> = best.iter().map(|&c| GElement::from_code(c)).collect();
        let mut gens: Vec<GElement> = Vec::new();
        let mut covered = vec![GElement::zero()];
        for v in &elements {
            if !covered.contains(v) {
                gens.push(*v);
                covered = span(&gens);
            }
        }
        IsotropicSubgroup { gens, elements }
    }
}

fn span(gens: &[GElement]) -> Vec<GElement> {
    let mut set: BTreeSet<GElement> = BTreeSet::new();
    set.insert(GElement::zero());
    for g in gens {
        let current: Vec<GElement> = set.iter().copied().collect();
        for v in current {
            for k in 1..5 {
                set.insert(v.add(&g.scale(k)));
            }
        }
    }
    set.into_iter().collect()
}

fn aut_group() -> &'static [AutElement] {
    static ALL: OnceLock<Vec<AutElement>> = OnceLock::new();
    ALL.get_or_init(AutElement::all)
}

fn canonical_codes(elements: &[GElement]) -> Vec<u16> {
    let mut best: Option<Vec<u16>> = None;
    let mut buf = Vec::with_capacity(elements.len());
    for g in aut_group() {
        buf.clear();
        buf.extend(elements.iter().map(|v| g.apply(v).code()));
        buf.sort_unstable();
        if best.as_ref().map_or(true, |b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}

/// Invariant of the `Aut(F, h)`-orbit of `H`: the lexicographically least
/// sorted element list of an image, as big-endian element codes.
pub fn canonical_key(h: &IsotropicSubgroup) -> Vec<u8> {
    canonical_codes(&h.elements)
        .iter()
        .flat_map(|c| c.to_be_bytes())
        .collect()
}

/// Every element of `H` has a starred `δ`-type.
pub fn condition_ii(h: &IsotropicSubgroup) -> bool {
    h.elements.iter().all(|v| delta(v).starred)
}

/// Nonzero `v` with `q(v) = 0`, in code order.
pub fn isotropic_vectors() -> Vec<GElement> {
    GElement::all()
        .filter(|v| !v.is_zero() && q_value(v).is_zero())
        .collect()
}

fn isotropic_lines() -> Vec<IsotropicSubgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in isotropic_vectors() {
        let line = IsotropicSubgroup::new(vec![v]).expect("isotropic vector");
        if seen.insert(line.elements.clone()) {
            out.push(line);
        }
    }
    out
}

/// Every totally isotropic plane, each listed once.
pub fn isotropic_planes() -> Vec<IsotropicSubgroup> {
    let iso = isotropic_vectors();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for line in isotropic_lines() {
        let v = line.gens[0];
        for w in &iso {
            if line.contains(w) || b_value(&v, w) != 0 {
                continue;
            }
            let plane = IsotropicSubgroup::new(vec![v, *w]).expect("orthogonal isotropic pair");
            if seen.insert(plane.elements.clone()) {
                out.push(plane);
            }
        }
    }
    out
}

/// Largest dimension of a totally isotropic subgroup, found by trying to
/// extend every plane.
pub fn max_isotropic_dimension() -> usize {
    let iso = isotropic_vectors();
    let planes = isotropic_planes();
    if planes.is_empty() {
        return if iso.is_empty() { 0 } else { 1 };
    }
    let extends = planes.iter().any(|p| {
        iso.iter()
            .any(|w| !p.contains(w) && p.gens.iter().all(|g| b_value(g, w) == 0))
    });
    if extends {
        3
    } else {
        2
    }
}

/// Orbit representatives (in canonical form) of totally isotropic
/// subgroups of dimension at most 2 satisfying condition (II), ordered by
/// dimension and then canonical key.
pub fn classify_orbits() -> Vec<IsotropicSubgroup> {
    let mut reps: BTreeMap<(usize, Vec<u16>), IsotropicSubgroup> = BTreeMap::new();
    let trivial = IsotropicSubgroup::trivial();
    reps.insert((0, vec![0]), trivial);

    let mut lines: BTreeMap<Vec<u16>, IsotropicSubgroup> = BTreeMap::new();
    for line in isotropic_lines() {
        if condition_ii(&line) {
            let c = line.canonical();
            lines.entry(codes(&c)).or_insert(c);
        }
    }

    let iso = isotropic_vectors();
    let mut seen = HashSet::new();
    let mut planes: BTreeMap<Vec<u16>, IsotropicSubgroup> = BTreeMap::new();
    for line in lines.values() {
        let v = line.gens[0];
        for w in &iso {
            if line.contains(w) || b_value(&v, w) != 0 || !delta(w).starred {
                continue;
            }
            let plane = IsotropicSubgroup::new(vec![v, *w]).expect("orthogonal isotropic pair");
            if !seen.insert(plane.elements.clone()) || !condition_ii(&plane) {
                continue;
            }
            let c = plane.canonical();
            planes.entry(codes(&c)).or_insert(c);
        }
    }
    for (k, l) in lines {
        reps.insert((1, k), l);
    }
    for (k, p) in planes {
        reps.insert((2, k), p);
    }
    reps.into_values().collect()
}

fn codes(h: &IsotropicSubgroup) -> Vec<u16> {
    h.elements.iter().map(|v| v.code()).collect()
}

const REFERENCE_GENS: [&[[i64; 6]]; 9] = [
    &[],
    &[[0, 0, 2, 2, 2, 2]],
    &[[2, 2, 2, 2, 2, 0]],
    &[[0, 1, 2, 2, 2, 1]],
    &[[1, 2, 2, 2, 2, 2]],
    &[[0, 1, 1, 2, 2, 0]],
    &[[1, 0, 1, 2, 2, 0], [0, 1, 2, 1, 3, 0]],
    &[[1, 0, 0, 1, 1, 1], [0, 1, 1, 1, 3, 3]],
    &[[1, 0, 1, 1, 2, 2], [0, 1, 1, 3, 3, 0]],
];

/// The subgroups `H_0, ..., H_8` with their reference generators.
pub fn reference_subgroups() -> Vec<(String, IsotropicSubgroup)> {
    REFERENCE_GENS
        .iter()
        .enumerate()
        .map(|(i, gens)| {
            let g = gens.iter().map(|v| GElement::from_slice(v).unwrap()).collect();
            let h = IsotropicSubgroup::new(g).expect("reference subgroup is isotropic");
            (format!("H_{i}"), h)
        })
        .collect()
}

/// An orbit representative together with the invariants of its
/// overlattice.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedSubgroup {
    pub label: String,
    pub gens: Vec<Vec<i64>>,
    pub reference_gens: Option<Vec<Vec<i64>>>,
    pub dim: usize,
    /// `k` with `disc = -5^k`.
    pub disc_exp: u32,
    pub sigma: Option<u32>,
    pub root_type: String,
    #[serde(rename = "E_empty")]
    pub e_empty: bool,
    #[serde(skip)]
    pub subgroup: IsotropicSubgroup,
    #[serde(skip)]
    pub roots: Option<RootSystemType>,
}

/// Classifies orbits and computes, for each representative, the
/// overlattice invariants.
pub fn classify_isotropic_subgroups() -> Result<Vec<ClassifiedSubgroup>, DiscformError> {
    let s0 = build_s0();
    let h = h_vector();
    let reference: Vec<(String, IsotropicSubgroup, Vec<u8>)> = reference_subgroups()
        .into_iter()
        .map(|(l, g)| {
            let k = canonical_key(&g);
            (l, g, k)
        })
        .collect();
    let orbits = classify_orbits();
    let mut unnamed = 0;
    let labelled: Vec<(String, Option<Vec<Vec<i64>>>, IsotropicSubgroup)> = orbits
        .into_iter()
        .map(|rep| {
            let key = canonical_key(&rep);
            match reference.iter().find(|(_, _, k)| *k == key) {
                Some((l, g, _)) => (
                    l.clone(),
                    Some(g.gens().iter().map(|v| v.to_vec()).collect()),
                    rep,
                ),
                None => {
                    unnamed += 1;
                    (format!("X_{unnamed}"), None, rep)
                }
            }
        })
        .collect();
    labelled
        .into_par_iter()
        .map(|(label, reference_gens, rep)| {
            let s = rep.overlattice(&s0)?;
            let roots = root_type_orthogonal_to(&s, &h)?;
            let e = e_set(&s, &h)?;
            Ok(ClassifiedSubgroup {
                label,
                gens: rep.gens().iter().map(|v| v.to_vec()).collect(),
                reference_gens,
                dim: rep.dim(),
                disc_exp: five_exponent(&s),
                sigma: s.artin_sigma(),
                root_type: roots.to_string(),
                e_empty: e.is_empty(),
                subgroup: rep,
                roots: Some(roots),
            })
        })
        .collect()
}

/// The exponent of 5 in `disc S`.
pub fn five_exponent(s: &Overlattice) -> u32 {
    let mut d = s.det().abs();
    let mut k = 0;
    while (&d % 5u32).to_u32() == Some(0) && d.to_u32() != Some(0) {
        d /= 5u32;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_and_anisotropic_rejected() {
        let v = GElement::new([2, 2, 2, 2, 2], 0);
        assert_eq!(
            IsotropicSubgroup::new(vec![v, v.scale(2)]),
            Err(DiscformError::Dependent)
        );
        let bad = GElement::new([1, 0, 0, 0, 0], 0);
        assert!(matches!(
            IsotropicSubgroup::new(vec![bad]),
            Err(DiscformError::NotIsotropic(_))
        ));
    }

    #[test]
    fn counts() {
        assert_eq!(isotropic_vectors().len(), 3024);
        assert_eq!(isotropic_lines().len(), 756);
    }

    #[test]
    fn key_is_orbit_invariant() {
        let (_, h6) = &reference_subgroups()[6];
        let k = canonical_key(h6);
        for g in AutElement::all().iter().step_by(211) {
            let moved: Vec<GElement> = h6.gens().iter().map(|v| g.apply(v)).collect();
            let m = IsotropicSubgroup::new(moved).unwrap();
            assert_eq!(canonical_key(&m), k);
        }
        // a different generating set of the same subgroup
        let g = h6.gens();
        let other = IsotropicSubgroup::new(vec![g[0].add(&g[1]), g[1].scale(3)]).unwrap();
        assert_eq!(canonical_key(&other), k);
    }

    #[test]
    fn reference_subgroups_satisfy_condition_ii() {
        for (label, h) in reference_subgroups() {
            assert!(condition_ii(&h), "{label}");
        }
    }

    #[test]
    fn canonical_form_is_same_subgroup_orbit() {
        let (_, h7) = &reference_subgroups()[7];
        let c = h7.canonical();
        assert_eq!(c.dim(), 2);
        assert_eq!(canonical_key(&c), canonical_key(h7));
        assert_eq!(IsotropicSubgroup::new(c.gens().to_vec()).unwrap(), c);
    }

    #[test]
    fn distinct_orbits_and_scaling() {
        let a = IsotropicSubgroup::new(vec![GElement::new([0, 1, 1, 2, 2], 0)]).unwrap();
        let b = IsotropicSubgroup::new(vec![GElement::new([2, 2, 2, 2, 2], 0)]).unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&b));
        for k in 2..5 {
            let v = GElement::new([0, 1, 1, 2, 2], 0).scale(k);
            assert_eq!(canonical_key(&IsotropicSubgroup::new(vec![v]).unwrap()), canonical_key(&a));
        }
        assert_eq!(canonical_key(&IsotropicSubgroup::trivial()), vec![0, 0]);
    }

    #[test]
    fn condition_ii_examples() {
        let bad = IsotropicSubgroup::new(vec![GElement::new([0, 2, 2, 0, 0], 1)]).unwrap();
        assert!(!condition_ii(&bad));
        let (_, h6) = &reference_subgroups()[6];
        assert_eq!(h6.elements().iter().filter(|v| !v.is_zero()).count(), 24);
        assert!(condition_ii(h6));
    }
}
