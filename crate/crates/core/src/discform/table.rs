use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::{e_set, root_type_orthogonal_to};

use super::s0::{build_s0, h_vector};
use super::subgroup::IsotropicSubgroup;
use super::{delta, q_value, DiscformError, GElement};

/// One isotropic `δ`-class `(a, b, ±y)` with the invariants of the
/// overlattice generated by a representative.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub a: u8,
    pub b: u8,
    /// `y` up to sign, in `0..=2`.
    pub y: u8,
    pub starred: bool,
    /// Number of isotropic vectors in the class.
    pub count: usize,
    pub representative: Vec<i64>,
    pub root_type: String,
    #[serde(rename = "E_empty")]
    pub e_empty: bool,
}

/// All isotropic classes, sorted by `(a, b, |y|)`. The representative is
/// the least class member with `y <= 2`.
pub fn isotropic_table() -> Result<Vec<TableRow>, DiscformError> {
    let mut classes: BTreeMap<(u8, u8, u8), (GElement, usize)> = BTreeMap::new();
    for v in GElement::all().filter(|v| q_value(v).is_zero()) {
        let d = delta(&v);
        let entry = classes.entry(d.class()).or_insert((v, 0));
        entry.1 += 1;
        if v.y <= 2 && (entry.0.y > 2 || v < entry.0) {
            entry.0 = v;
        }
    }
    let s0 = build_s0();
    let h = h_vector();
    classes
        .into_par_iter()
        .map(|((a, b, y), (rep, count))| {
            let sub = if rep.is_zero() {
                IsotropicSubgroup::trivial()
            } else {
                IsotropicSubgroup::new(vec![rep])?
            };
            let s = sub.overlattice(&s0)?;
            let roots = root_type_orthogonal_to(&s, &h)?;
            let e = e_set(&s, &h)?;
            Ok(TableRow {
                a,
                b,
                y,
                starred: delta(&rep).starred,
                count,
                representative: rep.to_vec(),
                root_type: roots.to_string(),
                e_empty: e.is_empty(),
            })
        })
        .collect()
}
