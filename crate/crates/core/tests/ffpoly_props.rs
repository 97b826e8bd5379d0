use std::collections::BTreeMap;

use k3five::ffpoly::{
    is_squarefree, poly_gcd, roots_in_extension, Extension, GaloisField, GfElem, GfPoly,
};
use proptest::prelude::*;

fn field(k: usize) -> GaloisField {
    GaloisField::default_of_degree(k).unwrap()
}

fn elem(f: &GaloisField, code: u64) -> GfElem {
    f.from_code(code % f.order() as u64).unwrap()
}

fn poly(f: &GaloisField, codes: &[u64]) -> GfPoly {
    GfPoly::new(*f, codes.iter().map(|&c| elem(f, c)).collect())
}

/// Pull a polynomial with coefficients in the image of the base back down.
fn pull_back(ext: &Extension, u: &GfPoly) -> Option<GfPoly> {
    let base = ext.base;
    let coeffs = u
        .coeffs()
        .iter()
        .map(|c| base.elements().find(|a| ext.embed(a) == *c))
        .collect::<Option<Vec<_>>>()?;
    Some(GfPoly::new(base, coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(k in 1usize..=4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field(k);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn fifth_root_is_multiplicative(k in 1usize..=6, a in any::<u64>(), b in any::<u64>()) {
        let f = field(k);
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(f.fifth_root(&f.mul(&a, &b)), f.mul(&f.fifth_root(&a), &f.fifth_root(&b)));
        prop_assert_eq!(f.pow(&f.fifth_root(&a), 5), a);
    }

    #[test]
    fn gcd_divides_both(
        k in 1usize..=3,
        u in prop::collection::vec(any::<u64>(), 0..8),
        v in prop::collection::vec(any::<u64>(), 0..8),
        w in prop::collection::vec(any::<u64>(), 1..4),
    ) {
        let f = field(k);
        let w = poly(&f, &w);
        let (u, v) = (poly(&f, &u).mul(&w), poly(&f, &v).mul(&w));
        prop_assume!(!(u.is_zero() && v.is_zero()));
        let g = poly_gcd(&u, &v).unwrap();
        prop_assert!(u.rem(&g).unwrap().is_zero());
        prop_assert!(v.rem(&g).unwrap().is_zero());
        if !w.is_zero() && !u.is_zero() && !v.is_zero() {
            prop_assert!(g.rem(&w.monic()).unwrap().is_zero());
        }
    }

    #[test]
    fn roots_account_for_the_polynomial(
        k in 1usize..=2,
        u in prop::collection::vec(any::<u64>(), 2..8),
    ) {
        let f = field(k);
        let u = poly(&f, &u);
        prop_assume!(u.degree().unwrap_or(0) >= 1);
        let roots = roots_in_extension(&u, 8).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, u.degree().unwrap());
        let mut by_degree: BTreeMap<usize, (Extension, GfPoly)> = BTreeMap::new();
        for r in &roots {
            let ext = r.extension;
            prop_assert!(ext.embed_poly(&u).eval(&r.value).is_zero());
            let e = by_degree
                .entry(r.degree)
                .or_insert((ext, GfPoly::one(ext.field)));
            e.1 = e.1.mul(&GfPoly::linear_root(ext.field, &r.value).pow(r.multiplicity as u64));
        }
        let mut prod = GfPoly::one(f);
        for (ext, p) in by_degree.values() {
            let down = pull_back(ext, p);
            prop_assert!(down.is_some());
            prod = prod.mul(&down.unwrap());
        }
        prop_assert_eq!(prod, u.monic());
        // squarefree exactly when every root is simple
        prop_assert_eq!(is_squarefree(&u).unwrap(), roots.iter().all(|r| r.multiplicity == 1));
    }
}
