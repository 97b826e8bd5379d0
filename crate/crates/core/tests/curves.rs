use k3five::curve::{
    check_curve, check_curve_seeded, is_in_u, ns_gram_model, random_in_u, verify_a4,
    Multiplicity, SexticModel,
};
use k3five::ffpoly::{parse_poly, roots_in_extension, GaloisField, GfPoly, DEFAULT_MAX_EXT};
use proptest::prelude::*;

fn assert_five_a4(m: &SexticModel) {
    let r = check_curve(m, DEFAULT_MAX_EXT).unwrap();
    assert_eq!(r.points.len(), 5, "{}", m.literal());
    assert!(r.points.iter().all(|p| p.is_a4), "{}", m.literal());
    assert!(r.points.iter().all(|p| p.mult == Multiplicity::Finite(5)), "{}", m.literal());
    assert_eq!(r.wall.product, Some(5), "{}", m.literal());
}

#[test]
fn random_models_over_f25() {
    let f = GaloisField::default_of_degree(2).unwrap();
    for seed in 0..1000 {
        assert_five_a4(&random_in_u(&f, seed).unwrap());
    }
}

#[test]
fn random_models_over_f5_and_f125() {
    for (k, n) in [(1, 200), (3, 50)] {
        let f = GaloisField::default_of_degree(k).unwrap();
        for seed in 0..n {
            assert_five_a4(&random_in_u(&f, seed).unwrap());
        }
    }
}

#[test]
fn polar_choice_does_not_matter() {
    let m = SexticModel::new(parse_poly("[0,0,1,0,0,0,1]@5").unwrap()).unwrap();
    for seed in 0..20 {
        let r = check_curve_seeded(&m, DEFAULT_MAX_EXT, seed).unwrap();
        assert_eq!(r.wall.product, Some(5));
    }
}

#[test]
fn ns_model_for_random_curve() {
    let f = GaloisField::default_of_degree(2).unwrap();
    let s = ns_gram_model(&random_in_u(&f, 7).unwrap(), DEFAULT_MAX_EXT).unwrap();
    assert_eq!(s.det(), num_bigint::BigInt::from(-15625));
    assert_eq!(s.signature(), (1, 21));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn membership_matches_root_multiplicities(c in prop::collection::vec(0i64..5, 6), top in 1i64..5) {
        let mut coeffs = c.clone();
        coeffs.push(top);
        let f = GfPoly::from_ints(GaloisField::prime(), &coeffs);
        let roots = roots_in_extension(&f.derivative(), DEFAULT_MAX_EXT).unwrap();
        let simple = roots.iter().all(|r| r.multiplicity == 1);
        prop_assert_eq!(is_in_u(&f).unwrap(), simple);
        for r in &roots {
            let fe = r.extension.embed_poly(&f);
            let (a4, _) = verify_a4(&fe, &r.value).unwrap();
            prop_assert_eq!(a4, r.multiplicity == 1);
        }
    }
}
