//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use k3five::curve::{check_curve, ns_gram_model, random_in_u, Multiplicity, SexticModel};
use k3five::discform::{
    build_s0, canonical_key, classify_orbits, h_vector, max_isotropic_dimension,
    reference_subgroups, verify_q_consistency, IsotropicSubgroup,
};
use k3five::ffpoly::{parse_poly, GaloisField, DEFAULT_MAX_EXT};
use k3five::lattice::{e_set, root_type_orthogonal_to, short_vectors_of_norm, smith_normal_form};
use k3five::linalg::big_matrix;
use num_bigint::BigInt;

type Outcome = Result<(), String>;

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn run_cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_k3five"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("{args:?} exited with {:?}", out.status.code())
    })?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn table1() -> Outcome {
    let v = run_cli(&["lattice", "table1"])?;
    let rows = v["results"].as_array().ok_or("no rows")?;
    ensure(rows.len() == 13, || format!("{} rows", rows.len()))?;
    let starred: Vec<&Value> = rows.iter().filter(|r| r["starred"] == true).collect();
    ensure(starred.len() == 10, || format!("{} starred rows", starred.len()))?;
    ensure(
        starred.iter().all(|r| r["root_type"] == "5A4" && r["E_empty"] == true),
        || "a starred row is not 5A4 with empty E".into(),
    )?;
    let unstarred: BTreeMap<(u64, u64, u64), (String, bool)> = rows
        .iter()
        .filter(|r| r["starred"] == false)
        .map(|r| {
            let k = (r["a"].as_u64().unwrap(), r["b"].as_u64().unwrap(), r["y"].as_u64().unwrap());
            (k, (r["root_type"].as_str().unwrap().to_string(), r["E_empty"] == true))
        })
        .collect();
    let expected = BTreeMap::from([
        ((0, 2, 1), ("A9+3A4".to_string(), true)),
        ((1, 1, 0), ("E8+3A4".to_string(), true)),
        ((2, 0, 2), ("A9+3A4".to_string(), true)),
    ]);
    ensure(unstarred == expected, || format!("unstarred rows {unstarred:?}"))
}

fn classification() -> Outcome {
    let v = run_cli(&["lattice", "classify"])?;
    let reps = v["results"].as_array().ok_or("no results")?;
    ensure(reps.len() == 9, || format!("{} representatives", reps.len()))?;
    let mut dist: BTreeMap<u64, usize> = BTreeMap::new();
    for r in reps {
        *dist.entry(r["disc_exp"].as_u64().unwrap_or(0)).or_default() += 1;
    }
    let want = BTreeMap::from([(2, 3), (4, 5), (6, 1)]);
    ensure(dist == want, || format!("discriminant exponents {dist:?}"))?;
    let labels: BTreeSet<&str> = reps.iter().filter_map(|r| r["label"].as_str()).collect();
    let want: BTreeSet<String> = (0..9).map(|i| format!("H_{i}")).collect();
    ensure(labels.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>() == want, || {
        format!("labels {labels:?}")
    })?;
    let orbit_keys: BTreeSet<Vec<u8>> = classify_orbits().iter().map(canonical_key).collect();
    let reference_keys: BTreeSet<Vec<u8>> =
        reference_subgroups().iter().map(|(_, h)| canonical_key(h)).collect();
    ensure(reference_keys.len() == 9, || "reference subgroups share an orbit".into())?;
    ensure(orbit_keys == reference_keys, || "orbit keys differ from the reference".into())
}

fn q_consistency() -> Outcome {
    let r = verify_q_consistency().map_err(|e| e.to_string())?;
    ensure(r.checked == 15625, || format!("checked {}", r.checked))?;
    ensure(r.mismatches.is_empty(), || format!("{} mismatches", r.mismatches.len()))?;
    ensure(r.ok(), || format!("report {r:?}"))
}

fn s0_hand_check() -> Outcome {
    let s = IsotropicSubgroup::trivial()
        .overlattice(&build_s0())
        .map_err(|e| e.to_string())?;
    let h = h_vector();
    let roots = root_type_orthogonal_to(&s, &h).map_err(|e| e.to_string())?;
    ensure(roots.to_string() == "5A4", || format!("root type {roots}"))?;
    let e = e_set(&s, &h).map_err(|e| e.to_string())?;
    ensure(e.is_empty(), || format!("{} elements in E", e.len()))
}

fn dimension_bound() -> Outcome {
    let d = max_isotropic_dimension();
    ensure(d == 2, || format!("maximal isotropic dimension {d}"))
}

fn five_a4(m: &SexticModel) -> Outcome {
    let r = check_curve(m, DEFAULT_MAX_EXT).map_err(|e| format!("{}: {e}", m.literal()))?;
    ensure(
        r.points.len() == 5
            && r.points.iter().all(|p| p.is_a4 && p.mult == Multiplicity::Finite(5))
            && r.wall.product == Some(5),
        || format!("{}: {r:?}", m.literal()),
    )
}

fn curve_suite() -> Outcome {
    let v = run_cli(&["curve", "check", "--poly", "[0,0,1,0,0,0,1]@5"])?;
    ensure(
        v["results"]["in_U"] == true
            && v["results"]["points"].as_array().map(Vec::len) == Some(5)
            && v["results"]["wall"]["product"] == 5,
        || format!("fixture {}", v["results"]),
    )?;
    let fixture = SexticModel::new(parse_poly("[0,0,1,0,0,0,1]@5").unwrap()).unwrap();
    five_a4(&fixture)?;
    for k in [1, 2] {
        let field = GaloisField::default_of_degree(k).unwrap();
        for seed in 0..100 {
            let m = random_in_u(&field, seed).map_err(|e| e.to_string())?;
            five_a4(&m)?;
        }
    }
    Ok(())
}

fn ns_model() -> Outcome {
    let mut models = vec![SexticModel::new(parse_poly("[0,0,1,0,0,0,1]@5").unwrap()).unwrap()];
    let f25 = GaloisField::default_of_degree(2).unwrap();
    models.extend((0..5).map(|s| random_in_u(&f25, s).unwrap()));
    for m in &models {
        let l = ns_gram_model(m, DEFAULT_MAX_EXT).map_err(|e| e.to_string())?;
        ensure(
            l.rank() == 22
                && l.is_even()
                && l.det() == BigInt::from(-15625)
                && l.signature() == (1, 21),
            || format!("{}: rank {} det {}", m.literal(), l.rank(), l.det()),
        )?;
    }
    Ok(())
}

/// Exact determinant by fraction-free elimination.
fn bareiss(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect())
                    .collect();
                g = g.gcd(&bareiss(&minor));
            }
        }
        if g == 0 {
            out.resize(r.min(c), 0);
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn box_search(gram: &[Vec<i64>], norm: i64, bound: i64) -> Vec<Vec<i64>> {
    let n = gram.len();
    let side = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    for idx in 0..side.pow(n as u32) {
        let mut t = idx;
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let d = (t % side) as i64 - bound;
                t /= side;
                d
            })
            .collect();
        let q: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * gram[i][j] * x[j]).sum::<i64>()).sum();
        if q == norm {
            out.push(x);
        }
    }
    out.sort();
    out
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let rank = rng.gen_range(1..=rows.min(cols));
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..rank).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let b: Vec<Vec<i64>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        // A B has rank at most `rank`, so zero and nontrivial factors occur
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| (0..rank).map(|t| a[i][t] * b[t][j]).sum()).collect())
            .collect();
        let got: Vec<i128> = smith_normal_form(&big_matrix(&m))
            .invariant_factors()
            .iter()
            .map(|d| i128::try_from(d.clone()).unwrap())
            .collect();
        let want = invariant_factors_by_minors(&m);
        ensure(got == want, || format!("SNF of {m:?}: {got:?} vs {want:?}"))?;
    }
    // -(I + A A^T) with |A| <= 1 has every vector at norm <= -|x|^2, so a
    // box of radius sqrt(-norm) holds all solutions
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(1..=5);
        let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| -(0..n).map(|t| a[i][t] * a[j][t]).sum::<i64>() - i64::from(i == j))
                    .collect()
            })
            .collect();
        let norm = -rng.gen_range(1..=8);
        let bound = ((-norm) as f64).sqrt().floor() as i64;
        let mut got = short_vectors_of_norm(&gram, norm).map_err(|e| e.to_string())?;
        got.sort();
        let want = box_search(&gram, norm, bound);
        ensure(got == want, || format!("short vectors of {gram:?} at {norm}"))?;
        done += 1;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 isotropic table: 13 classes, starred => 5A4, three exceptional rows", table1),
        ("2 classification: 9 orbits, disc -5^6:1 -5^4:5 -5^2:3, H_0..H_8 one-to-one", classification),
        ("3 q formula equals the Gram discriminant form on all of G", q_consistency),
        ("4 S0 has root type 5A4 and empty E-set", s0_hand_check),
        ("5 no totally isotropic subgroup of dimension 3", dimension_bound),
        ("6 x^6+x^2 and 200 random sextics: five A4 points, multiplicity 5, Wall 5", curve_suite),
        ("7 NS model: rank 22, even, det -5^6, signature (1,21)", ns_model),
        ("8 Smith form and short vectors agree with brute force on 1000 instances each", oracles),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
