//! `lattice table1 | classify | verify`.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use k3five::discform::{
    build_s0, canonical_key, classify_isotropic_subgroups, condition_ii, five_exponent, h_vector,
    isotropic_table, max_isotropic_dimension, verify_q_consistency, GElement, IsotropicSubgroup,
};
use k3five::lattice::{e_set, root_type_orthogonal_to, RootSystemType};

use crate::report::markdown_table;
use crate::{to_value, CliError, GlobalOpts, LatticeCmd, Outcome, Timer};

pub(crate) fn run(cmd: &LatticeCmd, _opts: &GlobalOpts, timer: &mut Timer) -> Result<Outcome, CliError> {
    match cmd {
        LatticeCmd::Table1 => table1(timer),
        LatticeCmd::Classify => classify(timer),
        LatticeCmd::Verify { input: None } => verify(timer),
        LatticeCmd::Verify { input: Some(path) } => verify_input(path, timer),
    }
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn elem_string(v: &[i64]) -> String {
    match GElement::from_slice(v) {
        Some(g) => g.to_string(),
        None => format!("{v:?}"),
    }
}

fn table1(timer: &mut Timer) -> Result<Outcome, CliError> {
    let rows = timer.time("table", isotropic_table).map_err(failure)?;
    let five_a4 = "5A4";
    let mut checks = BTreeMap::new();
    checks.insert("13 isotropic classes".to_string(), rows.len() == 13);
    checks.insert(
        "starred classes give 5A4".to_string(),
        rows.iter().all(|r| r.starred == (r.root_type == five_a4)),
    );
    checks.insert("every E-set is empty".to_string(), rows.iter().all(|r| r.e_empty));
    checks.insert(
        "classes cover the 3025 isotropic elements".to_string(),
        rows.iter().map(|r| r.count).sum::<usize>() == 3025,
    );
    let md_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.a.to_string(),
                r.b.to_string(),
                if r.y == 0 { "0".into() } else { format!("±{}", r.y) },
                if r.starred { "*".into() } else { String::new() },
                r.count.to_string(),
                elem_string(&r.representative),
                r.root_type.clone(),
                if r.e_empty { "empty".into() } else { "nonempty".into() },
            ]
        })
        .collect();
    let markdown = markdown_table(
        &["a", "b", "y", "starred", "count", "representative", "root_type", "E"],
        &md_rows,
    );
    Ok(Outcome {
        results: to_value(&rows),
        markdown,
        checks,
        seed: None,
    })
}

fn classify(timer: &mut Timer) -> Result<Outcome, CliError> {
    let mut reps = timer.time("classify", classify_isotropic_subgroups).map_err(failure)?;
    reps.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
    let mut dist: BTreeMap<u32, usize> = BTreeMap::new();
    for r in &reps {
        *dist.entry(r.disc_exp).or_default() += 1;
    }
    let labels: HashSet<&str> = reps.iter().map(|r| r.label.as_str()).collect();
    let mut checks = BTreeMap::new();
    checks.insert("9 orbit representatives".to_string(), reps.len() == 9);
    checks.insert(
        "discriminants -5^6:1, -5^4:5, -5^2:3".to_string(),
        dist == BTreeMap::from([(2, 3), (4, 5), (6, 1)]),
    );
    checks.insert(
        "H_0..H_8 match the orbits one-to-one".to_string(),
        labels.len() == reps.len()
            && (0..9).all(|i| labels.contains(format!("H_{i}").as_str()))
            && reps.iter().all(|r| r.reference_gens.is_some()),
    );
    checks.insert(
        "every overlattice has root type 5A4 and empty E".to_string(),
        reps.iter().all(|r| r.root_type == "5A4" && r.e_empty),
    );
    let md_rows: Vec<Vec<String>> = reps
        .iter()
        .map(|r| {
            let gens: Vec<String> = r.gens.iter().map(|g| elem_string(g)).collect();
            vec![
                r.label.clone(),
                if gens.is_empty() { "0".into() } else { gens.join(", ") },
                format!("-5^{}", r.disc_exp),
                r.root_type.clone(),
                if r.e_empty { "empty".into() } else { "nonempty".into() },
            ]
        })
        .collect();
    let markdown = markdown_table(&["label", "gens", "disc", "root_type", "E"], &md_rows);
    Ok(Outcome {
        results: to_value(&reps),
        markdown,
        checks,
        seed: None,
    })
}

fn verify(timer: &mut Timer) -> Result<Outcome, CliError> {
    let q = timer.time("q_consistency", verify_q_consistency).map_err(failure)?;
    let s0 = build_s0();
    let h = h_vector();
    let (roots, e) = timer.time("s0_roots", || -> Result<_, CliError> {
        let s = IsotropicSubgroup::trivial().overlattice(&s0).map_err(failure)?;
        let roots = root_type_orthogonal_to(&s, &h).map_err(failure)?;
        let e = e_set(&s, &h).map_err(failure)?;
        Ok((roots, e))
    })?;
    let max_dim = timer.time("dimension_bound", max_isotropic_dimension);
    let mut checks = BTreeMap::new();
    checks.insert("q formula agrees with the Gram form on G".to_string(), q.ok());
    checks.insert("S0 has root type 5A4".to_string(), roots.to_string() == "5A4");
    checks.insert("S0 has empty E-set".to_string(), e.is_empty());
    checks.insert("no isotropic subgroup of dimension 3".to_string(), max_dim == 2);
    let (plus, minus) = s0.signature();
    let results = json!({
        "q_consistency": to_value(&q),
        "S0": {
            "rank": s0.rank(),
            "det": s0.det().to_string(),
            "signature": [plus, minus],
            "even": s0.is_even(),
            "root_type": roots.to_string(),
            "E_empty": e.is_empty(),
        },
        "max_isotropic_dim": max_dim,
    });
    let md_rows: Vec<Vec<String>> = q
        .dual_images
        .iter()
        .map(|(l, g)| vec![l.clone(), g.to_string()])
        .collect();
    let markdown = markdown_table(&["b", "pr(b dual)"], &md_rows);
    Ok(Outcome {
        results,
        markdown,
        checks,
        seed: None,
    })
}

#[derive(Deserialize)]
struct ClassifyEntry {
    label: String,
    gens: Vec<Vec<i64>>,
    dim: usize,
    disc_exp: u32,
    sigma: Option<u32>,
    root_type: String,
    #[serde(rename = "E_empty")]
    e_empty: bool,
}

fn read_entries(path: &Path) -> Result<Vec<ClassifyEntry>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let list = match v {
        Value::Object(mut m) if m.contains_key("results") => m.remove("results").unwrap_or_default(),
        other => other,
    };
    serde_json::from_value(list)
        .map_err(|e| CliError::Usage(format!("{}: not a classification: {e}", path.display())))
}

fn verify_input(path: &Path, timer: &mut Timer) -> Result<Outcome, CliError> {
    let entries = read_entries(path)?;
    let s0 = build_s0();
    let h = h_vector();
    let mut checks = BTreeMap::new();
    let mut keys = HashSet::new();
    let mut distinct = true;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    timer.time("recheck", || {
        for entry in &entries {
            let mut set = |name: &str, ok: bool| {
                checks.insert(format!("{}: {name}", entry.label), ok);
                ok
            };
            let gens: Option<Vec<GElement>> =
                entry.gens.iter().map(|g| GElement::from_slice(g)).collect();
            let sub = match gens.map(IsotropicSubgroup::new) {
                Some(Ok(s)) => s,
                _ => {
                    set("generators span an isotropic subgroup", false);
                    continue;
                }
            };
            set("generators span an isotropic subgroup", true);
            let ii = set("condition (II)", condition_ii(&sub));
            let dim = set("dim", sub.dim() == entry.dim);
            distinct &= keys.insert(canonical_key(&sub));
            let computed = sub.overlattice(&s0).and_then(|s| {
                let roots = root_type_orthogonal_to(&s, &h)?;
                let e = e_set(&s, &h)?;
                Ok((five_exponent(&s), s.artin_sigma(), roots, e.is_empty()))
            });
            let Ok((disc_exp, sigma, roots, e_empty)) = computed else {
                set("overlattice", false);
                continue;
            };
            let claimed = RootSystemType::parse(&entry.root_type);
            let ok = [
                ii,
                dim,
                set("disc_exp", disc_exp == entry.disc_exp),
                set("sigma", sigma == entry.sigma),
                set("root_type", claimed.as_ref() == Some(&roots)),
                set("E_empty", e_empty == entry.e_empty),
            ]
            .iter()
            .all(|&b| b);
            rows.push(vec![
                entry.label.clone(),
                roots.to_string(),
                if ok { "pass".into() } else { "FAIL".into() },
            ]);
            results.push(json!({
                "label": entry.label,
                "disc_exp": disc_exp,
                "sigma": sigma,
                "root_type": roots.to_string(),
                "E_empty": e_empty,
                "ok": ok,
            }));
        }
    });
    checks.insert("entries lie in distinct orbits".to_string(), distinct);
    Ok(Outcome {
        results: Value::Array(results),
        markdown: markdown_table(&["label", "root_type", "result"], &rows),
        checks,
        seed: None,
    })
}
