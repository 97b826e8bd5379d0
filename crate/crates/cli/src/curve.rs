//! `curve check | sing | wall | ns | random`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use k3five::curve::{
    check_curve, check_curve_seeded, is_in_u, ns_gram_model, random_in_u, CurveError,
    CurveReport, Multiplicity, SexticModel,
};
use k3five::ffpoly::{parse_field, parse_poly, FfError};
use num_bigint::BigInt;

use crate::report::markdown_table;
use crate::{to_value, CliError, CurveCmd, GlobalOpts, Outcome, PolyArg, Timer};

pub(crate) fn run(cmd: &CurveCmd, opts: &GlobalOpts, timer: &mut Timer) -> Result<Outcome, CliError> {
    match cmd {
        CurveCmd::Check(p) => single(Verb::Check, p, opts, timer),
        CurveCmd::Sing(p) => single(Verb::Sing, p, opts, timer),
        CurveCmd::Wall(p) => single(Verb::Wall, p, opts, timer),
        CurveCmd::Ns(p) => ns(p, opts, timer),
        CurveCmd::Random { count } => random(*count, opts, timer),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verb {
    Check,
    Sing,
    Wall,
}

fn model(p: &PolyArg, opts: &GlobalOpts) -> Result<SexticModel, CliError> {
    let lit = if p.poly.contains('@') {
        p.poly.clone()
    } else {
        format!("{}@{}", p.poly, opts.field.as_deref().unwrap_or("5"))
    };
    let f = parse_poly(&lit).map_err(|e| CliError::Usage(format!("--poly: {e}")))?;
    SexticModel::new(f).map_err(|e| CliError::Usage(format!("--poly: {e}")))
}

fn curve_failure(e: CurveError) -> CliError {
    match e {
        CurveError::Field(FfError::SplittingFieldTooLarge {
            max_degree,
            unsplit_degree,
            found,
        }) => CliError::Failure(format!(
            "f' needs an extension of degree {unsplit_degree} > --max-ext {max_degree} \
             ({} roots found below the bound)",
            found.len()
        )),
        other => CliError::Failure(other.to_string()),
    }
}

fn report(m: &SexticModel, opts: &GlobalOpts) -> Result<CurveReport, CliError> {
    match opts.seed {
        Some(s) => check_curve_seeded(m, opts.max_ext, s),
        None => check_curve(m, opts.max_ext),
    }
    .map_err(curve_failure)
}

fn point_checks(r: &CurveReport, checks: &mut BTreeMap<String, bool>) {
    checks.insert("5 singular points".to_string(), r.points.len() == 5);
    checks.insert("every singular point is A4".to_string(), r.points.iter().all(|p| p.is_a4));
}

fn wall_checks(r: &CurveReport, checks: &mut BTreeMap<String, bool>) {
    checks.insert(
        "every polar multiplicity is 5".to_string(),
        r.points.iter().all(|p| p.mult == Multiplicity::Finite(5)),
    );
    checks.insert("Wall product is 5".to_string(), r.wall.product == Some(5));
}

fn points_table(r: &CurveReport) -> String {
    let rows: Vec<Vec<String>> = r
        .points
        .iter()
        .map(|p| {
            vec![
                p.alpha.to_string(),
                p.beta.to_string(),
                p.field.clone(),
                p.degree.to_string(),
                p.is_a4.to_string(),
                p.mult.to_string(),
            ]
        })
        .collect();
    markdown_table(&["alpha", "beta", "field", "degree", "A4", "mult"], &rows)
}

fn wall_line(r: &CurveReport) -> String {
    let product = r.wall.product.map_or("undefined".to_string(), |p| p.to_string());
    format!("wall: {} - {} = {product}\n", r.wall.total, r.wall.total - r.wall.product.unwrap_or(0))
}

fn single(verb: Verb, p: &PolyArg, opts: &GlobalOpts, timer: &mut Timer) -> Result<Outcome, CliError> {
    let m = model(p, opts)?;
    let in_u = is_in_u(m.f()).map_err(curve_failure)?;
    let mut checks = BTreeMap::new();
    checks.insert("f' is squarefree".to_string(), in_u);
    if !in_u {
        return Ok(Outcome {
            results: json!({ "poly": m.literal(), "in_U": false }),
            markdown: format!("poly: {}\n\nin_U: false\n", m.literal()),
            checks,
            seed: opts.seed,
        });
    }
    let r = timer.time("curve", || report(&m, opts))?;
    let (results, markdown) = match verb {
        Verb::Check => {
            point_checks(&r, &mut checks);
            wall_checks(&r, &mut checks);
            let md = format!(
                "poly: {}\n\nin_U: true\n\n{}\n{}",
                r.poly,
                points_table(&r),
                wall_line(&r)
            );
            (to_value(&r), md)
        }
        Verb::Sing => {
            point_checks(&r, &mut checks);
            (to_value(&r.points), points_table(&r))
        }
        Verb::Wall => {
            wall_checks(&r, &mut checks);
            (to_value(&r.wall), wall_line(&r))
        }
    };
    Ok(Outcome {
        results,
        markdown,
        checks,
        seed: opts.seed,
    })
}

fn ns(p: &PolyArg, opts: &GlobalOpts, timer: &mut Timer) -> Result<Outcome, CliError> {
    let m = model(p, opts)?;
    let l = timer
        .time("ns", || ns_gram_model(&m, opts.max_ext))
        .map_err(curve_failure)?;
    let det = l.det();
    let sig = l.signature();
    let mut checks = BTreeMap::new();
    checks.insert("rank 22".to_string(), l.rank() == 22);
    checks.insert("even".to_string(), l.is_even());
    checks.insert("det -5^6".to_string(), det == BigInt::from(-15625));
    checks.insert("signature (1,21)".to_string(), sig == (1, 21));
    let markdown = markdown_table(
        &["rank", "even", "det", "signature"],
        &[vec![
            l.rank().to_string(),
            l.is_even().to_string(),
            det.to_string(),
            format!("({},{})", sig.0, sig.1),
        ]],
    );
    Ok(Outcome {
        results: to_value(&l),
        markdown,
        checks,
        seed: None,
    })
}

fn random(count: u64, opts: &GlobalOpts, timer: &mut Timer) -> Result<Outcome, CliError> {
    let field_lit = opts.field.as_deref().unwrap_or("5");
    let field = parse_field(field_lit).map_err(|e| CliError::Usage(format!("--field: {e}")))?;
    let seed = opts.seed.unwrap_or(0);
    let reports: Vec<(u64, CurveReport)> = timer.time("sample", || {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let s = seed.wrapping_add(i);
                let m = random_in_u(&field, s).map_err(curve_failure)?;
                Ok((s, check_curve(&m, opts.max_ext).map_err(curve_failure)?))
            })
            .collect::<Result<_, CliError>>()
    })?;
    let mut checks = BTreeMap::new();
    let all = |f: &dyn Fn(&CurveReport) -> bool| reports.iter().all(|(_, r)| f(r));
    checks.insert("every sample has 5 singular points".to_string(), all(&|r| r.points.len() == 5));
    checks.insert("every singular point is A4".to_string(), all(&|r| r.points.iter().all(|p| p.is_a4)));
    checks.insert(
        "every polar multiplicity is 5".to_string(),
        all(&|r| r.points.iter().all(|p| p.mult == Multiplicity::Finite(5))),
    );
    checks.insert("every Wall product is 5".to_string(), all(&|r| r.wall.product == Some(5)));
    let results: Vec<Value> = reports
        .iter()
        .map(|(s, r)| {
            json!({
                "seed": s,
                "poly": r.poly,
                "points": r.points.len(),
                "all_A4": r.points.iter().all(|p| p.is_a4),
                "mults": to_value(&r.points.iter().map(|p| p.mult).collect::<Vec<_>>()),
                "product": r.wall.product,
            })
        })
        .collect();
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|(s, r)| {
            vec![
                s.to_string(),
                r.poly.clone(),
                r.points.len().to_string(),
                r.points.iter().all(|p| p.is_a4).to_string(),
                r.wall.product.map_or("undefined".into(), |p| p.to_string()),
            ]
        })
        .collect();
    Ok(Outcome {
        results: Value::Array(results),
        markdown: markdown_table(&["seed", "poly", "points", "A4", "product"], &rows),
        checks,
        seed: Some(seed),
    })
}
