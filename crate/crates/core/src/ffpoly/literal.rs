//! Text form `[c0,c1,...,cn]@5^k;mod=[m0,...,mk]` of polynomials.
//!
//! A coefficient is either an integer code `Σ a_i 5^i` or a list
//! `[a0, a1, ...]` of coefficients in the field generator. Over the prime
//! field any integer is accepted and reduced mod 5. `@5` is short for the
//! prime field and `;mod=` may be omitted to use the shipped modulus.

use serde_json::Value;

use super::field::{GaloisField, GfElem};
use super::poly::GfPoly;
use super::FfError;

fn bad(msg: impl Into<String>) -> FfError {
    FfError::Parse(msg.into())
}

/// Parses `5`, `5^k` or either followed by `;mod=[...]`.
pub fn parse_field(s: &str) -> Result<GaloisField, FfError> {
    let s = s.trim();
    let (head, modulus) = match s.split_once(';') {
        Some((h, rest)) => {
            let m = rest
                .trim()
                .strip_prefix("mod=")
                .ok_or_else(|| bad(format!("expected mod=[...] in {s:?}")))?;
            let m: Vec<i64> = serde_json::from_str(m.trim())
                .map_err(|e| bad(format!("modulus {m:?}: {e}")))?;
            (h.trim(), Some(m))
        }
        None => (s, None),
    };
    let k: usize = match head.strip_prefix('5') {
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|e| e.trim().parse().ok())
            .ok_or_else(|| bad(format!("field {head:?}: expected 5 or 5^k")))?,
        None => return Err(bad(format!("field {head:?}: characteristic must be 5"))),
    };
    if k == 0 {
        return Err(bad("extension degree must be positive"));
    }
    match modulus {
        Some(m) => {
            let f = GaloisField::with_modulus(&m)?;
            if f.degree() != k {
                return Err(bad(format!("modulus degree {} does not match 5^{k}", f.degree())));
            }
            Ok(f)
        }
        None => GaloisField::default_of_degree(k),
    }
}

pub fn parse_poly(s: &str) -> Result<GfPoly, FfError> {
    let (coeffs, field) = s
        .split_once('@')
        .ok_or_else(|| bad(format!("{s:?}: missing @field")))?;
    let field = parse_field(field)?;
    let list: Value =
        serde_json::from_str(coeffs.trim()).map_err(|e| bad(format!("coefficients: {e}")))?;
    let items = list.as_array().ok_or_else(|| bad("coefficients must be a list"))?;
    let coeffs = items
        .iter()
        .map(|v| parse_elem(&field, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GfPoly::new(field, coeffs))
}

/// One coefficient in the syntax above.
pub fn parse_elem(field: &GaloisField, v: &Value) -> Result<GfElem, FfError> {
    match v {
        Value::Number(n) => {
            let c = n.as_i64().ok_or_else(|| bad(format!("coefficient {n} is not an integer")))?;
            if field.degree() == 1 {
                return Ok(field.from_int(c));
            }
            u64::try_from(c)
                .ok()
                .and_then(|c| field.from_code(c))
                .ok_or_else(|| bad(format!("code {c} out of range for 5^{}", field.degree())))
        }
        Value::Array(a) => {
            let c = a
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("nested coefficient must be an integer")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(field.from_coeffs(&c))
        }
        other => Err(bad(format!("unexpected coefficient {other}"))),
    }
}

pub fn field_literal(f: &GaloisField) -> String {
    if f.degree() == 1 {
        "5".to_string()
    } else {
        let m: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        format!("5^{};mod=[{}]", f.degree(), m.join(","))
    }
}

pub fn poly_literal(u: &GfPoly) -> String {
    let c: Vec<String> = u.coeffs().iter().map(|c| c.code().to_string()).collect();
    format!("[{}]@{}", c.join(","), field_literal(u.field()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_shorthand() {
        let u = parse_poly("[0,0,1,0,0,0,1]@5").unwrap();
        assert_eq!(u.degree(), Some(6));
        assert_eq!(poly_literal(&u), "[0,0,1,0,0,0,1]@5");
        assert_eq!(parse_poly("[-1, 6]@5").unwrap(), parse_poly("[4,1]@5^1").unwrap());
    }

    #[test]
    fn extension_field_forms() {
        let u = parse_poly("[[1,1],7,0,1]@5^2;mod=[1,1,1]").unwrap();
        assert_eq!(u.field().modulus(), vec![1, 1, 1]);
        assert_eq!(u.coeff(0).code(), 6);
        assert_eq!(u.coeff(1).code(), 7);
        let back = parse_poly(&poly_literal(&u)).unwrap();
        assert_eq!(back, u);
        let d = parse_poly("[1,2]@5^2").unwrap();
        assert_eq!(d.field().modulus(), vec![2, 0, 1]);
    }

    #[test]
    fn errors() {
        for s in [
            "[1,2]",
            "[1,2]@7",
            "[1,2]@5^2;mod=[4,0,1]",
            "[1,2]@5^3;mod=[2,0,1]",
            "[25]@5^2",
            "1,2@5",
            "[\"a\"]@5",
        ] {
            assert!(matches!(parse_poly(s), Err(_)), "{s}");
        }
    }
}
