use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{GaloisField, GfElem};
use super::poly::{poly_gcd, GfPoly};
use super::FfError;

/// Fields with at most this many elements are searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 625;

const DEFAULT_SEED: u64 = 0x5eed_0005;

/// `F_{q^d}` over a base `F_q`, with the embedding `F_q -> F_{q^d}` fixed by
/// sending the base generator to the least root of the base modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extension {
    pub base: GaloisField,
    pub field: GaloisField,
    /// Degree over the base.
    pub degree: usize,
    image_of_generator: GfElem,
}

impl Extension {
    pub fn new(base: GaloisField, d: usize) -> Result<Self, FfError> {
        if d == 0 {
            return Err(FfError::DegreeTooLarge(0));
        }
        if d == 1 {
            return Ok(Extension {
                base,
                field: base,
                degree: 1,
                image_of_generator: base.generator(),
            });
        }
        let field = GaloisField::default_of_degree(base.degree() * d)?;
        let m = GfPoly::new(
            field,
            base.modulus().iter().map(|&c| field.from_int(c as i64)).collect(),
        );
        let roots = linear_roots(&m, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))?;
        let image_of_generator = *roots.iter().min().ok_or(FfError::NotIrreducible(vec![]))?;
        Ok(Extension {
            base,
            field,
            degree: d,
            image_of_generator,
        })
    }

    pub fn embed(&self, a: &GfElem) -> GfElem {
        if self.degree == 1 {
            return *a;
        }
        let f = self.field;
        a.coeffs()[..self.base.degree()]
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| {
                f.add(&f.mul(&acc, &self.image_of_generator), &f.from_int(c as i64))
            })
    }

    pub fn embed_poly(&self, u: &GfPoly) -> GfPoly {
        u.map_coeffs(self.field, |c| self.embed(c))
    }
}

/// A root of a polynomial over `F_q`, living in `F_{q^degree}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub value: GfElem,
    pub multiplicity: usize,
    /// Degree over the base of the smallest extension the root was found
    /// in; this is the degree of its minimal polynomial.
    pub degree: usize,
    pub extension: Extension,
}

/// Factors `monic(u) = Π g_i^{m_i}` with squarefree, pairwise coprime
/// `g_i`, handling fifth powers.
pub fn squarefree_decomposition(u: &GfPoly) -> Result<Vec<(GfPoly, usize)>, FfError> {
    coprime_refine(yun(u)?)
}

/// Splits overlapping squarefree parts until they are pairwise coprime,
/// adding multiplicities on common factors.
fn coprime_refine(mut parts: Vec<(GfPoly, usize)>) -> Result<Vec<(GfPoly, usize)>, FfError> {
    'outer: loop {
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let d = poly_gcd(&parts[i].0, &parts[j].0)?;
                if d.is_constant() {
                    continue;
                }
                let (gi, mi) = parts[i].clone();
                let (gj, mj) = parts[j].clone();
                parts.remove(j);
                parts.remove(i);
                for (g, m) in [(gi.div_exact(&d)?, mi), (gj.div_exact(&d)?, mj), (d, mi + mj)] {
                    if !g.is_constant() {
                        parts.push((g, m));
                    }
                }
                continue 'outer;
            }
        }
        parts.sort_by_key(|(_, m)| *m);
        return Ok(parts);
    }
}

fn yun(u: &GfPoly) -> Result<Vec<(GfPoly, usize)>, FfError> {
    if u.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let u = u.monic();
    let mut out = Vec::new();
    if u.is_constant() {
        return Ok(out);
    }
    let d = u.derivative();
    if d.is_zero() {
        for (g, m) in yun(&fifth_root_poly(&u))? {
            out.push((g, 5 * m));
        }
        return Ok(out);
    }
    let mut c = poly_gcd(&u, &d)?;
    let mut w = u.div_exact(&c)?;
    let mut i = 1;
    while !w.is_constant() {
        let y = poly_gcd(&w, &c)?;
        let fac = w.div_exact(&y)?;
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_constant() {
        for (g, m) in yun(&fifth_root_poly(&c))? {
            out.push((g, 5 * m));
        }
    }
    Ok(out)
}

/// `v` with `v^5 = u`, for `u` with zero derivative.
fn fifth_root_poly(u: &GfPoly) -> GfPoly {
    let f = *u.field();
    let coeffs = u
        .coeffs()
        .iter()
        .step_by(5)
        .map(|c| f.fifth_root(c))
        .collect();
    GfPoly::new(f, coeffs)
}

/// Distinct-degree factorization of a monic squarefree `u`: pairs
/// `(d, product of the irreducible factors of degree d)`. Stops after
/// degree `max_degree`; the unsplit remainder is returned separately.
pub fn distinct_degree(
    u: &GfPoly,
    max_degree: usize,
) -> Result<(Vec<(usize, GfPoly)>, GfPoly), FfError> {
    let f = *u.field();
    let q = f.order();
    let x = GfPoly::x(f);
    let mut rest = u.monic();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        if d > max_degree {
            return Ok((out, rest));
        }
        h = h.pow_mod(q, &rest)?;
        let g = poly_gcd(&h.sub(&x), &rest)?;
        if !g.is_constant() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((d, g));
        }
        d += 1;
    }
    if let Some(k) = rest.degree().filter(|&k| k > 0) {
        if k > max_degree {
            return Ok((out, rest));
        }
        out.push((k, rest));
        rest = GfPoly::one(f);
    }
    Ok((out, rest))
}

/// Roots of a squarefree `u` that splits into linear factors over its own
/// field.
fn linear_roots(u: &GfPoly, rng: &mut ChaCha8Rng) -> Result<Vec<GfElem>, FfError> {
    let f = *u.field();
    if f.order() <= EXHAUSTIVE_LIMIT {
        return Ok(f.elements().filter(|a| u.eval(a).is_zero()).collect());
    }
    let mut out = Vec::new();
    split_linear(&u.monic(), rng, &mut out)?;
    out.sort();
    Ok(out)
}

/// Cantor-Zassenhaus splitting into linear factors.
fn split_linear(u: &GfPoly, rng: &mut ChaCha8Rng, out: &mut Vec<GfElem>) -> Result<(), FfError> {
    let f = *u.field();
    match u.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(f.neg(&f.div(&u.coeff(0), &u.coeff(1))?));
            return Ok(());
        }
        _ => {}
    }
    let n = u.degree().unwrap();
    let e = (f.order() - 1) / 2;
    loop {
        let a = GfPoly::new(f, (0..n).map(|_| f.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = a.pow_mod(e, u)?.sub(&GfPoly::one(f));
        if b.is_zero() {
            continue;
        }
        let g = poly_gcd(&b, u)?;
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let h = u.div_exact(&g)?;
            split_linear(&g, rng, out)?;
            split_linear(&h, rng, out)?;
            return Ok(());
        }
    }
}

/// All roots of `u` in extensions of degree at most `max_degree` over its
/// field, sorted by degree and then code.
///
/// When some irreducible factor has degree above `max_degree`, returns
/// [`FfError::SplittingFieldTooLarge`] carrying the roots found.
pub fn roots_in_extension(u: &GfPoly, max_degree: usize) -> Result<Vec<Root>, FfError> {
    roots_in_extension_seeded(u, max_degree, DEFAULT_SEED)
}

pub fn roots_in_extension_seeded(
    u: &GfPoly,
    max_degree: usize,
    seed: u64,
) -> Result<Vec<Root>, FfError> {
    let base = *u.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots = Vec::new();
    let mut unsplit = 0;
    for (g, m) in squarefree_decomposition(u)? {
        let (parts, rest) = distinct_degree(&g, max_degree)?;
        unsplit += m * rest.degree().unwrap_or(0);
        for (d, gd) in parts {
            let ext = Extension::new(base, d)?;
            for value in linear_roots(&ext.embed_poly(&gd), &mut rng)? {
                roots.push(Root {
                    value,
                    multiplicity: m,
                    degree: d,
                    extension: ext,
                });
            }
        }
    }
    roots.sort_by_key(|r| (r.degree, r.value));
    if unsplit > 0 {
        return Err(FfError::SplittingFieldTooLarge {
            max_degree,
            unsplit_degree: unsplit,
            found: roots,
        });
    }
    Ok(roots)
}
