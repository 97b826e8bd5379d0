//! Plane sextics `C_f : y^5 = f(x)` in characteristic 5: membership in the
//! locus where `f'` is squarefree, the five `A4` points, polar
//! multiplicities and the Wall count `30 - Σ I_s(C, C_Q)`.

mod bipoly;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ffpoly::{
    field_literal, is_squarefree, poly_literal, roots_in_extension, Extension, FfError,
    GaloisField, GfElem, GfPoly, Root,
};
use crate::lattice::{negative_a, GramLattice, LatticeError};

pub use bipoly::{local_intersection_multiplicity, BiPoly, HomPoly, Multiplicity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("f must have degree 6")]
    NotSextic(Option<usize>),
    #[error("f' is not squarefree")]
    NotInU,
    #[error("alpha is not a root of f'")]
    NotCritical,
    #[error("{0}")]
    Degenerate(String),
    #[error("no sextic with squarefree derivative after {0} draws")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `y^5 = f(x)` with `deg f = 6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SexticModel {
    f: GfPoly,
}

impl SexticModel {
    pub fn new(f: GfPoly) -> Result<Self, CurveError> {
        if f.degree() != Some(6) {
            return Err(CurveError::NotSextic(f.degree()));
        }
        Ok(SexticModel { f })
    }

    pub fn f(&self) -> &GfPoly {
        &self.f
    }

    pub fn field(&self) -> &GaloisField {
        self.f.field()
    }

    pub fn literal(&self) -> String {
        poly_literal(&self.f)
    }

    /// `F = y^5 z - Σ a_i x^i z^(6-i)`.
    pub fn homogeneous(&self) -> HomPoly {
        let fld = *self.field();
        let mut h = HomPoly::new(fld);
        h.add_term([0, 5, 1], fld.one());
        for (i, a) in self.f.coeffs().iter().enumerate() {
            h.add_term([i as u32, 0, 6 - i as u32], fld.neg(a));
        }
        h
    }
}

/// `f'` squarefree. Since `deg f = 6`, `f' = a6 x^5 + 4 a4 x^3 + 3 a3 x^2
/// + 2 a2 x + a1`.
pub fn is_in_u(f: &GfPoly) -> Result<bool, CurveError> {
    if f.degree() != Some(6) {
        return Err(CurveError::NotSextic(f.degree()));
    }
    Ok(is_squarefree(&f.derivative())?)
}

/// Writes `f = f(α) + (x - α)^2 g` and reports `g(α) ≠ 0` together with
/// `g(α)`. The field of `f` must contain `alpha`.
pub fn verify_a4(f: &GfPoly, alpha: &GfElem) -> Result<(bool, GfElem), CurveError> {
    let fld = *f.field();
    if !f.derivative().eval(alpha).is_zero() {
        return Err(CurveError::NotCritical);
    }
    let shifted = f.sub(&GfPoly::constant(fld, f.eval(alpha)));
    let sq = GfPoly::linear_root(fld, alpha).pow(2);
    let g = shifted.div_exact(&sq)?;
    let ga = g.eval(alpha);
    Ok((!ga.is_zero(), ga))
}

/// One singular point `(α, β)` with `β = f(α)^(1/5)`, values given as codes
/// in `field`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularPointReport {
    pub alpha: u64,
    pub beta: u64,
    /// The field holding `α` and `β`, in literal form.
    pub field: String,
    /// Degree of `α` over the base field.
    pub degree: usize,
    #[serde(rename = "is_A4")]
    pub is_a4: bool,
    pub g_at_alpha: u64,
    pub mult: Multiplicity,
}

/// Points of `C_f` on the line `z = 0` and their smoothness.
#[derive(Clone, Debug, Serialize)]
pub struct InfinityReport {
    pub points: Vec<String>,
    pub smooth: bool,
}

/// The chosen polar point and how many draws it took.
#[derive(Clone, Debug, Serialize)]
pub struct PolarChoice {
    /// `[q_x, q_y, q_z]` as codes in the base field.
    pub q: [u64; 3],
    pub attempts: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallReport {
    pub d: u32,
    pub total: i64,
    pub corrections: Vec<Multiplicity>,
    /// `None` when some correction is infinite.
    pub product: Option<i64>,
}

impl WallReport {
    pub fn from_corrections(d: u32, corrections: Vec<Multiplicity>) -> Self {
        let total = (d * (d - 1)) as i64;
        let product = corrections
            .iter()
            .map(|m| m.finite().map(i64::from))
            .sum::<Option<i64>>()
            .map(|s| total - s);
        WallReport {
            d,
            total,
            corrections,
            product,
        }
    }
}

/// Everything `curve check` reports.
#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub poly: String,
    #[serde(rename = "in_U")]
    pub in_u: bool,
    pub points: Vec<SingularPointReport>,
    pub infinity: InfinityReport,
    pub polar: PolarChoice,
    pub wall: WallReport,
}

struct Critical {
    root: Root,
    beta: GfElem,
    is_a4: bool,
    g_at_alpha: GfElem,
}

fn critical_points(m: &SexticModel, max_ext: usize) -> Result<Vec<Critical>, CurveError> {
    if !is_in_u(m.f())? {
        return Err(CurveError::NotInU);
    }
    let roots = roots_in_extension(&m.f().derivative(), max_ext)?;
    roots
        .into_iter()
        .map(|root| {
            let fe = root.extension.embed_poly(m.f());
            let fld = root.extension.field;
            let beta = fld.fifth_root(&fe.eval(&root.value));
            let (is_a4, g_at_alpha) = verify_a4(&fe, &root.value)?;
            Ok(Critical {
                root,
                beta,
                is_a4,
                g_at_alpha,
            })
        })
        .collect()
}

/// Checks `C_f ∩ {z = 0} = {[0:1:0]}` and smoothness there.
pub fn points_at_infinity(m: &SexticModel) -> InfinityReport {
    let h = m.homogeneous();
    let fld = *m.field();
    let (zero, one) = (fld.zero(), fld.one());
    let mut points = Vec::new();
    // points [1:t:0]: roots of F(1, t, 0)
    let mut on_line = vec![zero; 7];
    for (e, c) in h.terms() {
        if e[2] == 0 {
            on_line[e[1] as usize] = fld.add(&on_line[e[1] as usize], c);
        }
    }
    let p = GfPoly::new(fld, on_line);
    if p.is_zero() {
        points.push("[1:t:0] for all t".to_string());
    } else if !p.is_constant() {
        points.push(format!("[1:t:0] for roots t of {}", poly_literal(&p)));
    }
    let top = h.eval(&[zero, one, zero]);
    let mut smooth = true;
    if top.is_zero() {
        points.push("[0:1:0]".to_string());
        let chart = h.dehomogenize(1);
        let du = chart.partial_u().eval(&zero, &zero);
        let dv = chart.partial_v().eval(&zero, &zero);
        smooth = !(du.is_zero() && dv.is_zero());
    }
    InfinityReport { points, smooth }
}

/// Draws `Q` over the base field avoiding `C`, the tangent lines at the
/// singular points and infinite multiplicities.
fn choose_polar(
    m: &SexticModel,
    crit: &[Critical],
    seed: u64,
) -> Result<(PolarChoice, Vec<Multiplicity>), CurveError> {
    let base = *m.field();
    let h = m.homogeneous();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 1..=MAX_POLAR_ATTEMPTS {
        let q = [base.random(&mut rng), base.random(&mut rng), base.random(&mut rng)];
        if q.iter().all(|c| c.is_zero()) {
            last = "Q = 0".into();
            continue;
        }
        if h.eval(&q).is_zero() {
            last = "Q lies on C".into();
            continue;
        }
        match polar_multiplicities(&h, crit, &q) {
            Ok(mults) => {
                return Ok((
                    PolarChoice {
                        q: q.map(|c| c.code()),
                        attempts: attempt,
                    },
                    mults,
                ))
            }
            Err(why) => last = why,
        }
    }
    Err(CurveError::Degenerate(format!(
        "no admissible polar point in {MAX_POLAR_ATTEMPTS} draws; last: {last}"
    )))
}

const MAX_POLAR_ATTEMPTS: usize = 256;

fn polar_multiplicities(
    h: &HomPoly,
    crit: &[Critical],
    q: &[GfElem; 3],
) -> Result<Vec<Multiplicity>, String> {
    let mut out = Vec::with_capacity(crit.len());
    for c in crit {
        let ext: &Extension = &c.root.extension;
        let he = h.embed(ext);
        let qe = q.map(|x| ext.embed(&x));
        let fld = ext.field;
        let (a, b) = (c.root.value, c.beta);
        let curve = he.dehomogenize(2);
        let polar = he.polar(&qe).dehomogenize(2);
        // tangent cone: Q must not lie on a tangent line through (a, b)
        let (_, cone) = curve
            .shift(&a, &b)
            .lowest_form()
            .ok_or_else(|| "curve vanishes identically".to_string())?;
        let dir = if qe[2].is_zero() {
            (qe[0], qe[1])
        } else {
            let inv = fld.inv(&qe[2]).expect("nonzero");
            (
                fld.sub(&fld.mul(&qe[0], &inv), &a),
                fld.sub(&fld.mul(&qe[1], &inv), &b),
            )
        };
        let on_cone = cone.iter().fold(fld.zero(), |acc, &(i, j, c)| {
            let t = fld.mul(&c, &fld.mul(&fld.pow(&dir.0, i as u128), &fld.pow(&dir.1, j as u128)));
            fld.add(&acc, &t)
        });
        if on_cone.is_zero() {
            return Err(format!("Q lies on a tangent line at alpha = {}", a.code()));
        }
        let mult = local_intersection_multiplicity(&curve, &polar, (&a, &b));
        if mult == Multiplicity::Infinite {
            return Err(format!("C and C_Q share a component at alpha = {}", a.code()));
        }
        out.push(mult);
    }
    Ok(out)
}

const POLAR_SEED: u64 = 0x0005_a4a4;

/// The singular points of `C_f` over the splitting field of `f'`, each
/// with its `A4` certificate and its intersection multiplicity with a
/// generic polar curve.
pub fn singular_points(
    m: &SexticModel,
    max_ext: usize,
) -> Result<Vec<SingularPointReport>, CurveError> {
    Ok(check_curve_seeded(m, max_ext, POLAR_SEED)?.points)
}

/// `deg π · deg C^dual = 30 - Σ_s I_s(C, C_Q)`.
pub fn wall_invariant(m: &SexticModel, max_ext: usize) -> Result<WallReport, CurveError> {
    Ok(check_curve_seeded(m, max_ext, POLAR_SEED)?.wall)
}

pub fn check_curve(m: &SexticModel, max_ext: usize) -> Result<CurveReport, CurveError> {
    check_curve_seeded(m, max_ext, POLAR_SEED)
}

pub fn check_curve_seeded(
    m: &SexticModel,
    max_ext: usize,
    polar_seed: u64,
) -> Result<CurveReport, CurveError> {
    let crit = critical_points(m, max_ext)?;
    let infinity = points_at_infinity(m);
    if infinity.points != ["[0:1:0]"] || !infinity.smooth {
        return Err(CurveError::Degenerate(format!(
            "points at infinity {:?}, smooth = {}",
            infinity.points, infinity.smooth
        )));
    }
    let (polar, mults) = choose_polar(m, &crit, polar_seed)?;
    let points: Vec<SingularPointReport> = crit
        .iter()
        .zip(&mults)
        .map(|(c, mult)| {
            let ext = &c.root.extension;
            SingularPointReport {
                alpha: c.root.value.code(),
                beta: c.beta.code(),
                field: field_literal(&ext.field),
                degree: c.root.degree,
                is_a4: c.is_a4,
                g_at_alpha: c.g_at_alpha.code(),
                mult: *mult,
            }
        })
        .collect();
    let wall = WallReport::from_corrections(6, mults);
    Ok(CurveReport {
        poly: m.literal(),
        in_u: true,
        points,
        infinity,
        polar,
        wall,
    })
}

/// `5A4(-1) ⊕ <h_f, l_f>`, block `j` spanned by the exceptional curves
/// over the `j`-th singular point in the order of [`singular_points`].
/// Labels are `e{i}^({j})`, `h`, `l`.
pub fn ns_gram_model(m: &SexticModel, max_ext: usize) -> Result<GramLattice, CurveError> {
    let crit = critical_points(m, max_ext)?;
    if crit.len() != 5 || !crit.iter().all(|c| c.is_a4) {
        return Err(CurveError::Degenerate(format!(
            "expected five A4 points, found {}",
            crit.len()
        )));
    }
    let mut s = negative_a(4, |i| format!("e{i}^(1)"));
    for j in 2..=crit.len() {
        s = s.direct_sum(&negative_a(4, |i| format!("e{i}^({j})")));
    }
    let hl = GramLattice::new(
        vec![vec![2, 1], vec![1, -2]],
        vec!["h".to_string(), "l".to_string()],
    )?;
    Ok(s.direct_sum(&hl))
}

/// Rejection-samples `f` of degree 6 with `f'` squarefree.
pub fn random_in_u(field: &GaloisField, seed: u64) -> Result<SexticModel, CurveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SAMPLES {
        let mut c: Vec<GfElem> = (0..6).map(|_| field.random(&mut rng)).collect();
        let mut top = field.random(&mut rng);
        while top.is_zero() {
            top = field.from_code(rng.gen_range(1..field.order() as u64)).unwrap();
        }
        c.push(top);
        let f = GfPoly::new(*field, c);
        if is_in_u(&f)? {
            return SexticModel::new(f);
        }
    }
    Err(CurveError::SamplingExhausted(MAX_SAMPLES))
}

const MAX_SAMPLES: usize = 10_000;
