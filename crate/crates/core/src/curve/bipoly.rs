use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::ffpoly::{Extension, GaloisField, GfElem, GfPoly};

/// Ternary form `Σ c x^i y^j z^k`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    field: GaloisField,
    terms: BTreeMap<[u32; 3], GfElem>,
}

impl HomPoly {
    pub fn new(field: GaloisField) -> Self {
        HomPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn add_term(&mut self, exp: [u32; 3], c: GfElem) {
        let f = self.field;
        let e = self.terms.entry(exp).or_insert_with(|| f.zero());
        *e = f.add(e, &c);
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &GfElem)> {
        self.terms.iter()
    }

    /// Partial derivative in variable `v` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, v: usize) -> HomPoly {
        let f = self.field;
        let mut out = HomPoly::new(f);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut d = *e;
            d[v] -= 1;
            out.add_term(d, f.mul(c, &f.from_int(e[v] as i64)));
        }
        out
    }

    pub fn eval(&self, p: &[GfElem; 3]) -> GfElem {
        let f = self.field;
        self.terms.iter().fold(f.zero(), |acc, (e, c)| {
            let mut t = *c;
            for v in 0..3 {
                t = f.mul(&t, &f.pow(&p[v], e[v] as u128));
            }
            f.add(&acc, &t)
        })
    }

    /// `Σ q_v ∂F/∂v`.
    pub fn polar(&self, q: &[GfElem; 3]) -> HomPoly {
        let f = self.field;
        let mut out = HomPoly::new(f);
        for (v, qv) in q.iter().enumerate() {
            for (e, c) in &self.partial(v).terms {
                out.add_term(*e, f.mul(c, qv));
            }
        }
        out
    }

    /// Sets variable `v` to one and keeps the other two in order.
    pub fn dehomogenize(&self, v: usize) -> BiPoly {
        let mut out = BiPoly::zero(self.field);
        let keep: Vec<usize> = (0..3).filter(|&u| u != v).collect();
        for (e, c) in &self.terms {
            out.add_term(e[keep[0]] as usize, e[keep[1]] as usize, *c);
        }
        out
    }

    pub fn embed(&self, ext: &Extension) -> HomPoly {
        let mut out = HomPoly::new(ext.field);
        for (e, c) in &self.terms {
            out.add_term(*e, ext.embed(c));
        }
        out
    }
}

/// Bivariate polynomial `Σ c_{ij} u^i v^j`; row `j` holds the coefficients
/// of `v^j` as a polynomial in `u`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: GaloisField,
    rows: Vec<Vec<GfElem>>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}*u^{i}*v^{j}", c.code())?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn zero(field: GaloisField) -> Self {
        BiPoly {
            field,
            rows: Vec::new(),
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn coeff(&self, i: usize, j: usize) -> GfElem {
        self.rows
            .get(j)
            .and_then(|r| r.get(i))
            .copied()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: GfElem) {
        if self.rows.len() <= j {
            self.rows.resize(j + 1, Vec::new());
        }
        let row = &mut self.rows[j];
        if row.len() <= i {
            row.resize(i + 1, self.field.zero());
        }
        row[i] = self.field.add(&row[i], &c);
        self.normalize();
    }

    fn normalize(&mut self) {
        for row in self.rows.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `p(u)` viewed as a polynomial in `u` alone.
    pub fn from_u_poly(p: &GfPoly) -> Self {
        let mut b = BiPoly {
            field: *p.field(),
            rows: vec![p.coeffs().to_vec()],
        };
        b.normalize();
        b
    }

    pub fn eval(&self, u: &GfElem, v: &GfElem) -> GfElem {
        let f = self.field;
        self.rows.iter().rev().fold(f.zero(), |acc, row| {
            let r = row
                .iter()
                .rev()
                .fold(f.zero(), |a, c| f.add(&f.mul(&a, u), c));
            f.add(&f.mul(&acc, v), &r)
        })
    }

    pub fn partial_u(&self) -> BiPoly {
        let f = self.field;
        let mut out = BiPoly::zero(f);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate().skip(1) {
                out.add_term(i - 1, j, f.mul(c, &f.from_int(i as i64)));
            }
        }
        out
    }

    pub fn partial_v(&self) -> BiPoly {
        let f = self.field;
        let mut out = BiPoly::zero(f);
        for (j, row) in self.rows.iter().enumerate().skip(1) {
            for (i, c) in row.iter().enumerate() {
                out.add_term(i, j - 1, f.mul(c, &f.from_int(j as i64)));
            }
        }
        out
    }

    /// `P(u + a, v + b)`.
    pub fn shift(&self, a: &GfElem, b: &GfElem) -> BiPoly {
        let f = self.field;
        let ua = powers_of_linear(f, a, self.rows.iter().map(|r| r.len()).max().unwrap_or(0));
        let vb = powers_of_linear(f, b, self.rows.len());
        let mut out = BiPoly::zero(f);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, uk) in ua[i].iter().enumerate() {
                    if uk.is_zero() {
                        continue;
                    }
                    let cu = f.mul(c, uk);
                    for (l, vl) in vb[j].iter().enumerate() {
                        if !vl.is_zero() {
                            out.add_term(k, l, f.mul(&cu, vl));
                        }
                    }
                }
            }
        }
        out
    }

    /// Lowest total degree of a nonzero term and that homogeneous part as
    /// `(i, j, c)` triples.
    pub fn lowest_form(&self) -> Option<(usize, Vec<(usize, usize, GfElem)>)> {
        let mut best: Option<usize> = None;
        let mut terms = Vec::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let d = i + j;
                match best {
                    Some(b) if d > b => continue,
                    Some(b) if d == b => terms.push((i, j, *c)),
                    _ => {
                        best = Some(d);
                        terms = vec![(i, j, *c)];
                    }
                }
            }
        }
        best.map(|d| (d, terms))
    }

    fn sub(&self, o: &BiPoly) -> BiPoly {
        let f = self.field;
        let mut out = self.clone();
        for (j, row) in o.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(i, j, f.neg(c));
                }
            }
        }
        out
    }

    fn scale_shift_u(&self, c: &GfElem, k: usize) -> BiPoly {
        let f = self.field;
        let mut rows: Vec<Vec<GfElem>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![f.zero(); k];
                v.extend(r.iter().map(|a| f.mul(a, c)));
                v
            })
            .collect();
        for r in rows.iter_mut() {
            if r.iter().all(|a| a.is_zero()) {
                r.clear();
            }
        }
        let mut b = BiPoly { field: f, rows };
        b.normalize();
        b
    }

    /// Row `0`: `P(u, 0)`.
    fn at_v_zero(&self) -> &[GfElem] {
        self.rows.first().map_or(&[], |r| r.as_slice())
    }

    /// Drops row `0`, dividing by `v`; caller ensures row `0` vanishes.
    fn div_v(&self) -> BiPoly {
        let mut b = BiPoly {
            field: self.field,
            rows: self.rows.iter().skip(1).cloned().collect(),
        };
        b.normalize();
        b
    }
}

/// Coefficient lists of `(t + a)^i` for `i < n`.
fn powers_of_linear(f: GaloisField, a: &GfElem, n: usize) -> Vec<Vec<GfElem>> {
    let lin = GfPoly::new(f, vec![*a, f.one()]);
    let mut out = Vec::with_capacity(n);
    let mut p = GfPoly::one(f);
    for _ in 0..n {
        let mut c = p.coeffs().to_vec();
        if c.is_empty() {
            c.push(f.zero());
        }
        out.push(c);
        p = p.mul(&lin);
    }
    out
}

/// Local intersection number, `Infinite` when the curves share a component
/// through the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn finite(&self) -> Option<u32> {
        match self {
            Multiplicity::Finite(n) => Some(*n),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => s.serialize_u32(*n),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `I_p(F, G)` by Fulton's recursion after moving `p` to the origin.
pub fn local_intersection_multiplicity(
    f: &BiPoly,
    g: &BiPoly,
    p: (&GfElem, &GfElem),
) -> Multiplicity {
    let a = f.shift(p.0, p.1);
    let b = g.shift(p.0, p.1);
    at_origin(a, b)
}

fn ord_u(row: &[GfElem]) -> Option<usize> {
    row.iter().position(|c| !c.is_zero())
}

fn deg_u(row: &[GfElem]) -> Option<usize> {
    row.iter().rposition(|c| !c.is_zero())
}

const STEP_LIMIT: usize = 100_000;

fn at_origin(f0: BiPoly, g0: BiPoly) -> Multiplicity {
    let field = *f0.field();
    let zero = field.zero();
    let mut total: u32 = 0;
    let mut steps = 0usize;
    let mut stack = vec![(f0, g0)];
    while let Some((mut f, mut g)) = stack.pop() {
        loop {
            steps += 1;
            // a shared component can keep the recursion going without a
            // zero ever appearing
            if steps > STEP_LIMIT {
                return Multiplicity::Infinite;
            }
            if f.is_zero() || g.is_zero() {
                return Multiplicity::Infinite;
            }
            if !f.eval(&zero, &zero).is_zero() || !g.eval(&zero, &zero).is_zero() {
                break;
            }
            let (rf, rg) = (deg_u(f.at_v_zero()), deg_u(g.at_v_zero()));
            match (rf, rg) {
                (None, None) => return Multiplicity::Infinite,
                (None, Some(_)) => {
                    // F = v F1: I(v, G) + I(F1, G)
                    total += ord_u(g.at_v_zero()).unwrap() as u32;
                    f = f.div_v();
                    stack.push((f.clone(), g.clone()));
                    break;
                }
                (Some(_), None) => {
                    total += ord_u(f.at_v_zero()).unwrap() as u32;
                    g = g.div_v();
                    stack.push((f.clone(), g.clone()));
                    break;
                }
                (Some(r), Some(s)) => {
                    // reduce the one of larger degree in u on v = 0
                    let (lo, hi, r, s) = if r <= s { (&f, &g, r, s) } else { (&g, &f, s, r) };
                    let lf = lo.at_v_zero()[r];
                    let lg = hi.at_v_zero()[s];
                    let reduced = hi
                        .scale_shift_u(&lf, 0)
                        .sub(&lo.scale_shift_u(&lg, s - r));
                    if rf.unwrap() <= rg.unwrap() {
                        g = reduced;
                    } else {
                        f = reduced;
                    }
                }
            }
        }
    }
    Multiplicity::Finite(total)
}
