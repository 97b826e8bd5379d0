use std::fmt;

use super::field::{GaloisField, GfElem};
use super::FfError;

/// Univariate polynomial over a [`GaloisField`], coefficients lowest first
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfPoly {
    field: GaloisField,
    coeffs: Vec<GfElem>,
}

impl fmt::Debug for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<u64> = self.coeffs.iter().map(|c| c.code()).collect();
        write!(f, "GfPoly({codes:?} over {})", self.field)
    }
}

impl GfPoly {
    pub fn new(field: GaloisField, mut coeffs: Vec<GfElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GfPoly { field, coeffs }
    }

    /// From prime-field integers, lowest degree first.
    pub fn from_ints(field: GaloisField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: GaloisField) -> Self {
        GfPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: GaloisField, c: GfElem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: GaloisField) -> Self {
        Self::constant(field, field.one())
    }

    /// `c x^k`.
    pub fn monomial(field: GaloisField, c: GfElem, k: usize) -> Self {
        let mut v = vec![field.zero(); k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    pub fn x(field: GaloisField) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// `x - a`.
    pub fn linear_root(field: GaloisField, a: &GfElem) -> Self {
        Self::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn coeffs(&self) -> &[GfElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GfElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> GfElem {
        self.coeffs.last().copied().unwrap_or_default()
    }

    fn check(&self, o: &GfPoly) -> Result<(), FfError> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(FfError::FieldMismatch)
        }
    }

    pub fn add(&self, o: &GfPoly) -> GfPoly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        GfPoly::new(f, (0..n).map(|i| f.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &GfPoly) -> GfPoly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        GfPoly::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn neg(&self) -> GfPoly {
        GfPoly::zero(self.field).sub(self)
    }

    pub fn mul(&self, o: &GfPoly) -> GfPoly {
        let f = self.field;
        if self.is_zero() || o.is_zero() {
            return GfPoly::zero(f);
        }
        let mut acc = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                acc[i + j] = f.add(&acc[i + j], &f.mul(a, b));
            }
        }
        GfPoly::new(f, acc)
    }

    pub fn scale(&self, c: &GfElem) -> GfPoly {
        let f = self.field;
        GfPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> GfPoly {
        let mut base = self.clone();
        let mut acc = GfPoly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; errors on division by zero.
    pub fn div_rem(&self, d: &GfPoly) -> Result<(GfPoly, GfPoly), FfError> {
        self.check(d)?;
        let f = self.field;
        let dd = d.degree().ok_or(FfError::ZeroPolynomial)?;
        let inv = f.inv(&d.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((GfPoly::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(&r[k], &inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for (i, di) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, di);
                r[k - dd + i] = f.sub(&r[k - dd + i], &t);
            }
        }
        r.truncate(dd);
        Ok((GfPoly::new(f, q), GfPoly::new(f, r)))
    }

    pub fn rem(&self, d: &GfPoly) -> Result<GfPoly, FfError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &GfPoly) -> Result<GfPoly, FfError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(FfError::NotDivisible)
        }
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> GfPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lead()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn derivative(&self) -> GfPoly {
        let f = self.field;
        GfPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &GfElem) -> GfElem {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &GfPoly) -> Result<GfPoly, FfError> {
        let mut base = self.rem(m)?;
        let mut acc = GfPoly::one(self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Applies a coefficient map, typically a field embedding.
    pub fn map_coeffs(&self, target: GaloisField, map: impl Fn(&GfElem) -> GfElem) -> GfPoly {
        GfPoly::new(target, self.coeffs.iter().map(map).collect())
    }
}

/// Monic gcd by Euclid; `gcd(u, 0) = monic(u)`.
pub fn poly_gcd(u: &GfPoly, v: &GfPoly) -> Result<GfPoly, FfError> {
    u.check(v)?;
    if u.is_zero() && v.is_zero() {
        return Err(FfError::BothZero);
    }
    let (mut a, mut b) = (u.clone(), v.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// `gcd(u, u') = 1`. A polynomial with vanishing derivative is a fifth
/// power and counts as not squarefree unless it is constant.
pub fn is_squarefree(u: &GfPoly) -> Result<bool, FfError> {
    if u.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    if u.is_constant() {
        return Ok(true);
    }
    let d = u.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    Ok(poly_gcd(u, &d)?.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> GfPoly {
        GfPoly::from_ints(GaloisField::prime(), c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[4, 0, 1]), &p(&[4, 1])).unwrap(), p(&[4, 1]));
        assert_eq!(poly_gcd(&p(&[2, 0, 2]), &p(&[])).unwrap(), p(&[1, 0, 1]));
        assert_eq!(poly_gcd(&p(&[]), &p(&[])), Err(FfError::BothZero));
    }

    #[test]
    fn squarefree_examples() {
        assert!(!is_squarefree(&p(&[1, 0, 0, 0, 0, 1])).unwrap());
        assert!(is_squarefree(&p(&[0, 2, 0, 0, 0, 1])).unwrap());
        assert!(!is_squarefree(&p(&[0, 0, 1])).unwrap());
        assert_eq!(is_squarefree(&p(&[])), Err(FfError::ZeroPolynomial));
        // x^5 + 1 has derivative 0
        assert!(p(&[1, 0, 0, 0, 0, 1]).derivative().is_zero());
    }

    #[test]
    fn frobenius_identity() {
        assert_eq!(p(&[1, 1]).pow(5), p(&[1, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn division_round_trip() {
        let a = p(&[3, 1, 4, 1, 0, 2, 1]);
        let b = p(&[2, 0, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(a.div_rem(&p(&[])), Err(FfError::ZeroPolynomial));
    }

    #[test]
    fn eval_and_derivative() {
        let f = GaloisField::prime();
        let u = p(&[0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(u.eval(&f.from_int(2)), f.from_int(68));
        assert_eq!(u.derivative(), p(&[0, 2, 0, 0, 0, 1]));
    }
}
