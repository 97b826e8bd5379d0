use std::fmt;

use rand::Rng;

use super::moduli::default_modulus;
use super::FfError;

/// Largest extension degree over F5 an element can carry.
pub const MAX_DEGREE: usize = 24;

/// `F_{5^n} = F5[t] / (m(t))` for a monic irreducible `m` of degree `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisField {
    degree: u8,
    modulus: [u8; MAX_DEGREE + 1],
}

/// Residue class of a polynomial in `t` of degree `< n`, coefficients
/// in `0..5`, lowest first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GfElem {
    c: [u8; MAX_DEGREE],
}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfElem({})", self.code())
    }
}

impl GfElem {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Coefficients of `t^0, t^1, ...` up to `MAX_DEGREE`.
    pub fn coeffs(&self) -> &[u8; MAX_DEGREE] {
        &self.c
    }

    /// `Σ c_i 5^i`.
    pub fn code(&self) -> u64 {
        self.c.iter().rev().fold(0u64, |acc, &d| acc * 5 + d as u64)
    }
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(5^{}; mod={:?})", self.degree, self.modulus())
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "5")
        } else {
            write!(f, "5^{}", self.degree)
        }
    }
}

impl GaloisField {
    /// The prime field.
    pub fn prime() -> Self {
        Self::default_of_degree(1).expect("degree 1 is supported")
    }

    /// `F_{5^n}` with the shipped modulus for `n`.
    pub fn default_of_degree(n: usize) -> Result<Self, FfError> {
        let m = default_modulus(n).ok_or(FfError::DegreeTooLarge(n))?;
        Self::unchecked(m)
    }

    /// `F_{5^n}` with a caller-chosen modulus, coefficients lowest first.
    /// The modulus must be monic and irreducible.
    pub fn with_modulus(modulus: &[i64]) -> Result<Self, FfError> {
        let m: Vec<u8> = modulus.iter().map(|c| c.rem_euclid(5) as u8).collect();
        let m = trim(m);
        if m.len() < 2 {
            return Err(FfError::NotIrreducible(modulus.to_vec()));
        }
        if *m.last().unwrap() != 1 {
            return Err(FfError::NotMonic(modulus.to_vec()));
        }
        if !is_irreducible_f5(&m) {
            return Err(FfError::NotIrreducible(modulus.to_vec()));
        }
        Self::unchecked(&m)
    }

    fn unchecked(m: &[u8]) -> Result<Self, FfError> {
        let n = m.len() - 1;
        if n > MAX_DEGREE {
            return Err(FfError::DegreeTooLarge(n));
        }
        let mut modulus = [0u8; MAX_DEGREE + 1];
        modulus[..m.len()].copy_from_slice(m);
        Ok(GaloisField {
            degree: n as u8,
            modulus,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// `5^n`.
    pub fn order(&self) -> u128 {
        5u128.pow(self.degree as u32)
    }

    pub fn modulus(&self) -> Vec<u8> {
        self.modulus[..=self.degree()].to_vec()
    }

    pub fn zero(&self) -> GfElem {
        GfElem::default()
    }

    pub fn one(&self) -> GfElem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> GfElem {
        let mut e = GfElem::default();
        e.c[0] = v.rem_euclid(5) as u8;
        e
    }

    /// The class of `t`.
    pub fn generator(&self) -> GfElem {
        self.from_coeffs(&[0, 1])
    }

    /// Reduces an arbitrary coefficient vector modulo the field modulus.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> GfElem {
        let mut acc: Vec<u8> = coeffs.iter().map(|c| c.rem_euclid(5) as u8).collect();
        self.reduce_into(&mut acc)
    }

    /// Inverse of [`GfElem::code`]; `None` if `code >= 5^n`.
    pub fn from_code(&self, mut code: u64) -> Option<GfElem> {
        if code as u128 >= self.order() {
            return None;
        }
        let mut e = GfElem::default();
        for i in 0..self.degree() {
            e.c[i] = (code % 5) as u8;
            code /= 5;
        }
        Some(e)
    }

    pub fn contains(&self, e: &GfElem) -> bool {
        e.c[self.degree()..].iter().all(|&x| x == 0)
    }

    /// Whether `e` lies in the prime field.
    pub fn is_prime_field_element(&self, e: &GfElem) -> bool {
        e.c[1..].iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut r = GfElem::default();
        for i in 0..self.degree() {
            r.c[i] = (a.c[i] + b.c[i]) % 5;
        }
        r
    }

    pub fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut r = GfElem::default();
        for i in 0..self.degree() {
            r.c[i] = (a.c[i] + 5 - b.c[i]) % 5;
        }
        r
    }

    pub fn neg(&self, a: &GfElem) -> GfElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let n = self.degree();
        if n == 1 {
            return self.from_int((a.c[0] * b.c[0]) as i64);
        }
        let mut acc = vec![0u8; 2 * n - 1];
        for i in 0..n {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc[i + j] = (acc[i + j] + a.c[i] * b.c[j]) % 5;
            }
        }
        self.reduce_into(&mut acc)
    }

    fn reduce_into(&self, acc: &mut Vec<u8>) -> GfElem {
        let n = self.degree();
        for k in (n..acc.len()).rev() {
            let top = acc[k];
            if top == 0 {
                continue;
            }
            acc[k] = 0;
            // t^k = -Σ m_i t^(k-n+i)
            for i in 0..n {
                let d = k - n + i;
                acc[d] = (acc[d] + 5 * 5 - top * self.modulus[i]) % 5;
            }
        }
        let mut e = GfElem::default();
        for (i, &v) in acc.iter().take(n).enumerate() {
            e.c[i] = v % 5;
        }
        e
    }

    pub fn pow(&self, a: &GfElem, mut e: u128) -> GfElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &GfElem) -> Result<GfElem, FfError> {
        if a.is_zero() {
            return Err(FfError::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &GfElem, b: &GfElem) -> Result<GfElem, FfError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^5`.
    pub fn frobenius(&self, a: &GfElem) -> GfElem {
        self.pow(a, 5)
    }

    /// The unique `d` with `d^5 = a`, namely `a^(5^(n-1))`.
    pub fn fifth_root(&self, a: &GfElem) -> GfElem {
        self.pow(a, 5u128.pow(self.degree as u32 - 1))
    }

    /// All elements in code order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.order() as u64).map(move |c| self.from_code(c).unwrap())
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GfElem {
        let mut e = GfElem::default();
        for i in 0..self.degree() {
            e.c[i] = rng.gen_range(0..5);
        }
        e
    }
}

fn trim(mut v: Vec<u8>) -> Vec<u8> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

// Plain F5[t] helpers for the irreducibility test, coefficients lowest first.

fn f5_rem(a: &[u8], m: &[u8]) -> Vec<u8> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv_lead = [0, 1, 3, 2, 4][m[dm] as usize];
    while r.len() > dm {
        let top = r.pop().unwrap();
        if top == 0 {
            continue;
        }
        let f = (top * inv_lead) % 5;
        let shift = r.len() - dm;
        for i in 0..dm {
            r[shift + i] = (r[shift + i] + 25 - f * m[i]) % 5;
        }
    }
    trim(r)
}

fn f5_mulmod(a: &[u8], b: &[u8], m: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x * y) % 5;
        }
    }
    f5_rem(&acc, m)
}

/// `t^(5^k) mod m`.
fn f5_frobenius_power(m: &[u8], k: usize) -> Vec<u8> {
    let mut r = f5_rem(&[0, 1], m);
    for _ in 0..k {
        let mut acc = vec![1u8];
        for _ in 0..5 {
            acc = f5_mulmod(&acc, &r, m);
        }
        r = acc;
    }
    r
}

fn f5_gcd(a: &[u8], b: &[u8]) -> Vec<u8> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = f5_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn f5_sub(a: &[u8], b: &[u8]) -> Vec<u8> {
    let n = a.len().max(b.len());
    let r = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + 5 - b.get(i).copied().unwrap_or(0)) % 5)
        .collect();
    trim(r)
}

/// Rabin's test: `m` of degree `n` is irreducible iff `t^(5^n) = t mod m`
/// and `gcd(t^(5^(n/r)) - t, m) = 1` for each prime `r | n`.
pub fn is_irreducible_f5(m: &[u8]) -> bool {
    let m = trim(m.to_vec());
    if m.len() < 2 {
        return false;
    }
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    let t = f5_rem(&[0, 1], &m);
    if f5_frobenius_power(&m, n) != t {
        return false;
    }
    for r in prime_divisors(n) {
        let h = f5_sub(&f5_frobenius_power(&m, n / r), &[0, 1]);
        if f5_gcd(&h, &m).len() != 1 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
