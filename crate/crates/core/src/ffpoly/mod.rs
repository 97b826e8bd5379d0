//! Arithmetic in `F_{5^n}` and univariate polynomials over it: gcd,
//! squarefreeness, fifth roots and root finding in extensions.

mod field;
mod literal;
mod moduli;
mod poly;
mod roots;

use thiserror::Error;

pub use field::{is_irreducible_f5, GaloisField, GfElem, MAX_DEGREE};
pub use literal::{field_literal, parse_elem, parse_field, parse_poly, poly_literal};
pub use poly::{is_squarefree, poly_gcd, GfPoly};
pub use roots::{
    distinct_degree, roots_in_extension, roots_in_extension_seeded, squarefree_decomposition,
    Extension, Root, EXHAUSTIVE_LIMIT,
};

/// Default bound on the degree of extensions searched for roots.
pub const DEFAULT_MAX_EXT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("modulus {0:?} is not irreducible over F5")]
    NotIrreducible(Vec<i64>),
    #[error("modulus {0:?} is not monic")]
    NotMonic(Vec<i64>),
    #[error("extension degree {0} is not supported")]
    DegreeTooLarge(usize),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("division is not exact")]
    NotDivisible,
    #[error("factors of total degree {unsplit_degree} need extensions beyond degree {max_degree}; {} roots found", found.len())]
    SplittingFieldTooLarge {
        max_degree: usize,
        unsplit_degree: usize,
        found: Vec<Root>,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

/// `d` with `d^5 = c`.
pub fn fifth_root(field: &GaloisField, c: &GfElem) -> GfElem {
    field.fifth_root(c)
}
