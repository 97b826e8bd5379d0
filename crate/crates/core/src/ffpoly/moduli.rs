//! Shipped moduli: for each degree `n`, the monic irreducible of degree `n`
//! over F5 with the least code `Σ m_i 5^i` (i < n).

use std::sync::OnceLock;

use super::field::{is_irreducible_f5, MAX_DEGREE};

const TABLE: [&[u8]; MAX_DEGREE] = [
    &[0, 1],
    &[2, 0, 1],
    &[1, 1, 0, 1],
    &[2, 0, 0, 0, 1],
    &[1, 4, 0, 0, 0, 1],
    &[2, 1, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 1],
    &[2, 0, 0, 0, 0, 0, 0, 0, 1],
    &[3, 2, 1, 0, 0, 0, 0, 0, 0, 1],
    &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[2, 3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[2, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[4, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[2, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 4, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

/// The shipped modulus of degree `n`, verified irreducible on first use.
pub(crate) fn default_modulus(n: usize) -> Option<&'static [u8]> {
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| {
        for m in TABLE {
            assert!(is_irreducible_f5(m), "shipped modulus {m:?} is reducible");
        }
    });
    n.checked_sub(1).and_then(|i| TABLE.get(i).copied())
}
