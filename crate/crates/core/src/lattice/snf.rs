//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::linalg::{identity, ZMat};

/// `left * input * right == diagonal`, with `left` and `right` unimodular and
/// the diagonal entries nonnegative, each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: ZMat,
    pub left: ZMat,
    pub right: ZMat,
}

impl SmithForm {
    /// The diagonal entries `d_1 | d_2 | ...`, including zeros.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diagonal.len().min(self.diagonal.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.diagonal[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(m: &ZMat) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // move the smallest nonzero entry of the trailing block to (t, t)
            let Some((pi, pj)) = smallest_entry(&a, t) else { break };
            swap_rows(&mut a, &mut u, t, pi);
            swap_cols(&mut a, &mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&a[i][t], &a[t][t]);
                add_row(&mut a, &mut u, i, t, &-q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&a[t][j], &a[t][t]);
                add_col(&mut a, &mut v, j, t, &-q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t and continue
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match offending {
                Some(i) => add_row(&mut a, &mut u, t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SmithForm {
        diagonal: a,
        left: u,
        right: v,
    }
}

fn smallest_entry(a: &ZMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `q` with `|x - q p| <= |p| / 2`.
fn nearest_quotient(x: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(p);
    let r2: BigInt = &r * 2;
    // r has the sign of p
    if r2.abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

fn swap_rows(a: &mut ZMat, u: &mut ZMat, i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        u.swap(i, j);
    }
}

fn swap_cols(a: &mut ZMat, v: &mut ZMat, i: usize, j: usize) {
    if i != j {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        for r in v.iter_mut() {
            r.swap(i, j);
        }
    }
}

/// row `dst` += `f` * row `src`
fn add_row(a: &mut ZMat, u: &mut ZMat, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for m in [a, u] {
        let s = m[src].clone();
        for (x, y) in m[dst].iter_mut().zip(&s) {
            *x += f * y;
        }
    }
}

/// column `dst` += `f` * column `src`
fn add_col(a: &mut ZMat, v: &mut ZMat, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for m in [a, v] {
        for r in m.iter_mut() {
            let s = r[src].clone();
            r[dst] += f * s;
        }
    }
}
