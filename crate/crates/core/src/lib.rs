//! Exact lattice and finite-field computations around sextic plane curves
//! `y^5 = f(x)` in characteristic 5 and the even overlattices of
//! `5A4(-1) ⊕ <h, l>`.

pub mod curve;
pub mod discform;
pub mod ffpoly;
pub mod lattice;
pub mod linalg;
