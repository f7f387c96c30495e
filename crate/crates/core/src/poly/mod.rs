//! Exact polynomial arithmetic over the rationals.

pub mod cyclotomic;
pub mod multi;
pub mod uni;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicElt, CyclotomicField};
pub use multi::{monomials_of_degree, mp_arith, mp_eval, Exponents, MpOp, MultiPoly};
pub use uni::{eisenstein_at, up_divide_exact, up_gcd, up_shift, UniPoly};
