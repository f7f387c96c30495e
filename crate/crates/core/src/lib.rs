//! Exact arithmetic toolkit for deciding when sets of power sums or complete
//! symmetric polynomials form regular sequences.
//!
//! * [`arith`]: big integers, rationals, p-adic valuations, carries.
//! * [`poly`]: multivariate, univariate and cyclotomic polynomial arithmetic.
//! * [`symfunc`]: symmetric polynomials, Newton identities and the
//!   coefficient sequences `a_m`, `f_m`, `c_d`, Gaussian binomials.
//! * [`regseq`]: filters, closed forms, the rank test and verdicts.
//! * [`appendix`]: 3-adic verification that `a_{2h}` never vanishes for
//!   `h != 3`.

pub mod appendix;
pub mod arith;
pub mod error;
pub mod poly;
pub mod regseq;
pub mod symfunc;

pub use error::{Error, Result};
