//! q-analogues of the Riemann, Hurwitz and Dirichlet zeta functions.
//!
//! [`qzeta`] evaluates the family by direct summation, by a binomial expansion
//! valid on the whole plane, or by an Euler-Maclaurin formula with a certified
//! remainder. [`zeros`] follows zeros as `q` decreases from 1 toward 0, and
//! [`reference`](mod@reference) supplies the classical functions the family tends to as `q -> 1`.
//!
//! Everything is generic over the real scalar; the `*64` aliases fix it to `f64`.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gamma;
pub mod incbeta;
pub mod qcore;
pub mod quadrature;
pub mod qzeta;
pub mod reference;
pub mod scalar;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type QParam64 = qcore::QParam<f64>;
pub type DirichletCharacter64 = qcore::DirichletCharacter<f64>;
pub type SeriesSpec64 = qzeta::SeriesSpec<f64>;
pub type EvalParams64 = qzeta::EvalParams<f64>;
pub type EvalOutput64 = qzeta::EvalOutput<f64>;
pub type ZetaOptions64 = qzeta::ZetaOptions<f64>;
pub type Zero64 = zeros::Zero<f64>;
pub type Trajectory64 = zeros::Trajectory<f64>;
pub type IncBetaRequest64 = incbeta::IncBetaRequest<f64>;
