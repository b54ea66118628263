//! q-integers, Pochhammer symbols, Bernoulli numbers and Dirichlet characters.

mod arith;
mod bernoulli;
mod character;
mod qparam;

pub use arith::{binomial, complex_binomial, pochhammer};
pub use bernoulli::{
    bernoulli, bernoulli_exact, bernoulli_poly, gen_bernoulli, periodic_bernoulli, BernoulliCache,
    DEFAULT_BERNOULLI_MAX,
};
pub use character::{g_chi, g_chi_with_threshold, DirichletCharacter, G_CHI_POLE_THRESHOLD};
pub use qparam::{qint, qint_real, QParam};
