use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qcore::DirichletCharacter;
use crate::scalar::{lit, Real};

/// Which member of the q-zeta family is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesSpec<T: Real> {
    /// `f_q(s, t, chi) = sum_{n>=1} chi(n) q^{nt} [n]_q^{-s}`.
    FChi { s: Complex<T>, t: Complex<T>, chi: DirichletCharacter<T> },
    /// `g_q(s, t, a) = sum_{n>=0} q^{(n+a)t} [n+a]_q^{-s}`, `0 < a <= 1`.
    GHurwitz { s: Complex<T>, t: Complex<T>, a: T },
    /// `L_q^{(nu)}(s, chi) = f_q(s, s - nu, chi)`.
    LNu { s: Complex<T>, nu: u32, chi: DirichletCharacter<T> },
    /// `zeta_q^{(nu)}(s) = f_q(s, s - nu, 1)`.
    ZetaNu { s: Complex<T>, nu: u32 },
    /// `L_q^{mu}(s, chi) = f_q(s, mu, chi)`, entire in `s`.
    LMu { s: Complex<T>, mu: u32, chi: DirichletCharacter<T> },
    /// The Tsumura-type variant `zeta^mu_q(s, a)`.
    Tsumura { s: Complex<T>, mu: u32, a: T },
}

impl<T: Real> SeriesSpec<T> {
    pub fn s(&self) -> Complex<T> {
        match self {
            SeriesSpec::FChi { s, .. }
            | SeriesSpec::GHurwitz { s, .. }
            | SeriesSpec::LNu { s, .. }
            | SeriesSpec::ZetaNu { s, .. }
            | SeriesSpec::LMu { s, .. }
            | SeriesSpec::Tsumura { s, .. } => *s,
        }
    }

    /// Same series at a different `s`.
    pub fn with_s(&self, s_new: Complex<T>) -> Self {
        let mut out = self.clone();
        match &mut out {
            SeriesSpec::FChi { s, .. }
            | SeriesSpec::GHurwitz { s, .. }
            | SeriesSpec::LNu { s, .. }
            | SeriesSpec::ZetaNu { s, .. }
            | SeriesSpec::LMu { s, .. }
            | SeriesSpec::Tsumura { s, .. } => *s = s_new,
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if let SeriesSpec::GHurwitz { a, .. } | SeriesSpec::Tsumura { a, .. } = self {
            if !(*a > T::zero() && *a <= T::one()) {
                return Err(Error::ParamError(format!("Hurwitz shift a = {a} must lie in (0, 1]")));
            }
        }
        match self {
            SeriesSpec::LNu { nu: 0, .. } | SeriesSpec::ZetaNu { nu: 0, .. } => {
                Err(Error::ParamError("nu must be at least 1".into()))
            }
            SeriesSpec::LMu { mu: 0, .. } | SeriesSpec::Tsumura { mu: 0, .. } => {
                Err(Error::ParamError("mu must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Evaluation strategy requested by a caller, or reported in an [`EvalOutput`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Pick per point: direct series where it converges quickly, the binomial
    /// expansion elsewhere, and the Euler-Maclaurin formula when the expansion
    /// loses too many digits to cancellation.
    Auto,
    Direct,
    Expansion,
    EulerMaclaurin,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Direct => "direct",
            Strategy::Expansion => "expansion",
            Strategy::EulerMaclaurin => "euler-maclaurin",
        }
    }
}

/// Parameters of the Euler-Maclaurin formula with certified remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalParams<T: Real> {
    /// Head-sum cutoff `N >= 1`.
    pub head: usize,
    /// Depth `M >= 2` of the incomplete-beta recursion.
    pub depth: usize,
    /// Bernoulli order `n >= 1`.
    pub order: usize,
    /// Fourier window `l0 <= l <= l1`, `l != 0`.
    pub l0: i64,
    pub l1: i64,
    /// Requested bound on the remainder.
    pub target: T,
}

impl<T: Real> EvalParams<T> {
    pub fn validate(&self) -> Result<()> {
        if self.head < 1 || self.depth < 2 || self.order < 1 || self.l0 >= self.l1 || !(self.target > T::zero()) {
            return Err(Error::ParamError(format!(
                "need N >= 1, M >= 2, n >= 1, l0 < l1, target > 0; got N={}, M={}, n={}, l0={}, l1={}",
                self.head, self.depth, self.order, self.l0, self.l1
            )));
        }
        Ok(())
    }
}

/// A value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOutput<T: Real> {
    pub value: Complex<T>,
    /// Certified bound on the truncation remainder (Euler-Maclaurin only).
    pub bound: Option<T>,
    pub strategy: Strategy,
    pub terms_used: usize,
    /// Sum of the moduli of the summed terms; `magnitude * eps` estimates the
    /// rounding error lost to cancellation.
    pub magnitude: T,
    /// Parameters of the Euler-Maclaurin route, when used.
    pub params: Option<EvalParams<T>>,
}

impl<T: Real> EvalOutput<T> {
    /// Rough rounding-error estimate from the cancellation magnitude.
    pub fn rounding_estimate(&self) -> T {
        self.magnitude * T::epsilon() * lit(16.0)
    }
}

/// Evaluation options shared by the routing layer and the zero finders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaOptions<T: Real> {
    pub strategy: Strategy,
    /// Absolute truncation tolerance for the series routes.
    pub tol: T,
    pub max_terms: usize,
    /// Remainder target used when `auto_params` is invoked.
    pub em_target: T,
    /// Euler-Maclaurin parameters tried first; `auto_params` runs when their
    /// bound misses `em_target`.
    pub em_params: Option<EvalParams<T>>,
    /// `Auto` falls back to Euler-Maclaurin when the expansion's rounding
    /// estimate exceeds this.
    pub cancellation_limit: T,
}

impl<T: Real> Default for ZetaOptions<T> {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            tol: lit(1e-13),
            max_terms: 2_000_000,
            em_target: lit(1e-11),
            em_params: None,
            cancellation_limit: lit(1e-10),
        }
    }
}

impl<T: Real> ZetaOptions<T> {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }
}
