//! Evaluators of the q-analogue zeta family.
//!
//! Three routes are available: the defining series ([`f_direct`]), the binomial
//! expansion giving the meromorphic continuation ([`zeta_expansion`]), and the
//! Euler-Maclaurin formula with a certified remainder ([`zeta_em`]). [`evaluate`]
//! dispatches on [`ZetaOptions::strategy`].

mod direct;
mod em;
mod expansion;
mod qgamma;
mod special;
mod types;

use num_complex::Complex;

pub use direct::f_direct;
pub use em::{a_coeffs, auto_params, remainder_bound, zeta_em, ACoeffTable};
pub use expansion::{zeta_expansion, EXPANSION_POLE_RADIUS};
pub use qgamma::{l_at_one_via_qgamma, q_digamma, q_gamma};
pub use special::{crystal_value, in_crystal_domain, special_value_neg_int, tsumura_zeta};
pub use types::{EvalOutput, EvalParams, SeriesSpec, Strategy, ZetaOptions};

use crate::error::{Error, Result};
use crate::qcore::QParam;
use crate::scalar::{cplx, int, lit, real, Real};

/// Value with its partial derivatives in `s` and `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet<T: Real> {
    pub value: Complex<T>,
    pub ds: Complex<T>,
    pub dq: Complex<T>,
}

impl<T: Real> Jet<T> {
    pub fn zero() -> Self {
        let z = real(T::zero());
        Self { value: z, ds: z, dq: z }
    }
}

/// Direct summation is tried first under `Auto` only within this many terms.
const AUTO_DIRECT_BUDGET: usize = 200_000;
/// Radius of the contour used for numeric `d/ds` on the Euler-Maclaurin route.
const CAUCHY_RADIUS: f64 = 1e-3;
const CAUCHY_POINTS: usize = 8;

/// `Re(t)` of the defining series.
fn re_t<T: Real>(spec: &SeriesSpec<T>) -> T {
    match spec {
        SeriesSpec::FChi { t, .. } | SeriesSpec::GHurwitz { t, .. } => t.re,
        SeriesSpec::LNu { s, nu, .. } | SeriesSpec::ZetaNu { s, nu } => s.re - int::<T>(*nu as i64),
        SeriesSpec::LMu { mu, .. } | SeriesSpec::Tsumura { mu, .. } => int(*mu as i64),
    }
}

/// `nu` when the spec is `zeta_q^{(nu)}` with the trivial character.
fn em_nu<T: Real>(spec: &SeriesSpec<T>) -> Option<u32> {
    match spec {
        SeriesSpec::ZetaNu { nu, .. } => Some(*nu),
        SeriesSpec::LNu { nu, chi, .. } if chi.is_trivial() => Some(*nu),
        _ => None,
    }
}

fn em_eval<T: Real>(
    s: Complex<T>,
    nu: u32,
    q: &QParam<T>,
    opts: &ZetaOptions<T>,
    want_ds: bool,
) -> Result<(EvalOutput<T>, Option<Complex<T>>)> {
    let hinted = opts.em_params.and_then(|p| {
        let out = zeta_em(s, nu, q, &p).ok()?;
        (out.bound? < opts.em_target).then_some((p, out))
    });
    let (params, out) = match hinted {
        Some(found) => found,
        None => {
            let p = auto_params(s, nu, q, opts.em_target)?;
            (p, zeta_em(s, nu, q, &p)?)
        }
    };
    if !want_ds {
        return Ok((out, None));
    }
    // one extra depth step keeps the contour inside Re(s) > nu + 1 - M
    let p = EvalParams { depth: params.depth + 1, ..params };
    let h = lit::<T>(CAUCHY_RADIUS);
    let mut acc = real(T::zero());
    for k in 0..CAUCHY_POINTS {
        let theta = T::PI() * lit::<T>(2.0) * int::<T>(k as i64) / int::<T>(CAUCHY_POINTS as i64);
        let omega = cplx(theta.cos(), theta.sin());
        let v = zeta_em(s + omega * h, nu, q, &p)?.value;
        acc = acc + v / omega;
    }
    Ok((out, Some(acc / (h * int::<T>(CAUCHY_POINTS as i64)))))
}

fn route<T: Real>(
    spec: &SeriesSpec<T>,
    q: &QParam<T>,
    opts: &ZetaOptions<T>,
    want_ds: bool,
) -> Result<(EvalOutput<T>, Option<Complex<T>>)> {
    spec.validate()?;
    let tsumura = matches!(spec, SeriesSpec::Tsumura { .. });
    let direct = |budget: usize| -> Result<(EvalOutput<T>, Option<Complex<T>>)> {
        if tsumura {
            return Ok((f_direct(spec, q, opts.tol, budget)?, None));
        }
        let (jet, out) = direct::direct_jet(spec, q, opts.tol, budget)?;
        Ok((out, Some(jet.ds)))
    };
    let expand = || -> Result<(EvalOutput<T>, Option<Complex<T>>)> {
        if tsumura {
            return Ok((zeta_expansion(spec, q, opts.tol, opts.max_terms)?, None));
        }
        let (jet, out) = expansion::expansion_jet(spec, q, opts.tol, opts.max_terms)?;
        Ok((out, Some(jet.ds)))
    };
    let em = || -> Result<(EvalOutput<T>, Option<Complex<T>>)> {
        match em_nu(spec) {
            Some(nu) => em_eval(spec.s(), nu, q, opts, want_ds),
            None => Err(Error::ParamError("the Euler-Maclaurin route covers the trivial character only".into())),
        }
    };
    match opts.strategy {
        Strategy::Direct => direct(opts.max_terms),
        Strategy::Expansion => expand(),
        Strategy::EulerMaclaurin => em(),
        Strategy::Auto => {
            if re_t(spec) > T::zero() {
                match direct(AUTO_DIRECT_BUDGET.min(opts.max_terms)) {
                    Err(Error::BudgetExceeded(_)) => {}
                    other => return other,
                }
            }
            let expanded = expand();
            let expansion_error = match &expanded {
                Ok((out, _)) => out.rounding_estimate(),
                Err(Error::BudgetExceeded(_)) => T::infinity(),
                Err(_) => return expanded,
            };
            if expansion_error <= opts.cancellation_limit || em_nu(spec).is_none() {
                return expanded;
            }
            match em() {
                Ok((out, ds)) => {
                    let em_error = out.bound.unwrap_or(T::infinity()) + out.rounding_estimate();
                    if em_error < expansion_error {
                        Ok((out, ds))
                    } else {
                        expanded
                    }
                }
                Err(e) => expanded.or(Err(e)),
            }
        }
    }
}

/// Evaluates `spec` at `q` by the route chosen in `opts`.
pub fn evaluate<T: Real>(spec: &SeriesSpec<T>, q: &QParam<T>, opts: &ZetaOptions<T>) -> Result<EvalOutput<T>> {
    route(spec, q, opts, false).map(|(out, _)| out)
}

/// Evaluates `spec` together with `d/ds`.
pub fn evaluate_with_derivative<T: Real>(
    spec: &SeriesSpec<T>,
    q: &QParam<T>,
    opts: &ZetaOptions<T>,
) -> Result<(EvalOutput<T>, Complex<T>)> {
    let (out, ds) = route(spec, q, opts, true)?;
    ds.map(|d| (out, d)).ok_or_else(|| Error::ParamError("no derivative for this series kind".into()))
}

/// `zeta_q^{(nu)}(s)` with the default routing.
pub fn zeta_nu<T: Real>(s: Complex<T>, nu: u32, q: &QParam<T>, opts: &ZetaOptions<T>) -> Result<EvalOutput<T>> {
    evaluate(&SeriesSpec::ZetaNu { s, nu }, q, opts)
}

/// `d/ds` of the series by term-wise differentiation of the binomial expansion.
pub fn dzeta_ds<T: Real>(spec: &SeriesSpec<T>, q: &QParam<T>, tol: T) -> Result<Complex<T>> {
    let max_terms = ZetaOptions::<T>::default().max_terms;
    Ok(expansion::expansion_jet(spec, q, tol, max_terms)?.0.ds)
}

/// `d/dq` of the series by term-wise differentiation of the binomial expansion.
pub fn dzeta_dq<T: Real>(spec: &SeriesSpec<T>, q: &QParam<T>, tol: T) -> Result<Complex<T>> {
    let max_terms = ZetaOptions::<T>::default().max_terms;
    Ok(expansion::expansion_jet(spec, q, tol, max_terms)?.0.dq)
}
