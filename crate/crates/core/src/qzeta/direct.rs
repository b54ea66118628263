//! Direct summation of the defining series, valid for `Re(t) > 0`.

use num_complex::Complex;

use super::types::{EvalOutput, SeriesSpec, Strategy};
use super::Jet;
use crate::error::{Error, Result};
use crate::qcore::{DirichletCharacter, QParam};
use crate::scalar::{int, real, Real};

/// The generic series `sum_x w(x) q^{x t} [x]_q^{-s}` over `x = x0, x0+1, ...`.
pub(crate) struct DirectSeries<'a, T: Real> {
    pub s: Complex<T>,
    pub t: Complex<T>,
    /// `dt/ds`: 1 when `t = s - nu`, 0 for a fixed `t`.
    pub dt_ds: T,
    pub chi: Option<&'a DirichletCharacter<T>>,
    /// Hurwitz shift `a`; the sum then runs over `x = n + a`, `n >= 0`.
    pub shift: Option<T>,
}

pub(crate) struct DirectResult<T: Real> {
    pub jet: Jet<T>,
    pub terms: usize,
    pub magnitude: T,
}

impl<T: Real> DirectSeries<'_, T> {
    pub fn from_spec(spec: &SeriesSpec<T>) -> Result<DirectSeries<'_, T>> {
        let one = T::one();
        Ok(match spec {
            SeriesSpec::FChi { s, t, chi } => {
                DirectSeries { s: *s, t: *t, dt_ds: T::zero(), chi: Some(chi), shift: None }
            }
            SeriesSpec::GHurwitz { s, t, a } => {
                DirectSeries { s: *s, t: *t, dt_ds: T::zero(), chi: None, shift: Some(*a) }
            }
            SeriesSpec::LNu { s, nu, chi } => {
                DirectSeries { s: *s, t: *s - int::<T>(*nu as i64), dt_ds: one, chi: Some(chi), shift: None }
            }
            SeriesSpec::ZetaNu { s, nu } => {
                DirectSeries { s: *s, t: *s - int::<T>(*nu as i64), dt_ds: one, chi: None, shift: None }
            }
            SeriesSpec::LMu { s, mu, chi } => {
                DirectSeries { s: *s, t: real(int(*mu as i64)), dt_ds: T::zero(), chi: Some(chi), shift: None }
            }
            SeriesSpec::Tsumura { s, mu, a } => {
                DirectSeries { s: *s, t: real(int(*mu as i64)), dt_ds: T::zero(), chi: None, shift: Some(*a) }
            }
        })
    }

    /// Sums until the geometric tail bound
    /// `K q^{x tau} / (1 - q^tau)`, `tau = Re t`, `K = sup_x [x]_q^{-Re s}`,
    /// drops below `tol`.
    pub fn sum(&self, q: &QParam<T>, tol: T, max_terms: usize) -> Result<DirectResult<T>> {
        let tau = self.t.re;
        if !(tau > T::zero()) {
            return Err(Error::NotConvergent(format!("Re(t) = {tau} <= 0")));
        }
        let lq = q.log_q();
        let sigma = self.s.re;
        let x0 = self.shift.unwrap_or(T::one());
        let ln_qint = |x: T| (-(x * lq).exp_m1()).ln() - (-lq.exp_m1()).ln();
        // sup of [x]^{-sigma} over x >= x0: [x] increases from [x0] to 1/(1-q)
        let k_sup = if sigma >= T::zero() { (-sigma * ln_qint(x0)).exp() } else { (sigma * q.log_one_minus_q()).exp() };
        let ratio = (tau * lq).exp();
        let tail_at = |x: T| k_sup * (x * tau * lq).exp() / (T::one() - ratio);

        // x beyond which the tail bound is below tol
        let needed = ((tol * (T::one() - ratio) / k_sup).ln() / (tau * lq) - x0).max(T::zero());
        if needed.to_f64().is_none_or(|n| n > max_terms as f64) {
            return Err(Error::BudgetExceeded(max_terms));
        }

        let inv_one_minus_q = (T::one() - q.q()).recip();
        let mut jet = Jet::zero();
        let mut magnitude = T::zero();
        let mut terms = 0usize;
        let mut n: u64 = if self.shift.is_some() { 0 } else { 1 };
        loop {
            let x = match self.shift {
                Some(a) => int::<T>(n as i64) + a,
                None => int::<T>(n as i64),
            };
            let weight = match self.chi {
                Some(chi) => chi.value(n),
                None => real(T::one()),
            };
            if weight.norm_sqr() > T::zero() {
                let lnx = ln_qint(x);
                let term = weight * (self.t * (x * lq) - self.s * lnx).exp();
                let d_lnx_dq = -x * ((x - T::one()) * lq).exp() / (-(x * lq).exp_m1()) + inv_one_minus_q;
                jet.value = jet.value + term;
                jet.ds = jet.ds + term * (real(x * lq * self.dt_ds) - lnx);
                jet.dq = jet.dq + term * (self.t * (x / q.q()) - self.s * d_lnx_dq);
                magnitude = magnitude + term.norm();
            }
            terms += 1;
            n += 1;
            if tail_at(x + T::one()) < tol {
                break;
            }
            if terms >= max_terms {
                return Err(Error::BudgetExceeded(max_terms));
            }
        }
        Ok(DirectResult { jet, terms, magnitude })
    }
}

/// Direct series evaluation of any member of the family with `Re(t) > 0`.
pub fn f_direct<T: Real>(spec: &SeriesSpec<T>, q: &QParam<T>, tol: T, max_terms: usize) -> Result<EvalOutput<T>> {
    spec.validate()?;
    let series = DirectSeries::from_spec(spec)?;
    let r = series.sum(q, tol, max_terms)?;
    let mut value = r.jet.value;
    if let SeriesSpec::Tsumura { s, mu, .. } = spec {
        value = value + super::special::tsumura_correction(*s, *mu, q)?;
    }
    Ok(EvalOutput {
        value,
        bound: None,
        strategy: Strategy::Direct,
        terms_used: r.terms,
        magnitude: r.magnitude,
        params: None,
    })
}

pub(crate) fn direct_jet<T: Real>(
    spec: &SeriesSpec<T>,
    q: &QParam<T>,
    tol: T,
    max_terms: usize,
) -> Result<(Jet<T>, EvalOutput<T>)> {
    spec.validate()?;
    if matches!(spec, SeriesSpec::Tsumura { .. }) {
        return Err(Error::ParamError("derivatives of the Tsumura variant are not provided".into()));
    }
    let r = DirectSeries::from_spec(spec)?.sum(q, tol, max_terms)?;
    let out = EvalOutput {
        value: r.jet.value,
        bound: None,
        strategy: Strategy::Direct,
        terms_used: r.terms,
        magnitude: r.magnitude,
        params: None,
    };
    Ok((r.jet, out))
}
