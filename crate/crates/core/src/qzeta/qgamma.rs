//! Jackson q-gamma function, its logarithmic derivative, and `L_q^{(nu)}(1, chi)` through it.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qcore::{g_chi, gen_bernoulli, DirichletCharacter, QParam};
use crate::scalar::{int, lit, real, Real};

const PRODUCT_POLE_RADIUS: f64 = 1e-12;
const MAX_FACTORS: usize = 50_000_000;

/// `Gamma_q(s) = (q;q)_inf / (q^s;q)_inf * (1-q)^{1-s}`.
///
/// The log-products are truncated once `2 (q + |q^s|) q^J / (1-q) (1 - |q^{s+J}|)^{-1}`,
/// a bound on the remaining log-factors, is below `tol`.
pub fn q_gamma<T: Real>(s: Complex<T>, q: &QParam<T>, tol: T) -> Result<Complex<T>> {
    let lq = q.log_q();
    let qv = q.q();
    let qs = (s * lq).exp().norm();
    let mut log_sum = real(T::zero());
    let mut j = 0usize;
    loop {
        let jf = int::<T>(j as i64);
        let x = q.pow(s + jf);
        let factor = real(T::one()) - x;
        if factor.norm() < lit(PRODUCT_POLE_RADIUS) {
            return Err(Error::PoleProximity(format!("q^(s+{j}) = 1 at s = {s}")));
        }
        log_sum = log_sum + real((-((jf + T::one()) * lq).exp_m1()).ln()) - factor.ln();
        j += 1;
        let qj = (int::<T>(j as i64) * lq).exp();
        let rest = qs * qj;
        if rest < lit(0.5) && lit::<T>(2.0) * (qv + qs) * qj / ((T::one() - qv) * (T::one() - rest)) < tol {
            break;
        }
        if j >= MAX_FACTORS {
            return Err(Error::BudgetExceeded(MAX_FACTORS));
        }
    }
    Ok((log_sum + (real(T::one()) - s) * q.log_one_minus_q()).exp())
}

/// `psi_q(s) = d/ds log Gamma_q(s) = -log(1-q) + log q sum_{j>=0} q^{s+j} / (1 - q^{s+j})`.
pub fn q_digamma<T: Real>(s: Complex<T>, q: &QParam<T>, tol: T) -> Result<Complex<T>> {
    let lq = q.log_q();
    let qv = q.q();
    let mut sum = real(T::zero());
    let mut j = 0usize;
    loop {
        let x = q.pow(s + int::<T>(j as i64));
        let factor = real(T::one()) - x;
        if factor.norm() < lit(PRODUCT_POLE_RADIUS) {
            return Err(Error::PoleProximity(format!("q^(s+{j}) = 1 at s = {s}")));
        }
        sum = sum + x / factor;
        j += 1;
        let rest = q.pow(s + int::<T>(j as i64)).norm();
        if rest < lit(0.5) && lq.abs() * rest / ((T::one() - qv) * (T::one() - rest)) < tol {
            break;
        }
        if j >= MAX_FACTORS {
            return Err(Error::BudgetExceeded(MAX_FACTORS));
        }
    }
    Ok(sum * lq - q.log_one_minus_q())
}

/// `L_q^{(nu)}(1, chi)` for non-principal `chi` mod `N`:
///
/// `(1-q) sum_{r=1}^{nu} g_chi(q^{r-nu}) + (1-q)/(N log q) sum_k chi(k) psi_{q^N}(k/N)`,
///
/// where the `r = nu` term is the limit `g_chi(1) = -B_{1,chi}`.
pub fn l_at_one_via_qgamma<T: Real>(nu: u32, chi: &DirichletCharacter<T>, q: &QParam<T>, tol: T) -> Result<Complex<T>> {
    if nu == 0 {
        return Err(Error::ParamError("nu must be at least 1".into()));
    }
    if chi.is_principal() {
        return Err(Error::InvalidCharacter("L(1, chi) is a pole for principal characters".into()));
    }
    let lq = q.log_q();
    let n = chi.modulus();
    let nf = int::<T>(n as i64);
    let mut head = -gen_bernoulli(1, chi);
    for r in 1..nu {
        let w = int::<T>(r as i64 - nu as i64);
        head = head + g_chi(chi, real((w * lq).exp()))?;
    }
    let qn = q.power(n)?;
    let mut dig = real(T::zero());
    for (k, v) in chi.support() {
        dig = dig + v * q_digamma(real(int::<T>(k as i64) / nf), &qn, tol)?;
    }
    let omq = T::one() - q.q();
    Ok(head * omq + dig * (omq / (nf * lq)))
}
