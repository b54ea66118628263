//! Values at non-positive integers, the `q -> 0` limit, and the Tsumura variant.

use num_complex::Complex;

use super::expansion::EXPANSION_POLE_RADIUS;
use super::types::SeriesSpec;
use crate::error::{Error, Result};
use crate::qcore::{g_chi, gen_bernoulli, pochhammer, DirichletCharacter, QParam};
use crate::scalar::{int, lit, real, Real};

/// `L_q^{(nu)}(-m, chi)` as a finite sum:
///
/// `(1-q)^{-m} [ sum_{r=0}^{m} (-m)_r/r! g_chi(q^{r-m-nu}) - (-1)^m m! (nu-1)! / (m+nu)! * B_{0,chi} / log q ]`.
///
/// The last term is the removable `r = m + nu` term of the expansion; it vanishes
/// for non-principal characters.
pub fn special_value_neg_int<T: Real>(
    m: u32,
    nu: u32,
    chi: &DirichletCharacter<T>,
    q: &QParam<T>,
) -> Result<Complex<T>> {
    if nu == 0 {
        return Err(Error::ParamError("nu must be at least 1".into()));
    }
    let lq = q.log_q();
    let mm = int::<T>(m as i64);
    let mut sum = real(T::zero());
    let mut c = T::one(); // (-m)_r / r!
    for r in 0..=m {
        let w = int::<T>(r as i64 - m as i64 - nu as i64);
        sum = sum + g_chi(chi, real((w * lq).exp()))? * c;
        let rr = int::<T>(r as i64);
        c = c * (rr - mm) / (rr + T::one());
    }
    // (-1)^m m! (nu-1)! / (m+nu)! = (-1)^m / (m+nu) / C(m+nu-1, m)
    let mut ratio = T::one() / int::<T>((m + nu) as i64);
    for i in 1..=m {
        ratio = ratio * int::<T>(i as i64) / int::<T>((nu - 1 + i) as i64);
    }
    if m % 2 == 1 {
        ratio = -ratio;
    }
    sum = sum - gen_bernoulli(0, chi) * (ratio / lq);
    Ok(sum * (-mm * q.log_one_minus_q()).exp())
}

/// Whether `s` lies in the domain where the `q -> 0` limit exists:
/// `Re(s)` not an integer `<= nu`, or `s` a non-positive integer.
pub fn in_crystal_domain<T: Real>(s: Complex<T>, nu: u32) -> bool {
    let re_int = s.re == s.re.round();
    if !re_int || s.re > int(nu as i64) {
        return true;
    }
    s.im == T::zero() && s.re <= T::zero()
}

/// `lim_{q -> 0} L_q^{(nu)}(s, chi)`.
///
/// Zero unless the character is trivial. For the trivial character: 0 for
/// `Re(s) > nu`, `-(s+1)_m / m!` in the strip `nu-m-1 < Re(s) < nu-m`, and at
/// `s = -m` the value `-1` for `m = 0`, `0` otherwise.
pub fn crystal_value<T: Real>(s: Complex<T>, nu: u32, chi: &DirichletCharacter<T>) -> Result<Complex<T>> {
    if nu == 0 {
        return Err(Error::ParamError("nu must be at least 1".into()));
    }
    if !in_crystal_domain(s, nu) {
        return Err(Error::OutsideCrystalDomain(format!("s = {s}, nu = {nu}")));
    }
    let zero = real(T::zero());
    if !chi.is_trivial() {
        return Ok(zero);
    }
    if s.im == T::zero() && s.re <= T::zero() && s.re == s.re.round() {
        return Ok(if s.re == T::zero() { real(-T::one()) } else { zero });
    }
    let nuf = int::<T>(nu as i64);
    if s.re > nuf {
        return Ok(zero);
    }
    let m = (nuf - s.re).floor().to_usize().expect("strip index");
    let one = real(T::one());
    let mut fact = T::one();
    for i in 1..=m {
        fact = fact * int::<T>(i as i64);
    }
    Ok(-(pochhammer(s + one, m) / fact))
}

/// The elementary term `(mu-1)! / (1-s)_mu * (1-q)^s / log q` of the Tsumura variant.
pub(crate) fn tsumura_correction<T: Real>(s: Complex<T>, mu: u32, q: &QParam<T>) -> Result<Complex<T>> {
    let den = pochhammer(real(T::one()) - s, mu as usize);
    if den.norm() < lit(EXPANSION_POLE_RADIUS) {
        return Err(Error::PoleProximity(format!("Tsumura variant has a pole at s = {s}")));
    }
    let mut fact = T::one();
    for i in 1..mu {
        fact = fact * int::<T>(i as i64);
    }
    Ok((s * q.log_one_minus_q()).exp() * fact / (den * q.log_q()))
}

/// `zeta^mu_q(s, a) = (mu-1)!/(1-s)_mu (1-q)^s / log q + g_q(s, mu, a)`, meromorphic with
/// simple poles at `s = 1, ..., mu`.
pub fn tsumura_zeta<T: Real>(s: Complex<T>, mu: u32, a: T, q: &QParam<T>, tol: T) -> Result<Complex<T>> {
    let spec = SeriesSpec::Tsumura { s, mu, a };
    Ok(super::direct::f_direct(&spec, q, tol, super::types::ZetaOptions::<T>::default().max_terms)?.value)
}
