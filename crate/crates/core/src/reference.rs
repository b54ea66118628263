//! Classical oracles: Hurwitz and Riemann zeta, Dirichlet L-functions, digamma,
//! and a short table of known zeros.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qcore::{bernoulli, DirichletCharacter};
use crate::scalar::{cplx, int, lit, real, Real};

/// Largest Euler-Maclaurin order used by [`hurwitz_zeta`].
const MAX_ORDER: usize = 30;
const POLE_RADIUS: f64 = 1e-12;

/// Imaginary parts of the first five nontrivial zeros of `zeta`, on `Re(s) = 1/2`.
pub const NONTRIVIAL_ZERO_IM: [f64; 5] = [14.13472, 21.02203, 25.01085, 30.42487, 32.93506];

/// Zeros of the Riemann zeta function used as trajectory origins.
#[derive(Debug, Clone, Copy, Default)]
pub struct KnownZeros;

impl KnownZeros {
    /// `s_j = -2 j`.
    pub fn trivial<T: Real>(j: u32) -> Complex<T> {
        real(int(-2 * j as i64))
    }

    /// `rho_j = 1/2 + i gamma_j` for `1 <= j <= 5`.
    pub fn nontrivial<T: Real>(j: usize) -> Option<Complex<T>> {
        let im = *NONTRIVIAL_ZERO_IM.get(j.checked_sub(1)?)?;
        Some(cplx(lit(0.5), lit(im)))
    }

    pub fn nontrivial_count() -> usize {
        NONTRIVIAL_ZERO_IM.len()
    }
}

/// Euler-Maclaurin tail `zeta(s, x) - 1/(s-1)` for large `x`, regular at `s = 1`.
fn em_tail_regular<T: Real>(s: Complex<T>, x: T) -> Complex<T> {
    let one = real(T::one());
    let lx = x.ln();
    // (x^{1-s} - 1)/(s-1) = -ln x * expm1(u)/u with u = (1-s) ln x
    let u = (one - s) * lx;
    let lead = if u.norm() < lit(1e-8) { -(one + u * lit::<T>(0.5)) * lx } else { -(u.exp() - one) / u * lx };
    let x_s = (-s * lx).exp();
    let mut acc = lead + x_s * lit::<T>(0.5);
    // B_{2l}/(2l)! (s)_{2l-1} x^{-s-2l+1}
    let inv_x2 = (x * x).recip();
    let mut poch = s; // (s)_{2l-1}
    let mut pw = x_s / x; // x^{-s-1}
    let mut fact = lit::<T>(2.0); // (2l)!
    let mut prev = T::infinity();
    for l in 1..=MAX_ORDER {
        let term = poch * pw * (bernoulli::<T>(2 * l) / fact);
        let size = term.norm();
        if size > prev {
            break;
        }
        acc = acc + term;
        if size <= T::epsilon() * acc.norm() {
            break;
        }
        prev = size;
        let ll = int::<T>(2 * l as i64);
        poch = poch * (s + ll - T::one()) * (s + ll);
        pw = pw * inv_x2;
        fact = fact * (ll + T::one()) * (ll + lit(2.0));
    }
    acc
}

/// `zeta(s, a) - 1/(s-1)`, entire in `s`.
fn hurwitz_regular<T: Real>(s: Complex<T>, a: T, shift: usize) -> Complex<T> {
    let mut head = real(T::zero());
    for n in 0..shift {
        head = head + (-s * (int::<T>(n as i64) + a).ln()).exp();
    }
    head + em_tail_regular(s, a + int::<T>(shift as i64))
}

fn default_shift<T: Real>(s: Complex<T>) -> usize {
    s.im.abs().ceil().to_usize().unwrap_or(usize::MAX).max(10)
}

/// Hurwitz zeta `zeta(s, a) = sum_{n>=0} (n+a)^{-s}`, continued by Euler-Maclaurin
/// after a head shift `K = max(10, ceil|Im s|)`.
pub fn hurwitz_zeta<T: Real>(s: Complex<T>, a: T) -> Result<Complex<T>> {
    hurwitz_zeta_with_shift(s, a, default_shift(s))
}

/// [`hurwitz_zeta`] with an explicit head shift.
pub fn hurwitz_zeta_with_shift<T: Real>(s: Complex<T>, a: T, shift: usize) -> Result<Complex<T>> {
    if !(a > T::zero() && a <= T::one()) {
        return Err(Error::ParamError(format!("Hurwitz shift a = {a} must lie in (0, 1]")));
    }
    let d = s - T::one();
    if d.norm() < lit(POLE_RADIUS) {
        return Err(Error::PoleAtOne);
    }
    Ok(hurwitz_regular(s, a, shift) + d.inv())
}

/// Riemann zeta `zeta(s) = zeta(s, 1)`.
pub fn riemann_zeta<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    hurwitz_zeta(s, T::one())
}

/// `L(s, chi) = N^{-s} sum_k chi(k) zeta(s, k/N)`. Regular at `s = 1` for
/// non-principal characters, where the poles of the Hurwitz terms cancel.
pub fn dirichlet_l<T: Real>(s: Complex<T>, chi: &DirichletCharacter<T>) -> Result<Complex<T>> {
    let n = chi.modulus();
    let nf = int::<T>(n as i64);
    let shift = default_shift(s);
    let mut acc = real(T::zero());
    for (k, v) in chi.support() {
        acc = acc + v * hurwitz_regular(s, int::<T>(k as i64) / nf, shift);
    }
    if chi.is_principal() {
        let d = s - T::one();
        if d.norm() < lit(POLE_RADIUS) {
            return Err(Error::PoleAtOne);
        }
        acc = acc + chi.sum() / d;
    }
    Ok(acc * (-s * nf.ln()).exp())
}

/// Digamma `psi(x)` for real `x`, by upward recurrence to `x >= 10` and the
/// asymptotic series; reflection for negative arguments.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if x <= T::zero() && (x - x.round()).abs() < lit(POLE_RADIUS) {
        return Err(Error::PoleError(format!("digamma has a pole at {x}")));
    }
    if x < T::zero() {
        let pi = T::PI();
        return Ok(digamma(T::one() - x)? - pi / (pi * x).tan());
    }
    let mut acc = T::zero();
    let mut y = x;
    while y < lit(10.0) {
        acc = acc - y.recip();
        y = y + T::one();
    }
    let inv2 = (y * y).recip();
    let mut pw = inv2;
    let mut series = T::zero();
    for k in 1..=10usize {
        series = series + bernoulli::<T>(2 * k) / int::<T>(2 * k as i64) * pw;
        pw = pw * inv2;
    }
    Ok(acc + y.ln() - (lit::<T>(2.0) * y).recip() - series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn zeta_two() {
        let v = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    }

    #[test]
    fn hurwitz_at_zero() {
        let v = hurwitz_zeta(c(0.0, 0.0), 0.25).unwrap();
        assert!((v.re - 0.25).abs() < 1e-13);
    }

    #[test]
    fn zeta_minus_one() {
        let v = riemann_zeta(c(-1.0, 0.0)).unwrap();
        assert!((v.re + 1.0 / 12.0).abs() < 1e-13);
    }

    #[test]
    fn pole_at_one() {
        assert_eq!(riemann_zeta(c(1.0, 0.0)), Err(Error::PoleAtOne));
    }

    #[test]
    fn chi4_values() {
        let chi = DirichletCharacter::<f64>::chi4();
        let l0 = dirichlet_l(c(0.0, 0.0), &chi).unwrap();
        assert!((l0.re - 0.5).abs() < 1e-13);
        let l1 = dirichlet_l(c(1.0, 0.0), &chi).unwrap();
        assert!((l1.re - std::f64::consts::FRAC_PI_4).abs() < 1e-13);
    }

    #[test]
    fn digamma_known() {
        let gamma_e = 0.577_215_664_901_532_9_f64;
        assert!((digamma(1.0).unwrap() + gamma_e).abs() < 1e-14);
        assert!((digamma(0.5).unwrap() + gamma_e + 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!(digamma(-2.0f64).is_err());
    }

    #[test]
    fn known_zeros_table() {
        assert_eq!(KnownZeros::trivial::<f64>(1), c(-2.0, 0.0));
        assert_eq!(KnownZeros::nontrivial::<f64>(1), Some(c(0.5, 14.13472)));
        assert_eq!(KnownZeros::nontrivial::<f64>(6), None);
        assert_eq!(KnownZeros::nontrivial::<f64>(0), None);
    }
}
