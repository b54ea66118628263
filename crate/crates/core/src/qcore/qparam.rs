use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// The deformation parameter `q` in the open interval `(0, 1)`.
///
/// `log_q`, `ln(1 - q)` and the quasi-period `delta = 2 pi i / log q` are
/// cached since every evaluator needs them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam<T: Real> {
    q: T,
    log_q: T,
    log_one_minus_q: T,
    delta: Complex<T>,
}

impl<T: Real> QParam<T> {
    pub fn new(q: T) -> Result<Self> {
        if !(q > T::zero() && q < T::one()) {
            return Err(Error::InvalidQ(q.to_f64().unwrap_or(f64::NAN)));
        }
        let log_q = q.ln();
        let delta = Complex::new(T::zero(), T::TAU() / log_q);
        Ok(Self { q, log_q, log_one_minus_q: (-q).ln_1p(), delta })
    }

    #[inline]
    pub fn q(&self) -> T {
        self.q
    }

    /// Natural logarithm of `q` (strictly negative).
    #[inline]
    pub fn log_q(&self) -> T {
        self.log_q
    }

    /// `ln(1 - q)`.
    #[inline]
    pub fn log_one_minus_q(&self) -> T {
        self.log_one_minus_q
    }

    /// `2 pi i / log q`; purely imaginary with negative imaginary part.
    #[inline]
    pub fn delta(&self) -> Complex<T> {
        self.delta
    }

    /// `q^z` for complex `z`.
    #[inline]
    pub fn pow(&self, z: Complex<T>) -> Complex<T> {
        (z * self.log_q).exp()
    }

    /// `(1 - q)^z` for complex `z`.
    #[inline]
    pub fn one_minus_q_pow(&self, z: Complex<T>) -> Complex<T> {
        (z * self.log_one_minus_q).exp()
    }

    /// The parameter `q^k`, used by the character decomposition.
    pub fn power(&self, k: u32) -> Result<Self> {
        let qk = (self.log_q * lit::<T>(k as f64)).exp();
        Self::new(qk)
    }
}

/// The q-integer `[n]_q = (1 - q^n) / (1 - q)`.
pub fn qint<T: Real>(n: u64, q: &QParam<T>) -> T {
    qint_real(lit::<T>(n as f64), q)
}

/// `[x]_q = (1 - q^x) / (1 - q)` for real `x`, as needed by the Hurwitz shift.
pub fn qint_real<T: Real>(x: T, q: &QParam<T>) -> T {
    (x * q.log_q()).exp_m1() / q.log_q().exp_m1()
}
