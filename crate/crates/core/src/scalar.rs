//! Scalar abstraction shared by every evaluator.
//!
//! All numerics are written against [`Real`], so the same code runs on
//! `f32` and `f64`. Thresholds in the crate are stated as `f64` literals and
//! converted with [`lit`].

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Binary floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts an integer into the working scalar.
#[inline]
pub fn int<T: Real>(n: i64) -> T {
    T::from_i64(n).expect("integer representable in scalar type")
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `e^z - 1` without cancellation for small `|z|`.
pub fn expm1<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    let s = (z.im * half).sin();
    let re = z.re.exp_m1() * z.im.cos() - lit::<T>(2.0) * s * s;
    let im = z.re.exp() * z.im.sin();
    Complex::new(re, im)
}

/// `x / (e^x - 1)`, equal to 1 at the origin.
pub fn x_over_expm1<T: Real>(x: Complex<T>) -> Complex<T> {
    if x.norm() < lit(1e-3) {
        // x/(e^x-1) = 1 - x/2 + x^2/12 - x^4/720 + x^6/30240
        let x2 = x * x;
        let one = real(T::one());
        one - x * lit::<T>(0.5) + x2 / lit::<T>(12.0) - x2 * x2 / lit::<T>(720.0) + x2 * x2 * x2 / lit::<T>(30240.0)
    } else {
        x / expm1(x)
    }
}

/// Derivative of [`x_over_expm1`].
pub fn x_over_expm1_deriv<T: Real>(x: Complex<T>) -> Complex<T> {
    if x.norm() < lit(1e-3) {
        let x2 = x * x;
        real(lit::<T>(-0.5)) + x / lit::<T>(6.0) - x2 * x / lit::<T>(180.0) + x2 * x2 * x / lit::<T>(5040.0)
    } else {
        let em = expm1(x);
        (em - x * x.exp()) / (em * em)
    }
}

/// `(e^x - 1) / x`, equal to 1 at the origin.
pub fn expm1_over_x<T: Real>(x: Complex<T>) -> Complex<T> {
    if x.norm() < lit(1e-3) {
        let x2 = x * x;
        real(T::one()) + x * lit::<T>(0.5) + x2 / lit::<T>(6.0) + x2 * x / lit::<T>(24.0) + x2 * x2 / lit::<T>(120.0)
    } else {
        expm1(x) / x
    }
}

/// Derivative of [`expm1_over_x`].
pub fn expm1_over_x_deriv<T: Real>(x: Complex<T>) -> Complex<T> {
    if x.norm() < lit(0.1) {
        // sum_{n>=1} n x^{n-1} / (n+1)!
        let mut acc = real(T::zero());
        let mut pow = real(T::one());
        let mut fact = lit::<T>(2.0);
        for n in 1..16 {
            acc = acc + pow * (int::<T>(n) / fact);
            pow = pow * x;
            fact = fact * int::<T>(n + 2);
        }
        acc
    } else {
        (x * x.exp() - expm1(x)) / (x * x)
    }
}

/// `base^z` for a positive real base, via `exp(z ln base)`.
#[inline]
pub fn rpow<T: Real>(base: T, z: Complex<T>) -> Complex<T> {
    (z * base.ln()).exp()
}

/// `exp(z * log_base)` where the logarithm of the base is already known.
#[inline]
pub fn pow_log<T: Real>(log_base: T, z: Complex<T>) -> Complex<T> {
    (z * log_base).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_matches_exp_away_from_zero() {
        let z = Complex::new(0.7, -2.3);
        let d = expm1(z) - (z.exp() - 1.0);
        assert!(d.norm() < 1e-15);
    }

    #[test]
    fn expm1_small_argument_is_accurate() {
        let z = Complex::new(1e-12, 3e-12);
        let r = expm1(z);
        assert!((r - z).norm() < 1e-23);
    }

    #[test]
    fn bernoulli_generating_function_branches_agree() {
        for &x in &[9.9e-4, 1.01e-3] {
            let z = Complex::new(x, 0.0);
            let a = x_over_expm1(z);
            let b = z / expm1(z);
            assert!((a - b).norm() < 1e-15);
            let da = x_over_expm1_deriv(z);
            let h = 1e-6;
            let fd = (x_over_expm1(Complex::new(x + h, 0.0)) - x_over_expm1(Complex::new(x - h, 0.0))) / (2.0 * h);
            assert!((da - fd).norm() < 1e-9);
        }
    }
}
