//! Complex log-gamma used by the complete beta function and the classical oracles.

use num_complex::Complex;

use crate::qcore::bernoulli;
use crate::scalar::{int, lit, real, Real};

const STIRLING_SHIFT: f64 = 15.0;
const STIRLING_TERMS: usize = 10;

/// `ln Gamma(z)` modulo `2 pi i`; exponentiating the result is exact up to rounding.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.re < lit(0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let pi = T::PI();
        let s = (z * pi).sin();
        return real(pi.ln()) - s.ln() - ln_gamma(real(T::one()) - z);
    }
    let mut shift = real(T::zero());
    let mut w = z;
    while w.re < lit(STIRLING_SHIFT) {
        shift = shift + w.ln();
        w = w + T::one();
    }
    let half = lit::<T>(0.5);
    let mut acc = (w - half) * w.ln() - w + real(half * T::TAU().ln());
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for k in 1..=STIRLING_TERMS {
        let denom = int::<T>((2 * k * (2 * k - 1)) as i64);
        acc = acc + pow * (bernoulli::<T>(2 * k) / denom);
        pow = pow * inv2;
    }
    acc - shift
}

/// `Gamma(z)` for complex `z` away from the non-positive integers.
pub fn gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    ln_gamma(z).exp()
}

/// Distance-based test for `z` in `{0, -1, -2, ...}`.
pub fn near_nonpositive_integer<T: Real>(z: Complex<T>, tol: T) -> bool {
    let r = z.re.round();
    r <= T::zero() && (z - real(r)).norm() < tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_half() {
        for n in 1..15 {
            let g = gamma(Complex::new(n as f64, 0.0));
            let fact: f64 = (1..n).map(|k| k as f64).product();
            assert!((g.re - fact).abs() < 1e-13 * fact, "n={n}");
            assert!(g.im.abs() < 1e-13 * fact);
        }
        let g = gamma(Complex::new(0.5, 0.0));
        assert!((g.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        let g = gamma(Complex::new(-0.5, 0.0));
        assert!((g.re + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn recurrence_in_complex_plane() {
        for &(re, im) in &[(0.3, 4.0), (-2.7, 1.5), (7.5, -12.0), (0.01, 30.0)] {
            let z = Complex::new(re, im);
            let lhs = gamma(z + 1.0);
            let rhs = gamma(z) * z;
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm(), "z={z}");
        }
    }

    #[test]
    fn abs_gamma_on_imaginary_axis() {
        // |Gamma(iy)|^2 = pi / (y sinh(pi y))
        let y = 2.5f64;
        let g = gamma(Complex::new(0.0, y));
        let expect = (std::f64::consts::PI / (y * (std::f64::consts::PI * y).sinh())).sqrt();
        assert!((g.norm() - expect).abs() < 1e-13 * expect);
    }
}
