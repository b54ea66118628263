use num_complex::Complex;

use crate::scalar::{int, real, Real};

/// Rising factorial `(s)_k = s (s+1) ... (s+k-1)`, with `(s)_0 = 1`.
pub fn pochhammer<T: Real>(s: Complex<T>, k: usize) -> Complex<T> {
    let mut acc = real(T::one());
    for i in 0..k {
        acc = acc * (s + int::<T>(i as i64));
    }
    acc
}

/// `C(s + r - 1, r) = (s)_r / r!`, the coefficient of `x^r` in `(1 - x)^{-s}`.
pub fn complex_binomial<T: Real>(s: Complex<T>, r: usize) -> Complex<T> {
    let mut acc = real(T::one());
    for i in 0..r {
        acc = acc * (s + int::<T>(i as i64)) / int::<T>(i as i64 + 1);
    }
    acc
}

/// Ordinary binomial coefficient as a float.
pub fn binomial<T: Real>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * int::<T>((n - i) as i64) / int::<T>(i as i64 + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        let any = Complex::new(3.7, -1.2);
        assert_eq!(pochhammer(any, 0), Complex::new(1.0, 0.0));
        assert_eq!(pochhammer(Complex::new(1.0, 0.0), 4), Complex::new(24.0, 0.0));
        assert_eq!(pochhammer(Complex::new(0.5, 0.0), 2), Complex::new(0.75, 0.0));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(complex_binomial(Complex::new(3.0, 0.0), 2), Complex::new(6.0, 0.0));
        assert_eq!(complex_binomial(Complex::new(0.3, 2.0), 0), Complex::new(1.0, 0.0));
        assert_eq!(complex_binomial(Complex::new(-1.0, 0.0), 2).norm(), 0.0);
    }

    #[test]
    fn complex_binomial_matches_integer_binomial() {
        for m in 1..=12u64 {
            for r in 0..=20u64 {
                let c = complex_binomial(Complex::new(m as f64, 0.0), r as usize);
                let exact = binomial::<f64>(m + r - 1, r);
                assert!((c.re - exact).abs() <= 1e-12 * exact.max(1.0), "m={m} r={r}");
                assert_eq!(c.im, 0.0);
            }
        }
    }

    proptest! {
        #[test]
        fn pochhammer_step(re in -20.0f64..20.0, im in -20.0f64..20.0, k in 0usize..30) {
            let s = Complex::new(re, im);
            let lhs = pochhammer(s, k + 1);
            let rhs = pochhammer(s, k) * (s + k as f64);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
