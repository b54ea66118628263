//! Adaptive Gauss-Kronrod (7/15) quadrature of complex-valued integrands.

use num_complex::Complex;

use crate::scalar::{lit, real, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T: Real> {
    pub value: Complex<T>,
    pub error: T,
}

fn gk15<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> (Complex<T>, T) {
    let half = lit::<T>(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = f(c);
    let mut kron = fc * lit::<T>(WGK[7]);
    let mut gauss = fc * lit::<T>(WG[3]);
    for i in 0..7 {
        let dx = h * lit::<T>(XGK[i]);
        let pair = f(c - dx) + f(c + dx);
        kron = kron + pair * lit::<T>(WGK[i]);
        if i % 2 == 1 {
            gauss = gauss + pair * lit::<T>(WG[i / 2]);
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

fn adapt<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T, tol: T, depth: u32) -> Quadrature<T> {
    let (value, error) = gk15(f, a, b);
    if error <= tol || depth >= MAX_DEPTH || !(value.re.is_finite() && value.im.is_finite()) {
        return Quadrature { value, error };
    }
    let mid = (a + b) * lit::<T>(0.5);
    let half_tol = tol * lit::<T>(0.5);
    let left = adapt(f, a, mid, half_tol, depth + 1);
    let right = adapt(f, mid, b, half_tol, depth + 1);
    Quadrature { value: left.value + right.value, error: left.error + right.error }
}

/// Integrates `f` over `[a, b]` to the absolute tolerance `tol`.
pub fn integrate<T: Real, F: Fn(T) -> Complex<T>>(f: F, a: T, b: T, tol: T) -> Quadrature<T> {
    if a == b {
        return Quadrature { value: real(T::zero()), error: T::zero() };
    }
    adapt(&f, a, b, tol, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x: f64| Complex::new(x * x * x, -x), 0.0, 2.0, 1e-14);
        assert!((r.value - Complex::new(4.0, -2.0)).norm() < 1e-13);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(|x: f64| Complex::new(0.0, 7.0 * x).exp(), 0.0, 3.0, 1e-12);
        let exact = (Complex::new(0.0, 21.0f64).exp() - 1.0) / Complex::new(0.0, 7.0);
        assert!((r.value - exact).norm() < 1e-11);
    }
}
