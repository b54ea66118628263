//! Bernoulli numbers and polynomials.
//!
//! The numbers are computed exactly over the rationals from the recurrence
//! `sum_{j=0}^{n} C(n+1, j) B_j = 0` and rendered to floats on demand.
//! Convention: `B_1 = -1/2`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::arith::binomial;
use super::character::DirichletCharacter;
use crate::scalar::{int, lit, real, Real};

/// Default highest index held by the shared table.
pub const DEFAULT_BERNOULLI_MAX: usize = 64;

/// Exact table `B_0 ..= B_max`.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    plain: Vec<BigRational>,
}

impl BernoulliCache {
    pub fn new(max: usize) -> Self {
        let mut cache = Self { plain: vec![BigRational::one()] };
        cache.extend_to(max);
        cache
    }

    /// Highest index computed.
    pub fn max(&self) -> usize {
        self.plain.len() - 1
    }

    pub fn extend_to(&mut self, max: usize) {
        for n in self.plain.len()..=max {
            let mut acc = BigRational::zero();
            let mut c = BigInt::one(); // C(n+1, j), starting at j = 0
            for (j, b) in self.plain.iter().enumerate() {
                if !b.is_zero() {
                    acc += BigRational::from_integer(c.clone()) * b;
                }
                c = c * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            self.plain.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
    }

    pub fn exact(&self, n: usize) -> &BigRational {
        &self.plain[n]
    }

    pub fn get<T: Real>(&self, n: usize) -> T {
        lit(self.plain[n].to_f64().expect("Bernoulli number in f64 range"))
    }
}

fn shared() -> &'static RwLock<BernoulliCache> {
    static TABLE: OnceLock<RwLock<BernoulliCache>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(BernoulliCache::new(DEFAULT_BERNOULLI_MAX)))
}

/// The exact Bernoulli number `B_n`.
pub fn bernoulli_exact(n: usize) -> BigRational {
    {
        let table = shared().read().expect("bernoulli table poisoned");
        if n <= table.max() {
            return table.exact(n).clone();
        }
    }
    let mut table = shared().write().expect("bernoulli table poisoned");
    table.extend_to(n);
    table.exact(n).clone()
}

/// `B_n` rendered in the working scalar.
pub fn bernoulli<T: Real>(n: usize) -> T {
    lit(bernoulli_exact(n).to_f64().expect("Bernoulli number in f64 range"))
}

/// Bernoulli polynomial `B_n(x) = sum_j C(n, j) B_j x^{n-j}`.
pub fn bernoulli_poly<T: Real>(n: usize, x: T) -> T {
    // Horner in x over the coefficients C(n, j) B_j, highest power first.
    let mut acc = T::zero();
    for j in 0..=n {
        acc = acc * x + binomial::<T>(n as u64, j as u64) * bernoulli::<T>(j);
    }
    acc
}

/// Periodic Bernoulli function `B_n(x - floor(x))`.
pub fn periodic_bernoulli<T: Real>(n: usize, x: T) -> T {
    bernoulli_poly(n, x - x.floor())
}

/// Generalized Bernoulli number `B_{n,chi} = N^{n-1} sum_k chi(k) B_n(k/N)`.
pub fn gen_bernoulli<T: Real>(n: usize, chi: &DirichletCharacter<T>) -> Complex<T> {
    let modulus = chi.modulus();
    let big_n = int::<T>(modulus as i64);
    let mut acc = real(T::zero());
    for k in 1..=modulus {
        let v = chi.value(k as u64);
        if v.norm_sqr() > T::zero() {
            acc = acc + v * bernoulli_poly(n, int::<T>(k as i64) / big_n);
        }
    }
    acc * big_n.powi(n as i32 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn known_table() {
        assert_eq!(bernoulli_exact(0), rat(1, 1));
        assert_eq!(bernoulli_exact(1), rat(-1, 2));
        assert_eq!(bernoulli_exact(2), rat(1, 6));
        assert_eq!(bernoulli_exact(12), rat(-691, 2730));
        assert!((bernoulli::<f64>(12) + 0.253_113_553_113_553_1).abs() < 1e-15);
        for k in 1..30 {
            assert!(bernoulli_exact(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn recurrence_holds_exactly() {
        let cache = BernoulliCache::new(40);
        for n in 1..=40usize {
            let mut acc = BigRational::zero();
            let mut c = BigInt::one();
            for j in 0..=n {
                acc += BigRational::from_integer(c.clone()) * cache.exact(j);
                c = c * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            assert!(acc.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn extends_beyond_default() {
        let b = bernoulli_exact(DEFAULT_BERNOULLI_MAX + 2);
        let direct = BernoulliCache::new(DEFAULT_BERNOULLI_MAX + 2);
        assert_eq!(&b, direct.exact(DEFAULT_BERNOULLI_MAX + 2));
    }

    #[test]
    fn polynomial_examples() {
        assert!((bernoulli_poly(2, 0.0f64) - 1.0 / 6.0).abs() < 1e-15);
        assert!((bernoulli_poly(1, 0.25f64) + 0.25).abs() < 1e-15);
        assert!((bernoulli_poly(2, 0.5f64) + 1.0 / 12.0).abs() < 1e-15);
        assert!((periodic_bernoulli(2, 1.5f64) + 1.0 / 12.0).abs() < 1e-15);
        assert!((periodic_bernoulli(1, 2.25f64) + 0.25).abs() < 1e-15);
        assert!(periodic_bernoulli(3, 7.0f64).abs() < 1e-15);
    }

    #[test]
    fn polynomial_difference_identity() {
        for n in 1..=12usize {
            for i in -20..=20 {
                let x = i as f64 * 0.137;
                let lhs = bernoulli_poly(n, x + 1.0) - bernoulli_poly(n, x);
                let rhs = n as f64 * x.powi(n as i32 - 1);
                assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0), "n={n} x={x}");
            }
        }
    }
}
