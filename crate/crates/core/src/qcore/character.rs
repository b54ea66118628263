use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, real, Real};

/// Validation tolerance for character tables given in floating point.
const TABLE_TOL: f64 = 1e-10;

/// Default pole-proximity threshold on `|1 - z^N|` for [`g_chi`].
pub const G_CHI_POLE_THRESHOLD: f64 = 1e-12;

/// A Dirichlet character given by its value table `chi(1), ..., chi(N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter<T: Real> {
    modulus: u32,
    values: Vec<Complex<T>>,
    is_principal: bool,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn multiplicative_order(k: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = k % n;
    let mut ord = 1;
    while x != 1 {
        x = x * k % n;
        ord += 1;
    }
    ord
}

impl<T: Real> DirichletCharacter<T> {
    /// Validates a value table; `values[k-1]` is `chi(k)`.
    pub fn new(modulus: u32, values: Vec<Complex<T>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCharacter(msg));
        if modulus == 0 {
            return bad("modulus must be positive".into());
        }
        if values.len() != modulus as usize {
            return bad(format!("expected {modulus} values, got {}", values.len()));
        }
        let n = modulus as u64;
        let tol = lit::<T>(TABLE_TOL);
        let one = real(T::one());
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return bad("non-finite value".into());
        }
        if (values[0] - one).norm() > tol {
            return bad("chi(1) must equal 1".into());
        }
        for k in 1..=n {
            let v = values[(k - 1) as usize];
            let coprime = gcd(k, n) == 1;
            if !coprime && v.norm() > tol {
                return bad(format!("chi({k}) must be 0 since gcd({k}, {n}) > 1"));
            }
            if coprime {
                if (v.norm() - T::one()).abs() > tol {
                    return bad(format!("chi({k}) must be a root of unity"));
                }
                let ord = multiplicative_order(k, n) as i32;
                if (v.powi(ord) - one).norm() > tol {
                    return bad(format!("chi({k})^{ord} must equal 1 (root of unity axiom)"));
                }
            }
        }
        for a in 1..=n {
            for b in a..=n {
                if gcd(a, n) != 1 || gcd(b, n) != 1 {
                    continue;
                }
                let ab = (a * b - 1) % n;
                let lhs = values[ab as usize];
                let rhs = values[(a - 1) as usize] * values[(b - 1) as usize];
                if (lhs - rhs).norm() > tol {
                    return bad(format!("multiplicativity fails: chi({a}*{b}) != chi({a}) chi({b})"));
                }
            }
        }
        let is_principal = (1..=n).filter(|&k| gcd(k, n) == 1).all(|k| (values[(k - 1) as usize] - one).norm() <= tol);
        if !is_principal {
            let sum: Complex<T> = values.iter().fold(real(T::zero()), |a, &v| a + v);
            if sum.norm() > tol {
                return bad("non-principal character must sum to zero".into());
            }
        }
        Ok(Self { modulus, values, is_principal })
    }

    /// Real-valued table convenience constructor.
    pub fn from_real(modulus: u32, values: &[f64]) -> Result<Self> {
        Self::new(modulus, values.iter().map(|&v| real(lit(v))).collect())
    }

    /// The principal character modulo `modulus`.
    pub fn principal(modulus: u32) -> Self {
        let n = modulus.max(1) as u64;
        let values = (1..=n).map(|k| if gcd(k, n) == 1 { real(T::one()) } else { real(T::zero()) }).collect();
        Self { modulus: n as u32, values, is_principal: true }
    }

    /// The unique non-principal character modulo 4.
    pub fn chi4() -> Self {
        Self::from_real(4, &[1.0, 0.0, -1.0, 0.0]).expect("chi_4 is valid")
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn is_principal(&self) -> bool {
        self.is_principal
    }

    /// True for the character modulo 1, i.e. the Riemann zeta case.
    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// `chi(k)` for any positive integer `k`.
    #[inline]
    pub fn value(&self, k: u64) -> Complex<T> {
        self.values[((k + self.modulus as u64 - 1) % self.modulus as u64) as usize]
    }

    /// Residues `k` in `1..=N` with `chi(k) != 0`, paired with the value.
    pub fn support(&self) -> impl Iterator<Item = (u64, Complex<T>)> + '_ {
        self.values.iter().enumerate().filter(|(_, v)| v.norm_sqr() > T::zero()).map(|(i, &v)| (i as u64 + 1, v))
    }

    /// `sum_k chi(k)`.
    pub fn sum(&self) -> Complex<T> {
        self.values.iter().fold(real(T::zero()), |a, &v| a + v)
    }
}

/// `g_chi(z) = sum_{k=1}^{N} chi(k) z^k / (1 - z^N)`.
pub fn g_chi<T: Real>(chi: &DirichletCharacter<T>, z: Complex<T>) -> Result<Complex<T>> {
    g_chi_with_threshold(chi, z, lit(G_CHI_POLE_THRESHOLD))
}

pub fn g_chi_with_threshold<T: Real>(chi: &DirichletCharacter<T>, z: Complex<T>, threshold: T) -> Result<Complex<T>> {
    let denom = real(T::one()) - z.powu(chi.modulus());
    if denom.norm() < threshold {
        return Err(Error::PoleProximity(format!("|1 - z^N| = {:e} below threshold at z = {}", denom.norm(), z)));
    }
    let num = chi.support().fold(real(T::zero()), |a, (k, v)| a + v * z.powu(k as u32));
    Ok(num / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_mod_one() {
        let chi = DirichletCharacter::<f64>::principal(1);
        assert!(chi.is_principal());
        assert_eq!(chi.value(17), Complex::new(1.0, 0.0));
    }

    #[test]
    fn chi4_is_valid_and_non_principal() {
        let chi = DirichletCharacter::<f64>::chi4();
        assert!(!chi.is_principal());
        assert_eq!(chi.value(7), Complex::new(-1.0, 0.0));
        assert!(chi.sum().norm() < 1e-14);
    }

    #[test]
    fn rejects_bad_tables() {
        let e = DirichletCharacter::<f64>::from_real(3, &[1.0, 1.0, 1.0]).unwrap_err();
        assert!(matches!(e, Error::InvalidCharacter(ref m) if m.contains("chi(3)")));
        assert!(DirichletCharacter::<f64>::from_real(4, &[1.0, 0.0]).is_err());
        assert!(DirichletCharacter::<f64>::from_real(5, &[1.0, 1.0, -1.0, -1.0, 0.0]).is_err());
        assert!(DirichletCharacter::<f64>::from_real(4, &[-1.0, 0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn complex_character_mod_five() {
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        let chi = DirichletCharacter::new(5, vec![one, i, -i, -one, Complex::new(0.0, 0.0)]).unwrap();
        assert!(!chi.is_principal());
        assert!(chi.sum().norm() < 1e-14);
    }

    #[test]
    fn principal_mod_three() {
        let chi = DirichletCharacter::<f64>::principal(3);
        assert_eq!(chi.value(3), Complex::new(0.0, 0.0));
        assert!(DirichletCharacter::new(3, chi.values().to_vec()).unwrap().is_principal());
    }

    #[test]
    fn g_chi_examples() {
        let one = DirichletCharacter::<f64>::principal(1);
        let v = g_chi(&one, Complex::new(0.5, 0.0)).unwrap();
        assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-15);
        let v4 = g_chi(&DirichletCharacter::chi4(), Complex::new(0.5, 0.0)).unwrap();
        assert!((v4 - Complex::new(0.4, 0.0)).norm() < 1e-15);
        assert!(matches!(g_chi(&one, Complex::new(1.0, 0.0)), Err(Error::PoleProximity(_))));
    }
}
