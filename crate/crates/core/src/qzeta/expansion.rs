//! Binomial expansion of the family in powers of `1 - q^n`:
//!
//! `f(s) = (1-q)^s sum_{r>=0} C(s+r-1, r) G(t + r)`, `G(w) = sum_k v_k q^{k w} / (1 - q^{N w})`.
//!
//! The terms are analytic in `s` except on the lattice `N (t + r) log q in 2 pi i Z`.
//! With `t = s - nu` and a non-balanced weight set the `w = 0` point is removable
//! for `r >= nu`, because the factor `s + r - nu = w` divides `(s)_r`; those terms
//! are evaluated as `(c_r / w) * (w G(w))`. For `r >= nu + 2` and `Re(w) >= 1/2` the
//! remaining terms and their `s`-derivatives decay geometrically with ratio at most
//! `beta q^{k_min}`, which gives the stopping rule.

use num_complex::Complex;

use super::types::{EvalOutput, SeriesSpec, Strategy};
use super::Jet;
use crate::error::{Error, Result};
use crate::qcore::{DirichletCharacter, QParam};
use crate::scalar::{expm1, expm1_over_x, expm1_over_x_deriv, int, lit, real, Real};

/// `|1 - q^{N w}|` below this is treated as a pole.
pub const EXPANSION_POLE_RADIUS: f64 = 1e-8;

/// How `t` depends on `s`.
#[derive(Debug, Clone, Copy)]
pub(crate) enum TParam<T: Real> {
    /// `t = s - nu`.
    Offset(u32),
    Fixed(Complex<T>),
}

/// Exponents `k` and weights `v_k` of the generating function `G`, period `N`.
#[derive(Debug, Clone)]
pub(crate) struct Weights<T: Real> {
    period: u32,
    items: Vec<(T, Complex<T>)>,
    /// `sum v_k = 0`, so `G` is regular at `w = 0`.
    balanced: bool,
    k_min: T,
}

impl<T: Real> Weights<T> {
    pub fn character(chi: &DirichletCharacter<T>) -> Self {
        let items: Vec<_> = chi.support().map(|(k, v)| (int::<T>(k as i64), v)).collect();
        Self { period: chi.modulus(), balanced: !chi.is_principal(), k_min: T::one(), items }
    }

    pub fn hurwitz(a: T) -> Self {
        Self { period: 1, items: vec![(a, real(T::one()))], balanced: false, k_min: a }
    }

    /// `Phi(u) = sum v e^{k u} / (1 - e^{N u})` and `Phi'(u)`.
    fn phi(&self, u: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let n = int::<T>(self.period as i64);
        let x = u * n;
        if self.balanced && x.norm() < lit(0.5) {
            // numerator and denominator both divided by u
            let mut p = real(T::zero());
            let mut dp = real(T::zero());
            for &(k, v) in &self.items {
                p = p + v * k * expm1_over_x(u * k);
                dp = dp + v * (k * k) * expm1_over_x_deriv(u * k);
            }
            let d = -expm1_over_x(x) * n;
            let dd = -expm1_over_x_deriv(x) * (n * n);
            return Ok((p / d, (dp * d - p * dd) / (d * d)));
        }
        let d = -expm1(x);
        if d.norm() < lit(EXPANSION_POLE_RADIUS) {
            return Err(Error::PoleProximity(format!("|1 - q^(N w)| = {:e}", d.norm())));
        }
        let dd = -x.exp() * n;
        let (p, dp) = self.numerator(u);
        Ok((p / d, (dp * d - p * dd) / (d * d)))
    }

    /// `Psi(u) = u Phi(u)` and `Psi'(u)`, regular at `u = 0`.
    fn psi(&self, u: Complex<T>) -> (Complex<T>, Complex<T>) {
        let n = int::<T>(self.period as i64);
        let x = u * n;
        let d = -expm1_over_x(x) * n;
        let dd = -expm1_over_x_deriv(x) * (n * n);
        let (p, dp) = self.numerator(u);
        (p / d, (dp * d - p * dd) / (d * d))
    }

    fn numerator(&self, u: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = real(T::zero());
        let mut dp = real(T::zero());
        for &(k, v) in &self.items {
            let e = v * (u * k).exp();
            p = p + e;
            dp = dp + e * k;
        }
        (p, dp)
    }

    /// Upper bound of `|G(w)|` for `Re(w) > 0`.
    fn abs_bound(&self, re_w: T, log_q: T) -> T {
        let z = (re_w * log_q).exp();
        let num = self.items.iter().fold(T::zero(), |a, &(k, v)| a + v.norm() * z.powf(k));
        num / (T::one() - z.powi(self.period as i32))
    }
}

pub(crate) struct ExpansionResult<T: Real> {
    pub jet: Jet<T>,
    pub terms: usize,
    pub magnitude: T,
}

/// Sums the expansion, with derivatives in `s` and `q`.
pub(crate) fn expansion_sum<T: Real>(
    s: Complex<T>,
    tp: TParam<T>,
    weights: &Weights<T>,
    q: &QParam<T>,
    tol: T,
    max_terms: usize,
) -> Result<ExpansionResult<T>> {
    let lq = q.log_q();
    let qv = q.q();
    let zero = real(T::zero());
    let one = real(T::one());
    let (t, dt_ds, nu) = match tp {
        TParam::Offset(nu) => (s - int::<T>(nu as i64), T::one(), Some(nu as usize)),
        TParam::Fixed(t) => (t, T::zero(), None),
    };
    let first_tail_index = nu.unwrap_or(0) + 2;
    let s_abs = s.norm();
    let rho = (weights.k_min * lq).exp();

    let mut sum = Jet::zero();
    let mut magnitude = T::zero();
    let mut c = one;
    let mut dc = zero;
    let mut r = 0usize;
    loop {
        let rr = int::<T>(r as i64);
        let w = t + rr;
        let u = w * lq;
        let removable = match nu {
            Some(nu) => !weights.balanced && r >= nu && w.norm() < lit(0.5),
            None => false,
        };
        let (val, ds, dq) = if removable {
            let skip = r - nu.unwrap_or(0);
            let mut ch = one;
            let mut dch = zero;
            for i in 0..r {
                let inv = T::one() / int::<T>(i as i64 + 1);
                if i == skip {
                    ch = ch * inv;
                    dch = dch * inv;
                } else {
                    let f = s + int::<T>(i as i64);
                    dch = (dch * f + ch) * inv;
                    ch = ch * f * inv;
                }
            }
            let (psi, dpsi) = weights.psi(u);
            let h = psi / lq;
            (ch * h, dch * h + ch * dpsi, ch * (w * dpsi - h) / (qv * lq))
        } else {
            let (phi, dphi) =
                weights.phi(u).map_err(|e| Error::PoleProximity(format!("expansion term r = {r} at s = {s}: {e}")))?;
            (c * phi, dc * phi + c * dphi * (lq * dt_ds), c * w * dphi / qv)
        };
        sum.value = sum.value + val;
        sum.ds = sum.ds + ds;
        sum.dq = sum.dq + dq;
        magnitude = magnitude + val.norm();

        if r >= first_tail_index && w.re >= lit(0.5) {
            // |c| + |dc| grows by at most (|s| + r + 1)/(r + 1) per step, which also
            // covers the s-derivative when c vanishes (s a non-positive integer)
            let beta = ((s_abs + rr + T::one()) / (rr + T::one())).max(T::one());
            let ratio = beta * rho;
            if ratio < T::one() {
                let a_r = (c.norm() + dc.norm()) * weights.abs_bound(w.re, lq);
                let pref = (s.re * q.log_one_minus_q()).exp();
                if pref * a_r * ratio / (T::one() - ratio) < tol {
                    break;
                }
            }
        }

        let f = s + rr;
        let inv = T::one() / (rr + T::one());
        dc = (dc * f + c) * inv;
        c = c * f * inv;
        r += 1;
        if r >= max_terms {
            return Err(Error::BudgetExceeded(max_terms));
        }
    }

    let lomq = q.log_one_minus_q();
    let pref = (s * lomq).exp();
    let jet = Jet {
        value: pref * sum.value,
        ds: pref * (sum.value * lomq + sum.ds),
        dq: pref * (sum.dq - sum.value * s / (T::one() - qv)),
    };
    Ok(ExpansionResult { jet, terms: r + 1, magnitude: magnitude * pref.norm() })
}

fn spec_parts<T: Real>(spec: &SeriesSpec<T>) -> (Complex<T>, TParam<T>, Weights<T>) {
    match spec {
        SeriesSpec::FChi { s, t, chi } => (*s, TParam::Fixed(*t), Weights::character(chi)),
        SeriesSpec::GHurwitz { s, t, a } => (*s, TParam::Fixed(*t), Weights::hurwitz(*a)),
        SeriesSpec::LNu { s, nu, chi } => (*s, TParam::Offset(*nu), Weights::character(chi)),
        SeriesSpec::ZetaNu { s, nu } => {
            (*s, TParam::Offset(*nu), Weights::character(&DirichletCharacter::principal(1)))
        }
        SeriesSpec::LMu { s, mu, chi } => (*s, TParam::Fixed(real(int(*mu as i64))), Weights::character(chi)),
        SeriesSpec::Tsumura { s, mu, a } => (*s, TParam::Fixed(real(int(*mu as i64))), Weights::hurwitz(*a)),
    }
}

pub(crate) fn expansion_jet<T: Real>(
    spec: &SeriesSpec<T>,
    q: &QParam<T>,
    tol: T,
    max_terms: usize,
) -> Result<(Jet<T>, EvalOutput<T>)> {
    spec.validate()?;
    if matches!(spec, SeriesSpec::Tsumura { .. }) {
        return Err(Error::ParamError("derivatives of the Tsumura variant are not provided".into()));
    }
    let (s, tp, w) = spec_parts(spec);
    let r = expansion_sum(s, tp, &w, q, tol, max_terms)?;
    let out = EvalOutput {
        value: r.jet.value,
        bound: None,
        strategy: Strategy::Expansion,
        terms_used: r.terms,
        magnitude: r.magnitude,
        params: None,
    };
    Ok((r.jet, out))
}

/// Meromorphic continuation of any member of the family through the binomial
/// expansion. Valid for every `s` off the pole lattice.
pub fn zeta_expansion<T: Real>(spec: &SeriesSpec<T>, q: &QParam<T>, tol: T, max_terms: usize) -> Result<EvalOutput<T>> {
    spec.validate()?;
    let (s, tp, w) = spec_parts(spec);
    let r = expansion_sum(s, tp, &w, q, tol, max_terms)?;
    let mut value = r.jet.value;
    if let SeriesSpec::Tsumura { s, mu, .. } = spec {
        value = value + super::special::tsumura_correction(*s, *mu, q)?;
    }
    Ok(EvalOutput {
        value,
        bound: None,
        strategy: Strategy::Expansion,
        terms_used: r.terms,
        magnitude: r.magnitude,
        params: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qzeta::f_direct;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn zeta(s: Complex<f64>, nu: u32, q: f64) -> Result<EvalOutput<f64>> {
        zeta_expansion(&SeriesSpec::ZetaNu { s, nu }, &QParam::new(q).unwrap(), 1e-14, 1_000_000)
    }

    #[test]
    fn value_at_zero() {
        let v = zeta(c(0.0, 0.0), 1, 0.5).unwrap().value;
        let closed = -2.0 - 1.0 / 0.5f64.ln();
        assert!((v.re - closed).abs() < 1e-10);
        assert!((v.re + 0.557304959).abs() < 1e-9);
    }

    #[test]
    fn agrees_with_direct_in_the_overlap() {
        let q = QParam::new(0.5).unwrap();
        for spec in [
            SeriesSpec::ZetaNu { s: c(3.0, 0.0), nu: 1 },
            SeriesSpec::ZetaNu { s: c(4.5, -2.0), nu: 2 },
            SeriesSpec::LNu { s: c(2.5, 1.0), nu: 1, chi: DirichletCharacter::chi4() },
            SeriesSpec::FChi { s: c(0.3, 1.0), t: c(0.8, 0.5), chi: DirichletCharacter::principal(3) },
            SeriesSpec::GHurwitz { s: c(-1.3, 2.0), t: c(1.2, 0.0), a: 0.3 },
        ] {
            let a = zeta_expansion(&spec, &q, 1e-14, 1_000_000).unwrap().value;
            let b = f_direct(&spec, &q, 1e-14, 1_000_000).unwrap().value;
            assert!((a - b).norm() < 1e-10, "{spec:?}: {a} vs {b}");
        }
    }

    #[test]
    fn real_poles_are_flagged() {
        assert!(matches!(zeta(c(1.0, 0.0), 1, 0.5), Err(Error::PoleProximity(_))));
        assert!(matches!(zeta(c(2.0, 0.0), 2, 0.5), Err(Error::PoleProximity(_))));
        assert!(matches!(zeta(c(1.0, 1e-10), 2, 0.5), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn complex_lattice_poles_are_flagged() {
        let q = QParam::new(0.3).unwrap();
        let delta = q.delta();
        // nu - r + k delta with r = 1, k = 2
        let s = c(0.0, 0.0) + delta * 2.0;
        assert!(matches!(zeta(s, 1, 0.3), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn removable_points_are_regular() {
        // s = 0 and s = -1 sit on w = 0 for r >= nu and are removable
        for s in [0.0, -1.0, -2.0] {
            let v = zeta(c(s, 0.0), 1, 0.4).unwrap().value;
            assert!(v.re.is_finite() && v.im == 0.0);
        }
    }

    proptest! {
        #[test]
        fn real_on_the_real_axis(s in -6.0f64..6.0, q in 0.05f64..0.95, nu in 1u32..4) {
            prop_assume!((s - s.round()).abs() > 1e-3 || s.round() < 1.0 || s.round() > nu as f64);
            let v = zeta(c(s, 0.0), nu, q).unwrap().value;
            prop_assert!(v.im.abs() < 1e-12);
        }

        #[test]
        fn conjugate_reflection(re in -5.0f64..5.0, im in 0.1f64..15.0, q in 0.1f64..0.9) {
            let (Ok(a), Ok(b)) = (zeta(c(re, im), 1, q), zeta(c(re, -im), 1, q)) else { return Ok(()) };
            prop_assert_eq!(a.value.conj(), b.value);
        }
    }
}
