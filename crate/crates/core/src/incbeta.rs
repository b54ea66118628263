//! The incomplete beta function `b_q(alpha, beta) = int_0^q u^{alpha-1} (1-u)^{beta-1} du`
//! and its analytic continuation in `alpha` by integration by parts.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, near_nonpositive_integer};
use crate::qcore::pochhammer;
use crate::quadrature::integrate;
use crate::scalar::{int, lit, real, Real};

/// Default absolute error target for the quadrature.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Threshold on `|(x)_k|` below which a Pochhammer denominator is treated as a pole.
pub const POLE_THRESHOLD: f64 = 1e-12;

/// Arguments of `b_q(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncBetaRequest<T: Real> {
    pub upper_limit: T,
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
}

impl<T: Real> IncBetaRequest<T> {
    pub fn new(upper_limit: T, alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        check_upper(upper_limit)?;
        Ok(Self { upper_limit, alpha, beta })
    }
}

fn check_upper<T: Real>(q: T) -> Result<()> {
    if q > T::zero() && q < T::one() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("upper limit {q} must lie in (0, 1)")))
    }
}

/// Direct quadrature; needs `Re(alpha) > 0`.
///
/// For `Re(alpha) < 1` the substitution `u = v^p`, `p = 1/Re(alpha)`, turns
/// `u^{alpha-1} du` into `p v^{p alpha - 1} dv`, whose modulus is bounded.
pub fn incomplete_beta<T: Real>(req: &IncBetaRequest<T>, tol: T) -> Result<Complex<T>> {
    let IncBetaRequest { upper_limit: q, alpha, beta } = *req;
    check_upper(q)?;
    if !(alpha.re > T::zero()) {
        return Err(Error::DomainError(format!("Re(alpha) = {} <= 0; use the recurrence continuation", alpha.re)));
    }
    let one = T::one();
    let bm1 = beta - one;
    if alpha.re < one {
        let p = alpha.re.recip();
        let expo = alpha * p - one;
        let upper = q.powf(alpha.re);
        let r = integrate(
            |v: T| {
                let lv = v.ln();
                let u = (lv * p).exp();
                (expo * lv).exp() * (bm1 * (-u).ln_1p()).exp() * p
            },
            T::zero(),
            upper,
            tol,
        );
        Ok(r.value)
    } else {
        let am1 = alpha - one;
        let r = integrate(|u: T| (am1 * u.ln() + bm1 * (-u).ln_1p()).exp(), T::zero(), q, tol);
        Ok(r.value)
    }
}

/// `b_q(alpha, beta)` for any `alpha` off the poles `{0, -1, -2, ...}`: direct
/// quadrature when `Re(alpha) > 0`, otherwise the raising recurrence with just
/// enough steps to reach the half plane.
pub fn incomplete_beta_continued<T: Real>(q: T, alpha: Complex<T>, beta: Complex<T>, tol: T) -> Result<Complex<T>> {
    if alpha.re > T::zero() {
        return incomplete_beta(&IncBetaRequest::new(q, alpha, beta)?, tol);
    }
    let steps = (-alpha.re).floor().to_usize().unwrap_or(0) + 1;
    raise_alpha_recurrence(q, alpha, beta, steps, tol)
}

fn pole_check<T: Real>(x: Complex<T>, what: &str, alpha_side: bool) -> Result<()> {
    if x.norm() < lit(POLE_THRESHOLD) {
        let msg = format!("{what} vanishes");
        Err(if alpha_side { Error::PoleAtAlpha(msg) } else { Error::PoleAtBeta(msg) })
    } else {
        Ok(())
    }
}

/// Continuation by repeated integration by parts, raising `alpha` by `steps`:
///
/// `b_q(a, b) = sum_{l=1}^{steps} (-1)^{l-1} (1-b)_{l-1}/(a)_l q^{a+l-1} (1-q)^{b-l}
///            + (-1)^{steps} (1-b)_{steps}/(a)_{steps} b_q(a+steps, b-steps)`.
pub fn raise_alpha_recurrence<T: Real>(
    q: T,
    alpha: Complex<T>,
    beta: Complex<T>,
    steps: usize,
    tol: T,
) -> Result<Complex<T>> {
    check_upper(q)?;
    if steps == 0 {
        return Err(Error::ParamError("steps must be positive".into()));
    }
    let one = real(T::one());
    let (lq, l1q) = (q.ln(), (-q).ln_1p());
    let mut num = one; // (1-b)_{l-1}
    let mut den = one; // (a)_{l-1}
    let mut sum = real(T::zero());
    for l in 1..=steps {
        let lf = int::<T>(l as i64);
        den = den * (alpha + lf - T::one());
        pole_check(den, &format!("(alpha)_{l}"), true)?;
        let sign = if l % 2 == 1 { T::one() } else { -T::one() };
        let pw = ((alpha + lf - T::one()) * lq + (beta - lf) * l1q).exp();
        sum = sum + num / den * pw * sign;
        num = num * (one - beta + lf - T::one());
    }
    let sign = if steps.is_multiple_of(2) { T::one() } else { -T::one() };
    let sf = int::<T>(steps as i64);
    let tail = incomplete_beta_continued(q, alpha + sf, beta - sf, tol)?;
    Ok(sum + num / den * tail * sign)
}

/// The mirrored recurrence lowering `alpha` (and raising `beta`) by `steps`:
///
/// `b_q(a, b) = sum_{l=1}^{steps} (-1)^l (1-a)_{l-1}/(b)_l q^{a-l} (1-q)^{b+l-1}
///            + (-1)^{steps} (1-a)_{steps}/(b)_{steps} b_q(a-steps, b+steps)`.
pub fn lower_alpha_recurrence<T: Real>(
    q: T,
    alpha: Complex<T>,
    beta: Complex<T>,
    steps: usize,
    tol: T,
) -> Result<Complex<T>> {
    check_upper(q)?;
    if steps == 0 {
        return Err(Error::ParamError("steps must be positive".into()));
    }
    let one = real(T::one());
    let (lq, l1q) = (q.ln(), (-q).ln_1p());
    let mut num = one; // (1-a)_{l-1}
    let mut den = one; // (b)_{l-1}
    let mut sum = real(T::zero());
    for l in 1..=steps {
        let lf = int::<T>(l as i64);
        den = den * (beta + lf - T::one());
        pole_check(den, &format!("(beta)_{l}"), false)?;
        let sign = if l % 2 == 0 { T::one() } else { -T::one() };
        let pw = ((alpha - lf) * lq + (beta + lf - T::one()) * l1q).exp();
        sum = sum + num / den * pw * sign;
        num = num * (one - alpha + lf - T::one());
    }
    let sign = if steps.is_multiple_of(2) { T::one() } else { -T::one() };
    let sf = int::<T>(steps as i64);
    let tail = incomplete_beta_continued(q, alpha - sf, beta + sf, tol)?;
    Ok(sum + num / den * tail * sign)
}

/// Elementary closed form
/// `b_q(alpha-nu+1, -alpha) = -sum_{r=0}^{nu-1} (-nu+1)_r/(-alpha)_{r+1} q^{alpha-nu+1} (1-q)^{-alpha+r}`.
pub fn closed_form_special<T: Real>(q: T, alpha: Complex<T>, nu: u32) -> Result<Complex<T>> {
    check_upper(q)?;
    if nu == 0 {
        return Err(Error::ParamError("nu must be positive".into()));
    }
    let (lq, l1q) = (q.ln(), (-q).ln_1p());
    let nu_c = real(int::<T>(nu as i64));
    let head = ((alpha - nu_c + T::one()) * lq).exp();
    let mut sum = real(T::zero());
    for r in 0..nu as usize {
        let den = pochhammer(-alpha, r + 1);
        pole_check(den, &format!("(-alpha)_{}", r + 1), true)?;
        let num = pochhammer(real(T::one()) - nu_c, r);
        sum = sum + num / den * ((-alpha + int::<T>(r as i64)) * l1q).exp();
    }
    Ok(-(head * sum))
}

/// Complete beta `Gamma(a) Gamma(b) / Gamma(a+b)`.
pub fn complete_beta<T: Real>(alpha: Complex<T>, beta: Complex<T>) -> Result<Complex<T>> {
    let tol = lit::<T>(POLE_THRESHOLD);
    let sum = alpha + beta;
    let pa = near_nonpositive_integer(alpha, tol);
    let pb = near_nonpositive_integer(beta, tol);
    let ps = near_nonpositive_integer(sum, tol);
    if (pa || pb) && !ps {
        return Err(Error::PoleError(format!("B({alpha}, {beta}) diverges")));
    }
    if pa || pb {
        return Err(Error::PoleError(format!("B({alpha}, {beta}) is an indeterminate Gamma quotient")));
    }
    if ps {
        return Ok(real(T::zero()));
    }
    Ok((ln_gamma(alpha) + ln_gamma(beta) - ln_gamma(sum)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn b(q: f64, a: Complex<f64>, bb: Complex<f64>) -> Complex<f64> {
        incomplete_beta(&IncBetaRequest::new(q, a, bb).unwrap(), 1e-13).unwrap()
    }

    #[test]
    fn elementary_examples() {
        assert!((b(0.5, c(1.0), c(1.0)) - c(0.5)).norm() < 1e-13);
        assert!((b(0.25, c(0.5), c(1.0)) - c(1.0)).norm() < 1e-12);
        // antiderivative u^2 (1-u)^{-2} / 2
        assert!((b(0.5, c(2.0), c(-2.0)) - c(0.5)).norm() < 1e-12);
    }

    #[test]
    fn domain_error_for_nonpositive_alpha() {
        let req = IncBetaRequest::new(0.5, c(-0.5), c(2.0)).unwrap();
        assert!(matches!(incomplete_beta(&req, 1e-12), Err(Error::DomainError(_))));
        assert!(IncBetaRequest::new(1.0, c(1.0), c(1.0)).is_err());
    }

    #[test]
    fn raise_reproduces_quadrature() {
        let (a, bb) = (Complex::new(0.7, 1.3), Complex::new(-0.4, 0.8));
        let direct = b(0.6, a, bb);
        for steps in 1..4 {
            let rec = raise_alpha_recurrence(0.6, a, bb, steps, 1e-13).unwrap();
            assert!((rec - direct).norm() < 1e-10, "steps={steps}");
        }
    }

    #[test]
    fn raise_continuation_matches_binomial_series() {
        // (1-u)^{1} expands exactly: sum_j C(1,j)(-1)^j q^{a+j}/(a+j)
        let (q, a) = (0.5f64, -0.5f64);
        let oracle = q.powf(a) / a - q.powf(a + 1.0) / (a + 1.0);
        let v = raise_alpha_recurrence(q, c(a), c(2.0), 2, 1e-13).unwrap();
        assert!((v - c(oracle)).norm() < 1e-11);
    }

    #[test]
    fn alpha_zero_is_a_pole() {
        let e = raise_alpha_recurrence(0.5, c(0.0), c(2.0), 1, 1e-12).unwrap_err();
        assert!(matches!(e, Error::PoleAtAlpha(_)));
    }

    #[test]
    fn lower_agrees_with_quadrature() {
        let direct = b(0.5, c(3.0), c(-1.5));
        let low = lower_alpha_recurrence(0.5, c(3.0), c(-1.5), 2, 1e-13).unwrap();
        assert!((low - direct).norm() < 1e-10);
        let one = lower_alpha_recurrence(0.5, c(3.0), c(-1.5), 1, 1e-13).unwrap();
        assert!((one - direct).norm() < 1e-10);
    }

    #[test]
    fn lower_then_raise_round_trip() {
        let (q, a, bb) = (0.45, Complex::new(2.6, 0.4), Complex::new(0.3, -1.1));
        let original = b(q, a, bb);
        let lowered = lower_alpha_recurrence(q, a, bb, 2, 1e-13).unwrap();
        // value of b(a-2, b+2) recovered, then raised back by 2
        let base = incomplete_beta_continued(q, a - 2.0, bb + 2.0, 1e-13).unwrap();
        let raised = raise_alpha_recurrence(q, a - 2.0, bb + 2.0, 2, 1e-13).unwrap();
        assert!((raised - base).norm() < 1e-10);
        assert!((lowered - original).norm() < 1e-10);
    }

    #[test]
    fn closed_form_examples() {
        let v = closed_form_special(0.5, c(2.0), 1).unwrap();
        assert!((v - c(0.5)).norm() < 1e-14);
        let v = closed_form_special(0.3, c(1.0), 1).unwrap();
        assert!((v - c(0.3 / 0.7)).norm() < 1e-14);
        // nu = 2, alpha = 3: b_q(2, -3) by both recurrences
        let cf = closed_form_special(0.5, c(3.0), 2).unwrap();
        let r = raise_alpha_recurrence(0.5, c(2.0), c(-3.0), 2, 1e-13).unwrap();
        let l = lower_alpha_recurrence(0.5, c(2.0), c(-3.0), 1, 1e-13).unwrap();
        assert!((cf - r).norm() < 1e-10);
        assert!((cf - l).norm() < 1e-10);
    }

    #[test]
    fn closed_form_nu_one_identity() {
        for i in 1..20 {
            let q = i as f64 / 21.0;
            for &a in &[0.3, 1.0, 2.5, 7.25] {
                let a = Complex::new(a, 0.7 * i as f64 - 5.0);
                let cf = closed_form_special(q, a, 1).unwrap();
                let id = (a * q.ln()).exp() * (-a * (1.0 - q).ln()).exp() / a;
                assert!((cf - id).norm() < 1e-12 * id.norm().max(1.0));
            }
        }
    }

    #[test]
    fn complete_beta_examples() {
        assert!((complete_beta(c(1.0), c(1.0)).unwrap() - c(1.0)).norm() < 1e-14);
        assert!((complete_beta(c(2.0), c(3.0)).unwrap() - c(1.0 / 12.0)).norm() < 1e-14);
        assert!((complete_beta(c(0.5), c(0.5)).unwrap() - c(std::f64::consts::PI)).norm() < 1e-13);
        assert!(matches!(complete_beta(c(-1.0), c(0.5)), Err(Error::PoleError(_))));
    }
}
