//! Euler-Maclaurin evaluation of `zeta_q^{(nu)}` with a certified remainder.
//!
//! With `f(x) = q^{x t} (1 - q^x)^{-s}`, `t = s - nu` and `Q = q^N`:
//!
//! `zeta = (1-q)^s { head - f(N)/2 + tail integral - Bernoulli terms + Fourier window } + R`.
//!
//! The tail integral is an incomplete beta value in elementary closed form. The
//! periodic Bernoulli remainder is expanded in Fourier modes `l`; each mode is an
//! incomplete beta `b_Q(t + j + delta l, 1 - s - j)` unrolled `M - 1` steps by
//! integration by parts. `R` collects the modes outside the window and the
//! unrolled remainders.

use num_complex::Complex;

use super::types::{EvalOutput, EvalParams, Strategy};
use crate::error::{Error, Result};
use crate::incbeta::closed_form_special;
use crate::qcore::{bernoulli, pochhammer, QParam};
use crate::scalar::{int, lit, real, Real};

/// Vanishing Pochhammer denominators below this are reported as poles.
const EM_POLE_THRESHOLD: f64 = 1e-12;

/// Coefficients `a_j^{(n)}`, `j = 0..=n`, with
/// `d^n/dx^n [q^{tx} (1-q^x)^{-s}] = (log q)^n sum_j a_j^{(n)} q^{(t+j)x} (1-q^x)^{-s-j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ACoeffTable<T: Real> {
    pub n: usize,
    pub entries: Vec<Complex<T>>,
}

/// Builds `a^{(n)}` by `a_j^{(n)} = (t+j) a_j^{(n-1)} + (s+j-1) a_{j-1}^{(n-1)}`, `a_0^{(0)} = 1`.
pub fn a_coeffs<T: Real>(n: usize, s: Complex<T>, t: Complex<T>) -> ACoeffTable<T> {
    a_coeff_levels(n, s, t).pop().expect("at least level 0")
}

/// All levels `a^{(0)} ..= a^{(n)}`.
fn a_coeff_levels<T: Real>(n: usize, s: Complex<T>, t: Complex<T>) -> Vec<ACoeffTable<T>> {
    let mut levels = vec![ACoeffTable { n: 0, entries: vec![real(T::one())] }];
    for m in 1..=n {
        let prev = &levels[m - 1].entries;
        let mut next = vec![real(T::zero()); m + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let jj = int::<T>(j as i64);
            if j < m {
                *slot = *slot + prev[j] * (t + jj);
            }
            if j > 0 {
                *slot = *slot + prev[j - 1] * (s + jj - T::one());
            }
        }
        levels.push(ACoeffTable { n: m, entries: next });
    }
    levels
}

fn check_admissible<T: Real>(s: Complex<T>, nu: u32, params: &EvalParams<T>) -> Result<()> {
    params.validate()?;
    if nu == 0 {
        return Err(Error::ParamError("nu must be at least 1".into()));
    }
    let bound = int::<T>(nu as i64 + 1 - params.depth as i64);
    if !(s.re > bound) {
        return Err(Error::ParamError(format!(
            "Euler-Maclaurin route needs Re(s) > nu + 1 - M = {bound}, got {}",
            s.re
        )));
    }
    Ok(())
}

fn pole_guard<T: Real>(z: Complex<T>, what: &str) -> Result<()> {
    if z.norm() < lit(EM_POLE_THRESHOLD) {
        return Err(Error::PoleProximity(format!("{what} vanishes")));
    }
    Ok(())
}

/// Evaluates `zeta_q^{(nu)}(s)` (trivial character) by the Euler-Maclaurin
/// formula; `bound` is [`remainder_bound`].
pub fn zeta_em<T: Real>(s: Complex<T>, nu: u32, q: &QParam<T>, params: &EvalParams<T>) -> Result<EvalOutput<T>> {
    check_admissible(s, nu, params)?;
    let (head_n, m_depth, order) = (params.head, params.depth, params.order);
    let lq = q.log_q();
    let nf = int::<T>(head_n as i64);
    let t = s - int::<T>(nu as i64);
    let one = real(T::one());
    let ln1m = |m: T| (-(m * lq).exp_m1()).ln();
    let ln1mq_n = ln1m(nf);
    // q^{N a} (1-Q)^{-b}
    let qn_pow = |a: Complex<T>, b: Complex<T>| (a * (nf * lq) - b * ln1mq_n).exp();

    let mut magnitude = T::zero();
    let mut head = real(T::zero());
    for m in 1..=head_n {
        let mf = int::<T>(m as i64);
        let term = (t * (mf * lq) - s * ln1m(mf)).exp();
        head = head + term;
        magnitude = magnitude + term.norm();
    }
    let half = qn_pow(t, s) * lit::<T>(0.5);

    let mut beta_term = real(T::zero());
    let nu_c = real(int::<T>(nu as i64));
    for r in 0..nu as usize {
        let den = pochhammer(one - s, r + 1);
        pole_guard(den, &format!("(1-s)_{}", r + 1))?;
        let rr = int::<T>(r as i64);
        beta_term = beta_term + pochhammer(one - nu_c, r) / den * qn_pow(t, s - T::one() - rr);
    }
    beta_term = beta_term / lq;

    let levels = a_coeff_levels(2 * order, s, t);
    let mut bern = real(T::zero());
    let mut fact = T::one();
    let mut lpow = lq;
    for k in 1..=order {
        let kk = 2 * k;
        fact = fact * int::<T>((kk - 1) as i64) * int::<T>(kk as i64);
        let coef = bernoulli::<T>(kk) / fact * lpow;
        for (j, a) in levels[kk - 1].entries.iter().enumerate() {
            let jj = int::<T>(j as i64);
            bern = bern + *a * coef * qn_pow(t + jj, s + jj);
        }
        lpow = lpow * lq * lq;
    }

    // Fourier window, paired l and -l so that conjugate s gives conjugate sums.
    let a2n = &levels[2 * order].entries;
    let delta = q.delta();
    let two_pi = T::PI() + T::PI();
    // l-independent factors a_j (-1)^k (s+j)_{k-1} Q^{t+j+k-1} (1-Q)^{1-s-j-k}
    let mut coef: Vec<Vec<Complex<T>>> = Vec::with_capacity(a2n.len());
    for (j, a) in a2n.iter().enumerate() {
        let jj = int::<T>(j as i64);
        let mut row = Vec::with_capacity(m_depth - 1);
        let mut num = *a;
        for k in 1..m_depth {
            let kk = int::<T>(k as i64) - T::one();
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            row.push(num * qn_pow(t + jj + kk, s + jj + kk) * sign);
            num = num * (s + jj + kk);
        }
        coef.push(row);
    }
    let sign_n = if order % 2 == 0 { T::one() } else { -T::one() };
    let mode = |l: i64| -> Result<Complex<T>> {
        let lf = int::<T>(l);
        // (2 pi i l)^{2n} = (-1)^n (2 pi l)^{2n}
        let denom_l = sign_n * (two_pi * lf).powi(2 * order as i32);
        let mut acc = real(T::zero());
        for (j, row) in coef.iter().enumerate() {
            let big_t = t + int::<T>(j as i64) + delta * lf;
            let mut den = one; // (T)_k
            for (k, c) in row.iter().enumerate() {
                den = den * (big_t + int::<T>(k as i64));
                if den.norm_sqr() < lit::<T>(EM_POLE_THRESHOLD * EM_POLE_THRESHOLD) {
                    return Err(Error::PoleProximity(format!(
                        "(t + j + delta l)_{} vanishes at j = {j}, l = {l}",
                        k + 1
                    )));
                }
                acc = acc + *c / den;
            }
        }
        Ok(acc / denom_l)
    };
    let mut four = real(T::zero());
    let lmax = params.l0.unsigned_abs().max(params.l1.unsigned_abs()) as i64;
    for l in 1..=lmax {
        let pos = if l >= params.l0 && l <= params.l1 { Some(mode(l)?) } else { None };
        let neg = if -l >= params.l0 && -l <= params.l1 { Some(mode(-l)?) } else { None };
        let pair = match (pos, neg) {
            (Some(a), Some(b)) => a + b,
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => continue,
        };
        four = four + pair;
    }
    four = four * lq.powi(2 * order as i32 - 1);

    let inner = head - half + beta_term - bern + four;
    let pref = (s * q.log_one_minus_q()).exp();
    magnitude = magnitude + half.norm() + beta_term.norm() + bern.norm() + four.norm();
    let bound = remainder_bound(s, nu, q, params)?;
    Ok(EvalOutput {
        value: pref * inner,
        bound: Some(bound),
        strategy: Strategy::EulerMaclaurin,
        terms_used: head_n,
        magnitude: magnitude * pref.norm(),
        params: Some(*params),
    })
}

/// `sum_{l > a} l^{-p}` for integer `a >= 1`, `p > 1`, bounded by the integral.
fn zeta_tail<T: Real>(a: i64, p: i32) -> T {
    let af = int::<T>(a.max(1));
    af.powi(1 - p) / int::<T>(p as i64 - 1)
}

/// Certified bound on `|R|` for [`zeta_em`].
///
/// Uses `|(t + j + delta l)_k| >= prod_i max(|Re t + j + i|, |Im t + l Im delta|)`;
/// modes beyond the explicit range are bounded through `|Im t + l Im delta| >= |l| d`
/// and `sum_{l > A} l^{-p} <= A^{1-p} / (p-1)`. Returns infinity when a factor vanishes.
pub fn remainder_bound<T: Real>(s: Complex<T>, nu: u32, q: &QParam<T>, params: &EvalParams<T>) -> Result<T> {
    check_admissible(s, nu, params)?;
    let (head_n, m_depth, order) = (params.head, params.depth, params.order);
    let lq = q.log_q();
    let nf = int::<T>(head_n as i64);
    let sigma = s.re;
    let tau = s.im;
    let re_t = sigma - int::<T>(nu as i64);
    let two_pi = T::PI() + T::PI();
    let p2n = 2 * order as i32;
    let delta_im = q.delta().im;
    let delta_abs = delta_im.abs();
    let big_q = (nf * lq).exp();
    let ln_q = nf * lq;
    let ln_1mq = (-(nf * lq).exp_m1()).ln();
    let t = s - int::<T>(nu as i64);
    let a = a_coeffs(2 * order, s, t).entries;
    let inf = T::infinity();

    // explicit range; beyond it |Im t + l Im delta| >= |l| |delta| / 2
    let l_base = (lit::<T>(2.0) * tau.abs() / delta_abs).ceil().to_i64().unwrap_or(i64::MAX / 4) + 1;
    let lambda = |j: usize, l: i64, k: usize| -> T {
        let im = (tau + int::<T>(l) * delta_im).abs();
        (0..k).fold(T::one(), |acc, i| acc * (re_t + int::<T>((j + i) as i64)).abs().max(im))
    };
    let re_prod =
        |j: usize, k: usize| -> T { (0..k).fold(T::one(), |acc, i| acc * (re_t + int::<T>((j + i) as i64)).abs()) };
    // sum over |l| > A of |l|^{-2n} / Lambda_k, one side
    let tail_side = |j: usize, k: usize, a_side: i64| -> T {
        let d = delta_abs - tau.abs() / int::<T>(a_side + 1);
        let mut best = inf;
        if d > T::zero() {
            best = zeta_tail::<T>(a_side, p2n + k as i32) / d.powi(k as i32);
        }
        let dk = re_prod(j, k);
        if dk > T::zero() {
            best = best.min(zeta_tail::<T>(a_side, p2n) / dk);
        }
        best
    };

    // sum over modes l != 0 outside `window` (given per side as m = |l| ranges)
    // of |l|^{-2n} / Lambda_k(j, l); None when a factor vanishes
    let side_sum = |j: usize, k: usize, sign: i64, win: Option<(i64, i64)>| -> Option<T> {
        let tail_from = l_base.max(win.map_or(0, |w| w.1));
        let mut acc = T::zero();
        let mut add = |m: i64| -> bool {
            let lam = lambda(j, sign * m, k);
            acc = acc + int::<T>(m).powi(-p2n) / lam;
            lam > T::zero()
        };
        let ranges = match win {
            Some((lo, hi)) => [(1, (lo - 1).min(tail_from)), (hi + 1, tail_from)],
            None => [(1, tail_from), (1, 0)],
        };
        for (from, to) in ranges {
            for m in from..=to {
                if !add(m) {
                    return None;
                }
            }
        }
        Some(acc + tail_side(j, k, tail_from))
    };
    let pos_win = (params.l1 >= 1).then(|| (params.l0.max(1), params.l1));
    let neg_win = (params.l0 <= -1).then(|| ((-params.l1).max(1), -params.l0));

    // modes outside the window, k = 1..M-1
    let mut t1 = T::zero();
    for (j, aj) in a.iter().enumerate() {
        let aj = aj.norm();
        if aj == T::zero() {
            continue;
        }
        let jj = int::<T>(j as i64);
        let mut sp = T::one(); // |(s+j)_{k-1}|
        for k in 1..m_depth {
            let kk = int::<T>(k as i64);
            let geo = (ln_q * (re_t - T::one() + jj + kk) - ln_1mq * (sigma + jj - T::one() + kk)).exp();
            let c = aj * sp * geo;
            if c > T::zero() {
                match (side_sum(j, k, 1, pos_win), side_sum(j, k, -1, neg_win)) {
                    (Some(x), Some(y)) => t1 = t1 + c * (x + y),
                    _ => return Ok(inf),
                }
            }
            sp = sp * (s + jj + kk - T::one()).norm();
        }
    }

    // unrolled remainders of every mode
    let mut t2 = T::zero();
    let km = m_depth - 1;
    for (j, aj) in a.iter().enumerate() {
        let aj = aj.norm();
        if aj == T::zero() {
            continue;
        }
        let jj = int::<T>(j as i64);
        let sp = pochhammer(s + jj, km).norm();
        let alpha = sigma + jj + int::<T>(m_depth as i64) - lit(2.0);
        let b = if big_q > T::zero() { closed_form_special(big_q, real(alpha), nu)?.re.abs() } else { T::zero() };
        let c = aj * sp * b;
        if c == T::zero() {
            continue;
        }
        match (side_sum(j, km, 1, None), side_sum(j, km, -1, None)) {
            (Some(x), Some(y)) => t2 = t2 + c * (x + y),
            _ => return Ok(inf),
        }
    }

    let pref = lq.abs().powi(p2n - 1) * (sigma * q.log_one_minus_q()).exp() / two_pi.powi(p2n);
    Ok(pref * (t1 + t2))
}

const MAX_HEAD: usize = 512;

fn search_params<T: Real>(
    s: Complex<T>,
    nu: u32,
    q: &QParam<T>,
    target: T,
    m_min: usize,
    head_cap: usize,
    tried: &mut usize,
) -> Option<EvalParams<T>> {
    const ORDERS: [usize; 7] = [1, 2, 3, 4, 5, 6, 8];
    const DEPTH_STEPS: [usize; 6] = [0, 1, 2, 4, 8, 16];
    const L_MAX: i64 = 4096;
    for &order in &ORDERS {
        for &dm in &DEPTH_STEPS {
            let depth = m_min + dm;
            let mut head = 1usize;
            while head <= head_cap {
                let wide = EvalParams { head, depth, order, l0: -L_MAX, l1: L_MAX, target };
                *tried += 1;
                // the widest window bounds what any window at this (N, M, n) can reach
                if matches!(remainder_bound(s, nu, q, &wide), Ok(b) if b < target) {
                    let mut l = 1i64;
                    while l <= L_MAX {
                        let p = EvalParams { l0: -l, l1: l, ..wide };
                        *tried += 1;
                        if matches!(remainder_bound(s, nu, q, &p), Ok(b) if b < target) {
                            return Some(p);
                        }
                        l *= 2;
                    }
                }
                head *= 2;
            }
        }
    }
    None
}

/// Searches `(N, M, n, window)` for a certified bound below `target`.
///
/// Escalation, innermost first: window `(-L, L)` doubling from 1, head cutoff `N`
/// doubling, depth `M`, Bernoulli order `n`. A first pass caps `N` where `q^{N Re t}`
/// would amplify rounding past the target. Deterministic.
pub fn auto_params<T: Real>(s: Complex<T>, nu: u32, q: &QParam<T>, target: T) -> Result<EvalParams<T>> {
    if !(target > T::zero()) {
        return Err(Error::ParamError("target must be positive".into()));
    }
    if target < lit(1e-16) {
        // below double-precision resolution of the formula
        return Err(Error::BudgetExceeded(0));
    }
    let m_min = {
        let f = (int::<T>(nu as i64 + 1) - s.re).floor().to_i64().unwrap_or(0) + 1;
        f.max(2) as usize
    };
    // For Re(t) < 0 the formula carries q^{N Re t}, which amplifies rounding. The
    // first pass keeps 16 eps q^{N Re t} below the target; the second drops the cap.
    let re_t = s.re - int::<T>(nu as i64);
    let head_cap = if re_t < T::zero() {
        let room = (target / (T::epsilon() * lit(16.0))).ln().max(T::zero());
        (room / (q.log_q() * re_t)).floor().to_usize().unwrap_or(usize::MAX).clamp(1, MAX_HEAD)
    } else {
        MAX_HEAD
    };
    let mut tried = 0usize;
    if let Some(p) = search_params(s, nu, q, target, m_min, head_cap, &mut tried) {
        return Ok(p);
    }
    if head_cap < MAX_HEAD {
        if let Some(p) = search_params(s, nu, q, target, m_min, MAX_HEAD, &mut tried) {
            return Ok(p);
        }
    }
    Err(Error::BudgetExceeded(tried))
}
