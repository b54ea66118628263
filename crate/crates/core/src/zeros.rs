//! Real and complex zeros of `zeta_q^{(nu)}`, their continuation in `q`, and grid scans.
//!
//! `zeta_q^{(nu)}(s) != 0` for `Re(s) >= 2 nu`; every search here refuses to report a
//! zero there.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qcore::QParam;
use crate::qzeta::{auto_params, evaluate, evaluate_with_derivative, SeriesSpec, ZetaOptions};
use crate::scalar::{cplx, int, lit, real, Real};

/// How a zero was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroMethod {
    Bisection,
    Newton,
    /// Newton restarted from a sign-change cell of a shrinking grid.
    Grid,
}

impl ZeroMethod {
    pub fn name(self) -> &'static str {
        match self {
            ZeroMethod::Bisection => "bisection",
            ZeroMethod::Newton => "newton",
            ZeroMethod::Grid => "grid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero<T: Real> {
    pub s: Complex<T>,
    pub q: T,
    pub nu: u32,
    /// `|zeta_q^{(nu)}(s)|` at the reported point.
    pub residual: T,
    pub method: ZeroMethod,
    pub iterations: usize,
}

/// Controls for the zero finders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroOptions<T: Real> {
    /// Residual `|zeta|` accepted as a zero (complex search) or bracket width (bisection).
    pub tol: T,
    pub max_iter: usize,
    pub eval: ZetaOptions<T>,
}

impl<T: Real> Default for ZeroOptions<T> {
    fn default() -> Self {
        Self { tol: lit(1e-8), max_iter: 50, eval: ZetaOptions::default() }
    }
}

fn zero_free_edge<T: Real>(nu: u32) -> T {
    int(2 * nu as i64)
}

fn eval_at<T: Real>(s: Complex<T>, nu: u32, q: &QParam<T>, opts: &ZetaOptions<T>) -> Result<Complex<T>> {
    Ok(evaluate(&SeriesSpec::ZetaNu { s, nu }, q, opts)?.value)
}

/// Bisection on the real axis.
pub fn find_real_zero<T: Real>(nu: u32, q: &QParam<T>, bracket: (T, T), opts: &ZeroOptions<T>) -> Result<Zero<T>> {
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    if hi > zero_free_edge(nu) {
        return Err(Error::EnteredZeroFreeRegion(format!("bracket [{lo}, {hi}] reaches Re(s) >= {}", 2 * nu)));
    }
    for p in 1..=nu {
        let pf = int::<T>(p as i64);
        if lo <= pf && pf <= hi {
            return Err(Error::BracketContainsPole(format!("s = {p}")));
        }
    }
    let sign_at = |x: T| -> Result<T> {
        match eval_at(real(x), nu, q, &opts.eval) {
            Ok(v) => Ok(v.re),
            Err(Error::PoleProximity(m)) => Err(Error::BracketContainsPole(m)),
            Err(e) => Err(e),
        }
    };
    let mut f_lo = sign_at(lo)?;
    let f_hi = sign_at(hi)?;
    if f_lo == T::zero() {
        return Ok(Zero {
            s: real(lo),
            q: q.q(),
            nu,
            residual: T::zero(),
            method: ZeroMethod::Bisection,
            iterations: 0,
        });
    }
    if f_hi == T::zero() {
        return Ok(Zero {
            s: real(hi),
            q: q.q(),
            nu,
            residual: T::zero(),
            method: ZeroMethod::Bisection,
            iterations: 0,
        });
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return Err(Error::NoSignChange);
    }
    let mut iterations = 0;
    while hi - lo > opts.tol && iterations < 200 {
        let mid = (lo + hi) * lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = sign_at(mid)?;
        iterations += 1;
        if f_mid == T::zero() {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let s = real((lo + hi) * lit(0.5));
    let residual = eval_at(s, nu, q, &opts.eval)?.norm();
    Ok(Zero { s, q: q.q(), nu, residual, method: ZeroMethod::Bisection, iterations })
}

/// Largest Newton step; longer steps are scaled down.
const MAX_NEWTON_STEP: f64 = 1.0;
/// Grid fallback: half-width of the first box, nodes per side, and levels.
const GRID_HALF_WIDTH: f64 = 0.5;
const GRID_NODES: usize = 13;
const GRID_LEVELS: usize = 6;

struct NewtonRun<T: Real> {
    s: Complex<T>,
    residual: T,
    iterations: usize,
}

/// Nearest genuine pole `nu - r + k delta` of `zeta_q^{(nu)}` within half a lattice
/// spacing of `s`. Points with `k = 0` and `r >= nu` are removable and skipped.
fn nearby_pole<T: Real>(s: Complex<T>, nu: u32, q: &QParam<T>) -> Option<Complex<T>> {
    let delta = q.delta();
    let k = (s.im / delta.im).round();
    let r = (int::<T>(nu as i64) - s.re).round().max(T::zero());
    if k == T::zero() && r >= int(nu as i64) {
        return None;
    }
    let p = cplx(int::<T>(nu as i64) - r, k * delta.im);
    let radius = (delta.im.abs().min(T::one())) * lit(0.5);
    ((s - p).norm() < radius).then_some(p)
}

fn newton<T: Real>(
    nu: u32,
    q: &QParam<T>,
    guess: Complex<T>,
    opts: &ZeroOptions<T>,
) -> std::result::Result<NewtonRun<T>, (Error, usize)> {
    let edge = zero_free_edge::<T>(nu);
    let mut eval = opts.eval;
    let mut s = guess;
    // Newton on (s - p) zeta(s) keeps iterates from being thrown off by a pole p
    // sitting next to the zero; the zeros are unchanged.
    let pole = nearby_pole(guess, nu, q);
    for it in 0..opts.max_iter {
        let (out, ds) = evaluate_with_derivative(&SeriesSpec::ZetaNu { s, nu }, q, &eval).map_err(|e| (e, it))?;
        // reuse certified parameters at nearby iterates
        eval.em_params = out.params.or(eval.em_params);
        let residual = out.value.norm();
        if residual < opts.tol {
            return Ok(NewtonRun { s, residual, iterations: it });
        }
        let mut step = match pole {
            Some(p) => out.value * (s - p) / (ds * (s - p) + out.value),
            None => out.value / ds,
        };
        if !(step.re.is_finite() && step.im.is_finite()) {
            return Err((Error::NotConverged(format!("vanishing derivative at s = {s}")), it));
        }
        let len = step.norm();
        if len > lit(MAX_NEWTON_STEP) {
            step = step * (lit::<T>(MAX_NEWTON_STEP) / len);
        }
        let mut next = s - step;
        let mut halvings = 0;
        while next.re >= edge && halvings < 8 {
            step = step * lit::<T>(0.5);
            next = s - step;
            halvings += 1;
        }
        if next.re >= edge {
            return Err((Error::EnteredZeroFreeRegion(format!("Newton iterate {next}")), it));
        }
        s = next;
    }
    Err((Error::NotConverged(format!("{} Newton iterations from {guess}", opts.max_iter)), opts.max_iter))
}

fn grid_locate<T: Real>(nu: u32, q: &QParam<T>, centre: Complex<T>, opts: &ZeroOptions<T>) -> Option<Complex<T>> {
    let edge = zero_free_edge::<T>(nu);
    let mut centre = centre;
    let mut half = lit::<T>(GRID_HALF_WIDTH);
    let n = GRID_NODES;
    for _ in 0..GRID_LEVELS {
        let lo = centre - cplx(half, half);
        let h = half * lit(2.0) / int::<T>(n as i64 - 1);
        let nodes: Vec<Complex<T>> =
            (0..n * n).map(|idx| lo + cplx(h * int((idx % n) as i64), h * int((idx / n) as i64))).collect();
        let values: Vec<Option<Complex<T>>> =
            nodes.par_iter().map(|&s| if s.re >= edge { None } else { eval_at(s, nu, q, &opts.eval).ok() }).collect();
        let grid = ScanGrid { nx: n, ny: n, lo, step: cplx(h, h), values };
        let best = grid
            .sign_change_cells()
            .into_iter()
            .map(|c| (c.centre(), (c.centre() - centre).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))?;
        centre = best.0;
        half = h;
    }
    Some(centre)
}

/// Newton from `guess`; on failure, a shrinking grid of sign-change cells around
/// `guess` supplies a new start for a second Newton run.
pub fn find_complex_zero<T: Real>(nu: u32, q: &QParam<T>, guess: Complex<T>, opts: &ZeroOptions<T>) -> Result<Zero<T>> {
    if guess.re >= zero_free_edge(nu) {
        return Err(Error::EnteredZeroFreeRegion(format!("guess {guess}")));
    }
    let first = match newton(nu, q, guess, opts) {
        Ok(run) => {
            return Ok(Zero {
                s: run.s,
                q: q.q(),
                nu,
                residual: run.residual,
                method: ZeroMethod::Newton,
                iterations: run.iterations,
            })
        }
        Err(e) => e,
    };
    let Some(start) = grid_locate(nu, q, guess, opts) else {
        return Err(first.0);
    };
    match newton(nu, q, start, opts) {
        Ok(run) => Ok(Zero {
            s: run.s,
            q: q.q(),
            nu,
            residual: run.residual,
            method: ZeroMethod::Grid,
            iterations: first.1 + run.iterations,
        }),
        Err((e, _)) => Err(e),
    }
}

/// Descending sequence of `q` values in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QSchedule<T: Real> {
    points: Vec<T>,
}

impl<T: Real> QSchedule<T> {
    pub fn new(points: Vec<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ParamError("empty q schedule".into()));
        }
        for w in points.windows(2) {
            if !(w[1] < w[0]) {
                return Err(Error::ParamError(format!("q schedule not strictly decreasing at {} -> {}", w[0], w[1])));
            }
        }
        if let Some(bad) = points.iter().find(|&&q| !(q > T::zero() && q < T::one())) {
            return Err(Error::InvalidQ(bad.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { points })
    }

    /// `0.99, 0.98, ..., 0.01` followed by `1e-3, 1e-4, 1e-5`.
    pub fn standard() -> Self {
        let mut points: Vec<T> = (1..=99).rev().map(|k| int::<T>(k) / int::<T>(100)).collect();
        points.extend([lit::<T>(1e-3), lit(1e-4), lit(1e-5)]);
        Self { points }
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointStatus {
    Converged,
    /// Converged after inserting intermediate `q` values.
    RefinedAfterRestart,
    Lost,
}

impl PointStatus {
    pub fn name(self) -> &'static str {
        match self {
            PointStatus::Converged => "converged",
            PointStatus::RefinedAfterRestart => "refined",
            PointStatus::Lost => "lost",
        }
    }

    pub fn is_converged(self) -> bool {
        self != PointStatus::Lost
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint<T: Real> {
    pub q: T,
    /// For a lost point: the last attempted location and its residual.
    pub zero: Zero<T>,
    pub status: PointStatus,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T: Real> {
    pub nu: u32,
    /// The zero at `q = 1`.
    pub origin: Complex<T>,
    pub points: Vec<TrajectoryPoint<T>>,
}

impl<T: Real> Trajectory<T> {
    /// `|Delta s / Delta q|` between point `i - 1` and point `i`.
    pub fn slope_at(&self, i: usize) -> Option<T> {
        if i == 0 || i >= self.points.len() {
            return None;
        }
        let (a, b) = (&self.points[i - 1], &self.points[i]);
        if !a.status.is_converged() || !b.status.is_converged() {
            return None;
        }
        Some((b.zero.s - a.zero.s).norm() / (b.q - a.q).abs())
    }

    pub fn index_of_q(&self, q: T) -> Option<usize> {
        self.points.iter().position(|p| (p.q - q).abs() <= q * lit(1e-12))
    }

    pub fn converged_fraction(&self) -> T {
        let n = self.points.iter().filter(|p| p.status.is_converged()).count();
        int::<T>(n as i64) / int::<T>(self.points.len().max(1) as i64)
    }
}

/// Continuation controls for [`track_trajectory`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackOptions<T: Real> {
    pub zero: ZeroOptions<T>,
    /// Maximum number of geometric bisections of a failing `q` step.
    pub max_subdivisions: usize,
    /// A step is rejected when it moves farther than this multiple of the
    /// previous step, rescaled to the new `q` increment.
    pub jump_factor: T,
    /// Steps shorter than this are never rejected as jumps.
    pub min_jump: T,
    /// Jump radius for the first step off the origin.
    pub first_jump: T,
}

impl<T: Real> Default for TrackOptions<T> {
    fn default() -> Self {
        Self {
            zero: ZeroOptions::default(),
            max_subdivisions: 8,
            jump_factor: lit(10.0),
            min_jump: lit(0.05),
            first_jump: lit(1.0),
        }
    }
}

struct Anchor<T: Real> {
    q: T,
    s: Complex<T>,
    /// Previous accepted step: `(|Delta s|, |Delta q|)` and the point before.
    prev: Option<(T, T, Complex<T>, T)>,
}

impl<T: Real> Anchor<T> {
    fn guess(&self, q_new: T) -> Complex<T> {
        match self.prev {
            // secant predictor through the last two accepted points
            Some((_, _, s_prev, q_prev)) => self.s + (self.s - s_prev) * ((q_new - self.q) / (self.q - q_prev)),
            None => self.s,
        }
    }

    fn jump_limit(&self, q_new: T, opts: &TrackOptions<T>) -> T {
        match self.prev {
            Some((ds, dq, _, _)) => {
                let scale = ((q_new - self.q).abs() / dq).max(T::one());
                (opts.jump_factor * ds * scale).max(opts.min_jump)
            }
            None => opts.first_jump,
        }
    }

    fn advance(&mut self, q_new: T, s_new: Complex<T>) {
        let step = ((s_new - self.s).norm(), (q_new - self.q).abs(), self.s, self.q);
        self.prev = Some(step);
        self.q = q_new;
        self.s = s_new;
    }
}

fn try_step<T: Real>(nu: u32, anchor: &Anchor<T>, q_new: T, opts: &TrackOptions<T>) -> Result<Zero<T>> {
    let qp = QParam::new(q_new)?;
    let guess = anchor.guess(q_new);
    let z = find_complex_zero(nu, &qp, guess, &opts.zero)?;
    let moved = (z.s - anchor.s).norm();
    let limit = anchor.jump_limit(q_new, opts);
    if moved > limit {
        return Err(Error::NotConverged(format!("jump of {moved} exceeds {limit}")));
    }
    Ok(z)
}

/// Continues the zero starting at `origin` (`q = 1`) along `schedule`.
pub fn track_trajectory<T: Real>(
    nu: u32,
    origin: Complex<T>,
    schedule: &QSchedule<T>,
    opts: &TrackOptions<T>,
) -> Trajectory<T> {
    let mut anchor = Anchor { q: T::one(), s: origin, prev: None };
    let mut points = Vec::with_capacity(schedule.len());
    for &q_target in schedule.points() {
        let mut restarted = false;
        let mut depth = 0usize;
        let mut q_goal = q_target;
        let outcome = loop {
            match try_step(nu, &anchor, q_goal, opts) {
                Ok(z) => {
                    anchor.advance(q_goal, z.s);
                    if q_goal == q_target {
                        break Ok(z);
                    }
                    // resume toward the scheduled point
                    q_goal = q_target;
                    depth = depth.saturating_sub(1);
                }
                Err(e) => {
                    if depth >= opts.max_subdivisions {
                        break Err(e);
                    }
                    restarted = true;
                    depth += 1;
                    q_goal = (anchor.q * q_goal).sqrt();
                }
            }
        };
        let point = match outcome {
            Ok(zero) => TrajectoryPoint {
                q: q_target,
                zero,
                status: if restarted { PointStatus::RefinedAfterRestart } else { PointStatus::Converged },
                note: None,
            },
            Err(e) => {
                let s = anchor.s;
                let residual = QParam::new(q_target)
                    .and_then(|qp| eval_at(s, nu, &qp, &opts.zero.eval))
                    .map(|v| v.norm())
                    .unwrap_or(T::infinity());
                TrajectoryPoint {
                    q: q_target,
                    zero: Zero { s, q: q_target, nu, residual, method: ZeroMethod::Newton, iterations: 0 },
                    status: PointStatus::Lost,
                    note: Some(e.to_string()),
                }
            }
        };
        points.push(point);
    }
    Trajectory { nu, origin, points }
}

/// Limit classification of a trajectory's smallest-`q` end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrystalClass<T: Real> {
    pub nearest_integer: i64,
    pub final_distance: T,
    /// `|Delta s / Delta q|` over the last two points.
    pub tangency_slope: T,
}

/// Nearest integer to the end point, its distance, and the final slope.
pub fn crystal_classifier<T: Real>(traj: &Trajectory<T>) -> Result<CrystalClass<T>> {
    let n = traj.points.len();
    if n < 3 || traj.points[n - 3..].iter().any(|p| !p.status.is_converged()) {
        return Err(Error::InsufficientData("need three converged points at the smallest q values".into()));
    }
    let last = traj.points[n - 1].zero.s;
    let nearest = last.re.round();
    Ok(CrystalClass {
        nearest_integer: nearest.to_i64().unwrap_or(0),
        final_distance: (last - nearest).norm(),
        tangency_slope: traj.slope_at(n - 1).unwrap_or(T::nan()),
    })
}

/// What [`scan_rectangle`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Cells where both `Re zeta` and `Im zeta` change sign.
    Candidates,
    /// `log10 |zeta|` on every node.
    Field,
}

/// Values of `zeta_q^{(nu)}` on an `nx` by `ny` node lattice, row-major in `Im`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid<T: Real> {
    pub nx: usize,
    pub ny: usize,
    pub lo: Complex<T>,
    /// Node spacing: real part along `Re s`, imaginary part along `Im s`.
    pub step: Complex<T>,
    /// `None` where the node was skipped (pole or failed evaluation).
    pub values: Vec<Option<Complex<T>>>,
}

/// A grid cell with lower-left node `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell<T: Real> {
    pub i: usize,
    pub j: usize,
    pub lo: Complex<T>,
    pub hi: Complex<T>,
}

impl<T: Real> Cell<T> {
    pub fn centre(&self) -> Complex<T> {
        (self.lo + self.hi) * lit::<T>(0.5)
    }

    pub fn contains(&self, s: Complex<T>) -> bool {
        s.re >= self.lo.re && s.re <= self.hi.re && s.im >= self.lo.im && s.im <= self.hi.im
    }
}

impl<T: Real> ScanGrid<T> {
    pub fn node(&self, i: usize, j: usize) -> Complex<T> {
        self.lo + cplx(self.step.re * int(i as i64), self.step.im * int(j as i64))
    }

    pub fn value(&self, i: usize, j: usize) -> Option<Complex<T>> {
        self.values[j * self.nx + i]
    }

    pub fn log10_abs(&self, i: usize, j: usize) -> Option<T> {
        self.value(i, j).map(|v| v.norm().log10())
    }

    /// Smallest `log10 |zeta|` over evaluated nodes.
    pub fn min_log10_abs(&self) -> Option<T> {
        self.values.iter().flatten().map(|v| v.norm().log10()).fold(None, |m, x| match m {
            Some(m) if m <= x => Some(m),
            _ => Some(x),
        })
    }

    /// Interior nodes where `|zeta|` is strictly below all evaluated neighbours.
    pub fn local_minima(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..self.ny.saturating_sub(1) {
            for i in 1..self.nx.saturating_sub(1) {
                let Some(centre) = self.value(i, j).map(|v| v.norm()) else { continue };
                let lower = (j - 1..=j + 1)
                    .flat_map(|jj| (i - 1..=i + 1).map(move |ii| (ii, jj)))
                    .filter(|&(ii, jj)| (ii, jj) != (i, j))
                    .all(|(ii, jj)| self.value(ii, jj).is_none_or(|v| centre < v.norm()));
                if lower {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cells whose four corners carry both signs of `Re zeta` and of `Im zeta`.
    pub fn sign_change_cells(&self) -> Vec<Cell<T>> {
        let mut out = Vec::new();
        for j in 0..self.ny.saturating_sub(1) {
            for i in 0..self.nx.saturating_sub(1) {
                let corners = [self.value(i, j), self.value(i + 1, j), self.value(i, j + 1), self.value(i + 1, j + 1)];
                if corners.iter().any(Option::is_none) {
                    continue;
                }
                let v: Vec<Complex<T>> = corners.iter().flatten().copied().collect();
                let changes = |f: &dyn Fn(&Complex<T>) -> T| {
                    v.iter().any(|z| f(z) > T::zero()) && v.iter().any(|z| f(z) <= T::zero())
                };
                if changes(&|z| z.re) && changes(&|z| z.im) {
                    out.push(Cell { i, j, lo: self.node(i, j), hi: self.node(i + 1, j + 1) });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult<T: Real> {
    pub grid: ScanGrid<T>,
    /// Sign-change cells (candidates mode only).
    pub candidates: Vec<Cell<T>>,
    pub warnings: Vec<String>,
    /// Nodes skipped because of poles or failed evaluations.
    pub skipped: usize,
}

/// Evaluates `zeta_q^{(nu)}` on an `nx` by `ny` lattice of nodes spanning `rect`.
///
/// In candidates mode the part of `rect` in `Re(s) >= 2 nu` is clipped away with a
/// warning. Poles skip their node instead of aborting.
pub fn scan_rectangle<T: Real>(
    nu: u32,
    q: &QParam<T>,
    rect: (Complex<T>, Complex<T>),
    grid: (usize, usize),
    mode: ScanMode,
    opts: &ZetaOptions<T>,
) -> Result<ScanResult<T>> {
    let (nx, ny) = grid;
    if nx < 2 || ny < 2 {
        return Err(Error::ParamError("scan grid needs at least 2 nodes per side".into()));
    }
    let lo = cplx(rect.0.re.min(rect.1.re), rect.0.im.min(rect.1.im));
    let mut hi = cplx(rect.0.re.max(rect.1.re), rect.0.im.max(rect.1.im));
    if !(hi.re > lo.re && hi.im > lo.im) {
        return Err(Error::ParamError("scan rectangle has empty interior".into()));
    }
    let mut warnings = Vec::new();
    let edge = zero_free_edge::<T>(nu);
    let empty = |warnings| ScanResult {
        grid: ScanGrid { nx: 0, ny: 0, lo, step: real(T::zero()), values: vec![] },
        candidates: vec![],
        warnings,
        skipped: 0,
    };
    if mode == ScanMode::Candidates && hi.re >= edge {
        if lo.re >= edge {
            warnings.push(format!("rectangle lies in the zero-free region Re(s) >= {}; nothing to scan", 2 * nu));
            return Ok(empty(warnings));
        }
        warnings.push(format!("clipped Re(s) >= {} (zero-free region)", 2 * nu));
        // keep the clipped edge strictly inside the region that can hold zeros
        let h = (edge - lo.re) / int::<T>(nx as i64);
        hi.re = edge - h * lit(0.5);
    }
    let step = cplx((hi.re - lo.re) / int::<T>(nx as i64 - 1), (hi.im - lo.im) / int::<T>(ny as i64 - 1));
    let seed = ScanGrid { nx, ny, lo, step, values: vec![] };

    // share certified parameters found at the hardest corner
    let mut eval = *opts;
    if eval.em_params.is_none() {
        let corner = cplx(lo.re, hi.im.abs().max(lo.im.abs()));
        eval.em_params = auto_params(corner, nu, q, eval.em_target).ok();
    }
    let values: Vec<Option<Complex<T>>> =
        (0..nx * ny).into_par_iter().map(|idx| eval_at(seed.node(idx % nx, idx / nx), nu, q, &eval).ok()).collect();
    let skipped = values.iter().filter(|v| v.is_none()).count();
    if skipped > 0 {
        warnings.push(format!("{skipped} nodes skipped (poles or failed evaluations)"));
    }
    let grid = ScanGrid { values, ..seed };
    let candidates = if mode == ScanMode::Candidates { grid.sign_change_cells() } else { Vec::new() };
    let touching = candidates
        .iter()
        .enumerate()
        .any(|(k, a)| candidates[k + 1..].iter().any(|b| a.i.abs_diff(b.i) <= 1 && a.j.abs_diff(b.j) <= 1));
    if touching {
        warnings.push("GridTooCoarse: adjacent candidate cells".into());
    }
    Ok(ScanResult { grid, candidates, warnings, skipped })
}
