//! One function per subcommand, each producing a [`Report`].

use anyhow::{bail, Result};
use qzeta::qcore::QParam;
use qzeta::qzeta::{
    auto_params, crystal_value, evaluate, remainder_bound, special_value_neg_int, zeta_em, EvalParams, SeriesSpec,
    ZetaOptions,
};
use qzeta::reference::{dirichlet_l, hurwitz_zeta, riemann_zeta};
use qzeta::zeros::{
    crystal_classifier, find_complex_zero, find_real_zero, scan_rectangle, track_trajectory, ScanMode, TrackOptions,
    ZeroOptions,
};
use qzeta::{Complex64, EvalOutput64};

use crate::args::{
    CertifyArgs, CompareArgs, CrystalArgs, EvalArgs, Kind, ModeArg, ScanArgs, SpecialArgs, TrajectoryArgs, ZeroArgs,
};
use crate::output::{fmt_float, Cell, Report};
use crate::parse::{display_complex, display_float, CharArg};
use crate::UsageError;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn echo_common(r: &mut Report, format: crate::output::Format) {
    r.param("format", format.name());
}

const VALUE_COLUMNS: [&str; 2] = ["re", "im"];

fn spec_for(a: &EvalArgs, r: &mut Report) -> Result<SeriesSpec<f64>> {
    let s = a.s;
    let chi = || a.chi.clone().unwrap_or_else(CharArg::trivial);
    let need_t = || a.t.ok_or_else(|| usage(format!("--kind {} needs --t", a.kind.name())));
    let unused = |flags: &[(&str, bool)]| -> Result<()> {
        match flags.iter().find(|(_, given)| *given) {
            Some((name, _)) => Err(usage(format!("--{name} does not apply to --kind {}", a.kind.name()))),
            None => Ok(()),
        }
    };
    Ok(match a.kind {
        Kind::Zeta => {
            unused(&[("mu", a.mu.is_some()), ("t", a.t.is_some()), ("chi", a.chi.is_some()), ("a", a.a.is_some())])?;
            let nu = a.nu.unwrap_or(1);
            r.param("nu", nu);
            SeriesSpec::ZetaNu { s, nu }
        }
        Kind::L => {
            unused(&[("t", a.t.is_some()), ("a", a.a.is_some())])?;
            let chi = a.chi.clone().ok_or_else(|| usage("--kind L needs --chi"))?;
            r.param("chi", &chi.source);
            match (a.nu, a.mu) {
                (Some(_), Some(_)) => bail!(usage("give either --nu or --mu, not both")),
                (None, Some(mu)) => {
                    r.param("mu", mu);
                    SeriesSpec::LMu { s, mu, chi: chi.chi }
                }
                (nu, None) => {
                    let nu = nu.unwrap_or(1);
                    r.param("nu", nu);
                    SeriesSpec::LNu { s, nu, chi: chi.chi }
                }
            }
        }
        Kind::F => {
            unused(&[("nu", a.nu.is_some()), ("mu", a.mu.is_some()), ("a", a.a.is_some())])?;
            let (t, chi) = (need_t()?, chi());
            r.param("t", display_complex(t));
            r.param("chi", &chi.source);
            SeriesSpec::FChi { s, t, chi: chi.chi }
        }
        Kind::G => {
            unused(&[("nu", a.nu.is_some()), ("mu", a.mu.is_some()), ("chi", a.chi.is_some())])?;
            let (t, shift) = (need_t()?, a.a.unwrap_or(1.0));
            r.param("t", display_complex(t));
            r.param("a", display_float(shift));
            SeriesSpec::GHurwitz { s, t, a: shift }
        }
        Kind::Tsumura => {
            unused(&[("nu", a.nu.is_some()), ("t", a.t.is_some()), ("chi", a.chi.is_some())])?;
            let (mu, shift) = (a.mu.unwrap_or(1), a.a.unwrap_or(1.0));
            r.param("mu", mu);
            r.param("a", display_float(shift));
            SeriesSpec::Tsumura { s, mu, a: shift }
        }
    })
}

fn params_cells(p: Option<EvalParams<f64>>) -> Vec<Cell> {
    match p {
        Some(p) => vec![p.head.into(), p.depth.into(), p.order.into(), p.l0.into(), p.l1.into()],
        None => vec![Cell::Missing; 5],
    }
}

pub fn eval(a: &EvalArgs) -> Result<Report> {
    let mut r = Report::new(
        "eval",
        &["re", "im", "bound", "strategy", "terms_used", "rounding_estimate", "head", "depth", "order", "l0", "l1"],
    );
    r.param("kind", a.kind.name());
    r.param("s", display_complex(a.s));
    r.param("q", display_float(a.q));
    let spec = spec_for(a, &mut r)?;
    r.param("strategy", a.strategy.name());
    r.param("tol", display_float(a.tol));
    r.param("em-target", display_float(a.em_target));
    echo_common(&mut r, a.common.format);
    let q = QParam::new(a.q)?;
    let opts = ZetaOptions {
        em_target: a.em_target,
        ..ZetaOptions::default().with_strategy(a.strategy.strategy()).with_tol(a.tol)
    };
    let out: EvalOutput64 = evaluate(&spec, &q, &opts)?;
    r.note("strategy", out.strategy.name());
    let mut row = vec![
        out.value.re.into(),
        out.value.im.into(),
        out.bound.into(),
        out.strategy.name().into(),
        out.terms_used.into(),
        out.rounding_estimate().into(),
    ];
    row.extend(params_cells(out.params));
    r.row(row);
    Ok(r)
}

pub fn certify(a: &CertifyArgs) -> Result<Report> {
    let mut r = Report::new(
        "certify",
        &["head", "depth", "order", "l0", "l1", "bound", "meets_target", "re", "im", "rounding_estimate"],
    );
    r.param("s", display_complex(a.s));
    r.param("q", display_float(a.q));
    r.param("nu", a.nu);
    r.param("target", display_float(a.target));
    let q = QParam::new(a.q)?;
    let params = match (a.head, a.depth, a.order) {
        (Some(head), Some(depth), Some(order)) => {
            r.param("head", head);
            r.param("depth", depth);
            r.param("order", order);
            r.param("window", a.window);
            let p = EvalParams { head, depth, order, l0: -a.window, l1: a.window, target: a.target };
            p.validate()?;
            r.note("mode", "check");
            p
        }
        _ => {
            r.note("mode", "search");
            auto_params(a.s, a.nu, &q, a.target)?
        }
    };
    echo_common(&mut r, a.common.format);
    r.note("strategy", "euler-maclaurin");
    let bound = remainder_bound(a.s, a.nu, &q, &params)?;
    let out = zeta_em(a.s, a.nu, &q, &params)?;
    let mut row = params_cells(Some(params));
    row.extend([
        bound.into(),
        (bound < a.target).into(),
        out.value.re.into(),
        out.value.im.into(),
        out.rounding_estimate().into(),
    ]);
    r.row(row);
    Ok(r)
}

pub fn zero(a: &ZeroArgs) -> Result<Report> {
    let mut r = Report::new("zero", &["re_s", "im_s", "residual", "method", "iterations"]);
    r.param("q", display_float(a.q));
    r.param("nu", a.nu);
    let q = QParam::new(a.q)?;
    let opts = ZeroOptions { tol: a.tol, ..ZeroOptions::default() };
    let z = match (a.guess, a.bracket) {
        (Some(g), _) => {
            r.param("guess", display_complex(g));
            r.param("tol", display_float(a.tol));
            find_complex_zero(a.nu, &q, g, &opts)?
        }
        (None, Some(b)) => {
            r.param("bracket", display_complex(b));
            r.param("tol", display_float(a.tol));
            find_real_zero(a.nu, &q, (b.re, b.im), &opts)?
        }
        (None, None) => bail!(usage("give --guess or --bracket")),
    };
    echo_common(&mut r, a.common.format);
    r.note("strategy", opts.eval.strategy.name());
    r.row(vec![z.s.re.into(), z.s.im.into(), z.residual.into(), z.method.name().into(), z.iterations.into()]);
    Ok(r)
}

pub fn trajectory(a: &TrajectoryArgs) -> Result<Report> {
    let mut r =
        Report::new("trajectory", &["q", "re_s", "im_s", "residual", "status", "newton_iters", "slope_estimate"]);
    r.param("origin", &a.origin.source);
    r.param("nu", a.nu);
    r.param("schedule", &a.schedule.source);
    r.param("tol", display_float(a.tol));
    echo_common(&mut r, a.common.format);
    let opts = TrackOptions { zero: ZeroOptions { tol: a.tol, ..ZeroOptions::default() }, ..TrackOptions::default() };
    r.note("strategy", opts.zero.eval.strategy.name());
    let traj = track_trajectory(a.nu, a.origin.s, &a.schedule.schedule, &opts);
    for (i, p) in traj.points.iter().enumerate() {
        r.row(vec![
            p.q.into(),
            p.zero.s.re.into(),
            p.zero.s.im.into(),
            p.zero.residual.into(),
            p.status.name().into(),
            p.zero.iterations.into(),
            traj.slope_at(i).into(),
        ]);
    }
    let lost = traj.points.iter().filter(|p| !p.status.is_converged()).count();
    r.note("lost_points", lost);
    let summary = match crystal_classifier(&traj) {
        Ok(c) => format!(
            "nearest_integer={} final_distance={} tangency_slope={}",
            c.nearest_integer,
            fmt_float(c.final_distance),
            fmt_float(c.tangency_slope)
        ),
        Err(e) => format!("unavailable: {e}"),
    };
    r.footer.push(("crystal".into(), summary));
    Ok(r)
}

pub fn scan(a: &ScanArgs) -> Result<Report> {
    let (lo, hi) = a.rect;
    let columns: &[&'static str] = match a.mode {
        ModeArg::Field => &["re_s", "im_s", "log10_abs"],
        ModeArg::Candidates => &[
            "cell_re_lo",
            "cell_im_lo",
            "cell_re_hi",
            "cell_im_hi",
            "zero_re",
            "zero_im",
            "residual",
            "in_cell",
            "note",
        ],
    };
    let mut r = Report::new("scan", columns);
    r.param("rect", format!("{},{}", display_complex(lo), display_complex(hi)));
    r.param("grid", format!("{},{}", a.grid.0, a.grid.1));
    r.param("q", display_float(a.q));
    r.param("nu", a.nu);
    r.param("mode", if a.mode == ModeArg::Field { "field" } else { "candidates" });
    echo_common(&mut r, a.common.format);
    let q = QParam::new(a.q)?;
    let opts = ZetaOptions::default();
    r.note("strategy", opts.strategy.name());
    let mode = if a.mode == ModeArg::Field { ScanMode::Field } else { ScanMode::Candidates };
    let res = match scan_rectangle(a.nu, &q, (lo, hi), a.grid, mode, &opts) {
        Ok(res) => res,
        // a rectangle inside the zero-free region has nothing to scan
        Err(qzeta::Error::EnteredZeroFreeRegion(msg)) => {
            r.note("warning", msg);
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    for w in &res.warnings {
        r.note("warning", w);
    }
    r.note("skipped_nodes", res.skipped);
    match a.mode {
        ModeArg::Field => {
            let g = &res.grid;
            for j in 0..g.ny {
                for i in 0..g.nx {
                    let s = g.node(i, j);
                    r.row(vec![s.re.into(), s.im.into(), g.log10_abs(i, j).into()]);
                }
            }
        }
        ModeArg::Candidates => {
            let zopts = ZeroOptions { eval: opts, ..ZeroOptions::default() };
            for c in &res.candidates {
                let mut row: Vec<Cell> = vec![c.lo.re.into(), c.lo.im.into(), c.hi.re.into(), c.hi.im.into()];
                match find_complex_zero(a.nu, &q, c.centre(), &zopts) {
                    Ok(z) => row.extend([
                        z.s.re.into(),
                        z.s.im.into(),
                        z.residual.into(),
                        c.contains(z.s).into(),
                        Cell::Missing,
                    ]),
                    Err(e) => row.extend([
                        Cell::Missing,
                        Cell::Missing,
                        Cell::Missing,
                        false.into(),
                        e.to_string().as_str().into(),
                    ]),
                }
                r.row(row);
            }
        }
    }
    Ok(r)
}

fn value_row(v: Complex64) -> Vec<Cell> {
    vec![v.re.into(), v.im.into()]
}

pub fn crystal(a: &CrystalArgs) -> Result<Report> {
    let mut r = Report::new("crystal", &VALUE_COLUMNS);
    let chi = a.chi.clone().unwrap_or_else(CharArg::trivial);
    r.param("s", display_complex(a.s));
    r.param("nu", a.nu);
    r.param("chi", &chi.source);
    echo_common(&mut r, a.common.format);
    r.note("strategy", "closed-form");
    r.row(value_row(crystal_value(a.s, a.nu, &chi.chi)?));
    Ok(r)
}

pub fn special(a: &SpecialArgs) -> Result<Report> {
    let mut r = Report::new("special", &VALUE_COLUMNS);
    let chi = a.chi.clone().unwrap_or_else(CharArg::trivial);
    r.param("m", a.m);
    r.param("nu", a.nu);
    r.param("q", display_float(a.q));
    r.param("chi", &chi.source);
    echo_common(&mut r, a.common.format);
    r.note("strategy", "closed-form");
    let q = QParam::new(a.q)?;
    r.row(value_row(special_value_neg_int(a.m, a.nu, &chi.chi, &q)?));
    Ok(r)
}

pub fn compare_classical(a: &CompareArgs) -> Result<Report> {
    let mut r =
        Report::new("compare-classical", &["q", "re_value", "im_value", "re_classical", "im_classical", "abs_err"]);
    if a.q_list.0.is_empty() {
        bail!(usage("--q-list is empty"));
    }
    r.param("kind", a.kind.name());
    r.param("s", display_complex(a.s));
    let list: Vec<String> = a.q_list.0.iter().map(|&x| display_float(x)).collect();
    r.param("q-list", list.join(","));
    let s = a.s;
    let (spec, classical) = match a.kind {
        Kind::Zeta => {
            r.param("nu", a.nu);
            (SeriesSpec::ZetaNu { s, nu: a.nu }, riemann_zeta(s)?)
        }
        Kind::L => {
            let chi = a.chi.clone().ok_or_else(|| usage("--kind L needs --chi"))?;
            r.param("nu", a.nu);
            r.param("chi", &chi.source);
            let classical = dirichlet_l(s, &chi.chi)?;
            (SeriesSpec::LNu { s, nu: a.nu, chi: chi.chi }, classical)
        }
        Kind::Tsumura => {
            r.param("mu", a.mu);
            r.param("a", display_float(a.a));
            (SeriesSpec::Tsumura { s, mu: a.mu, a: a.a }, hurwitz_zeta(s, a.a)?)
        }
        Kind::F | Kind::G => bail!(usage("compare-classical supports --kind zeta, L or tsumura")),
    };
    echo_common(&mut r, a.common.format);
    let opts = ZetaOptions::default();
    let mut used = Vec::new();
    for &qv in &a.q_list.0 {
        let out = evaluate(&spec, &QParam::new(qv)?, &opts)?;
        if !used.contains(&out.strategy.name()) {
            used.push(out.strategy.name());
        }
        let v = out.value;
        r.row(vec![
            qv.into(),
            v.re.into(),
            v.im.into(),
            classical.re.into(),
            classical.im.into(),
            (v - classical).norm().into(),
        ]);
    }
    r.note("strategy", used.join("+"));
    Ok(r)
}
