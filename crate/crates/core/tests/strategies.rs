//! Agreement between evaluation routes and limits across the family.

use num_complex::Complex64 as C;
use qzeta::qcore::{DirichletCharacter, QParam};
use qzeta::qzeta::{evaluate, f_direct, tsumura_zeta, zeta_expansion, SeriesSpec, Strategy, ZetaOptions};
use qzeta::reference::{dirichlet_l, hurwitz_zeta, riemann_zeta};
use qzeta::{Complex, QParam64, SeriesSpec64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn qp(q: f64) -> QParam<f64> {
    QParam::new(q).unwrap()
}

#[test]
fn direct_and_expansion_agree_for_every_kind() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let chars = [DirichletCharacter::principal(1), DirichletCharacter::chi4(), DirichletCharacter::principal(3)];
    for _ in 0..60 {
        let q = qp(rng.gen_range(0.1..0.85));
        let s = c(rng.gen_range(-4.0..4.0), rng.gen_range(-8.0..8.0));
        let chi = chars[rng.gen_range(0..chars.len())].clone();
        let nu = rng.gen_range(1..=3u32);
        let spec = match rng.gen_range(0..4) {
            0 => SeriesSpec::FChi { s, t: c(rng.gen_range(0.2..2.0), rng.gen_range(-2.0..2.0)), chi },
            1 => SeriesSpec::GHurwitz { s, t: c(rng.gen_range(0.2..2.0), 0.0), a: rng.gen_range(0.05..=1.0) },
            2 => SeriesSpec::LNu { s: c(nu as f64 + rng.gen_range(0.2..4.0), s.im), nu, chi },
            _ => SeriesSpec::LMu { s, mu: nu, chi },
        };
        let d = f_direct(&spec, &q, 1e-14, 2_000_000).unwrap().value;
        let e = zeta_expansion(&spec, &q, 1e-14, 2_000_000).unwrap();
        let slack = 1e-10 * d.norm().max(1.0) + e.rounding_estimate();
        assert!((d - e.value).norm() < slack, "{spec:?} at q={}: {d} vs {}", q.q(), e.value);
    }
}

#[test]
fn tsumura_routes_agree() {
    let q = qp(0.6);
    for (s, mu, a) in [(c(-1.5, 2.0), 1, 0.5), (c(0.5, -3.0), 2, 1.0), (c(3.5, 0.0), 3, 0.25)] {
        let spec = SeriesSpec::Tsumura { s, mu, a };
        let e = zeta_expansion(&spec, &q, 1e-14, 1_000_000).unwrap().value;
        let d = tsumura_zeta(s, mu, a, &q, 1e-14).unwrap();
        assert!((d - e).norm() < 1e-10 * d.norm().max(1.0), "{spec:?}");
    }
}

#[test]
fn classical_limits_of_l_functions() {
    let chi = DirichletCharacter::chi4();
    let opts = ZetaOptions::default();
    for s in [c(2.0, 0.0), c(-1.0, 0.0), c(0.5, 3.0)] {
        let want = dirichlet_l(s, &chi).unwrap();
        let spec = SeriesSpec::LNu { s, nu: 1, chi: chi.clone() };
        let errs: Vec<f64> =
            [0.9, 0.99, 0.999].iter().map(|&q| (evaluate(&spec, &qp(q), &opts).unwrap().value - want).norm()).collect();
        assert!(errs[1] < errs[0] && errs[2] < errs[1] && errs[2] < 2e-2, "s={s}: {errs:?}");
    }
}

#[test]
fn tsumura_variant_tends_to_hurwitz() {
    for (s, mu, a) in [(c(2.0, 0.0), 1, 1.0), (c(-0.5, 0.0), 1, 0.5), (c(0.5, 2.0), 2, 0.3)] {
        let want = hurwitz_zeta(s, a).unwrap();
        let errs: Vec<f64> =
            [0.99, 0.999].iter().map(|&q| (tsumura_zeta(s, mu, a, &qp(q), 1e-12).unwrap() - want).norm()).collect();
        assert!(errs[1] < errs[0] && errs[1] < 2e-2, "s={s}: {errs:?}");
    }
}

#[test]
fn euler_maclaurin_bound_covers_the_error() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let em = ZetaOptions::default().with_strategy(Strategy::EulerMaclaurin);
    for _ in 0..25 {
        let nu = rng.gen_range(1..=2u32);
        let q = qp(rng.gen_range(0.3..0.9));
        let s = c(rng.gen_range(-4.0..2.0 * nu as f64), rng.gen_range(-10.0..10.0));
        let (Ok(a), Ok(b)) = (
            evaluate(&SeriesSpec::ZetaNu { s, nu }, &q, &em),
            zeta_expansion(&SeriesSpec::ZetaNu { s, nu }, &q, 1e-14, 2_000_000),
        ) else {
            continue;
        };
        let slack = a.bound.unwrap() + a.rounding_estimate() + b.rounding_estimate() + 1e-12;
        assert!((a.value - b.value).norm() <= slack, "s={s}, nu={nu}, q={}", q.q());
    }
}

#[test]
fn riemann_limit_along_the_critical_line() {
    let s = c(0.5, 6.0);
    let want = riemann_zeta(s).unwrap();
    let got = evaluate(&SeriesSpec::ZetaNu { s, nu: 1 }, &qp(0.999), &ZetaOptions::default()).unwrap().value;
    assert!((got - want).norm() < 5e-2, "{got} vs {want}");
}

#[test]
fn single_precision_instantiation() {
    let q = QParam::<f32>::new(0.5).unwrap();
    let spec = SeriesSpec::ZetaNu { s: Complex::<f32>::new(0.0, 0.0), nu: 1 };
    let v = zeta_expansion(&spec, &q, 1e-6, 10_000).unwrap().value;
    let closed = -2.0f32 - 1.0 / 0.5f32.ln();
    assert!((v.re - closed).abs() < 1e-5, "{v}");
    // the f64 aliases are the same types as the generic ones
    let q64: QParam64 = qp(0.5);
    let spec64: SeriesSpec64 = SeriesSpec::ZetaNu { s: c(0.0, 0.0), nu: 1 };
    let w = zeta_expansion(&spec64, &q64, 1e-14, 10_000).unwrap().value;
    assert!((w.re - closed as f64).abs() < 1e-6);
}
