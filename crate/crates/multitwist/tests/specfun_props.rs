use std::f64::consts::PI;

use multitwist::specfun::{gamma, hurwitz_zeta, log_gamma, pochhammer, rgamma, stirling_log_gamma, zeta};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Equality of logarithms modulo 2πi.
fn log_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    let d = a - b;
    let k = (d.im / (2.0 * PI)).round();
    (d - c(0.0, 2.0 * PI * k)).norm() <= tol * (1.0 + a.norm())
}

proptest! {
    #[test]
    fn log_gamma_recurrence(re in -8.0f64..12.0, im in -30.0f64..30.0) {
        let z = c(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
        let lhs = log_gamma(z + 1.0).unwrap();
        let rhs = log_gamma(z).unwrap() + z.ln();
        prop_assert!(log_close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn reflection(re in -5.0f64..6.0, im in 0.05f64..20.0) {
        let z = c(re, im);
        let prod = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let want = PI / (z * PI).sin();
        prop_assert!((prod - want).norm() <= 1e-11 * want.norm(), "{prod} vs {want}");
    }

    #[test]
    fn reciprocal_gamma(re in -6.0f64..6.0, im in -4.0f64..4.0) {
        let z = c(re, im);
        let g = gamma(z);
        if let Ok(g) = g {
            prop_assert!((rgamma(z) * g - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn pochhammer_is_gamma_ratio(re in 0.1f64..6.0, im in -5.0f64..5.0, m in 0usize..8) {
        let z = c(re, im);
        let ratio = (log_gamma(z + m as f64).unwrap() - log_gamma(z).unwrap()).exp();
        let p = pochhammer(z, m);
        prop_assert!((p - ratio).norm() <= 1e-11 * p.norm().max(1.0));
    }

    #[test]
    fn stirling_error_within_bound(r in 10.0f64..200.0, arg in -2.5f64..2.5, s in -1.0f64..2.0, order in 1usize..6) {
        let z = Complex64::from_polar(r, arg);
        let approx = stirling_log_gamma(z, c(s, 0.0), order).unwrap();
        let exact = log_gamma(z + s).unwrap();
        let d = approx.value - exact;
        let k = (d.im / (2.0 * PI)).round();
        let e = (d - c(0.0, 2.0 * PI * k)).norm();
        prop_assert!(e <= approx.error_bound + 1e-13 * exact.norm(), "error {e} bound {}", approx.error_bound);
    }

    #[test]
    fn hurwitz_shift(re in -3.0f64..4.0, im in -10.0f64..10.0, a in 0.2f64..3.0) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.1);
        let lhs = hurwitz_zeta(s, a).unwrap() - hurwitz_zeta(s, a + 1.0).unwrap();
        let rhs = (-s * a.ln()).exp();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0), "{lhs} vs {rhs}");
    }
}

#[test]
fn stirling_error_decays_with_order() {
    let z = c(0.0, 40.0);
    let exact = log_gamma(z + 0.3).unwrap();
    let errs: Vec<f64> = (1..6)
        .map(|m| (stirling_log_gamma(z, c(0.3, 0.0), m).unwrap().value - exact).norm())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn zeta_special_values() {
    let cases = [(2.0, PI * PI / 6.0), (4.0, PI.powi(4) / 90.0), (0.0, -0.5), (-1.0, -1.0 / 12.0), (-3.0, 1.0 / 120.0)];
    for (s, want) in cases {
        let v = zeta(c(s, 0.0)).unwrap();
        assert!((v - want).norm() < 1e-12, "zeta({s}) = {v}");
    }
    // first nontrivial zero
    assert!(zeta(c(0.5, 14.134_725_141_734_693)).unwrap().norm() < 1e-9);
}
