use multitwist::lfunc::{compute_invariants, verify_sh_identity, DirichletCharacter, GammaFactor, SelbergDatum};
use multitwist::spectrum::{AlphaSpec, TwistFamily};
use multitwist::Error;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn chi_data() -> Vec<SelbergDatum> {
    vec![
        SelbergDatum::zeta(),
        SelbergDatum::dirichlet(DirichletCharacter::mod4()),
        SelbergDatum::dirichlet(DirichletCharacter::mod_prime(5, 1).unwrap()),
        SelbergDatum::dirichlet(DirichletCharacter::mod_prime(7, 3).unwrap()),
    ]
}

proptest! {
    #[test]
    fn functional_equation_holds(re in -4.0f64..5.0, im in -40.0f64..40.0, which in 0usize..4) {
        let f = &chi_data()[which];
        let r = verify_sh_identity(f, c(re, im)).unwrap();
        prop_assert!(r < 1e-9, "{}: residual {r}", f.label);
    }

    #[test]
    fn alpha_increases_in_each_index(n1 in 1u64..50, n2 in 1u64..50, k in 1i64..4) {
        let fam = TwistFamily::zetas(&[(k, k + 1), (1, k + 1)]).unwrap();
        let (a, _) = fam.alpha_of(&[n1, n2]).unwrap();
        let (b, _) = fam.alpha_of(&[n1 + 1, n2]).unwrap();
        let (d, _) = fam.alpha_of(&[n1, n2 + 1]).unwrap();
        prop_assert!(b > a && d > a);
    }
}

#[test]
fn invariants_of_a_degree_two_datum() {
    let f = SelbergDatum::new(
        "deg2",
        0.7,
        vec![
            GammaFactor::new(0.5, c(0.25, 0.0)).unwrap(),
            GammaFactor::new(0.5, c(0.75, 0.3)).unwrap(),
        ],
        c(0.0, 1.0),
        multitwist::lfunc::CoefficientSource::List(vec![c(1.0, 0.0), c(-0.5, 0.0)]),
    )
    .unwrap();
    let inv = compute_invariants(&f).unwrap();
    assert!((inv.d - 2.0).abs() < 1e-15);
    let q = (2.0 * std::f64::consts::PI).powi(2) * 0.49 * 0.25;
    assert!((inv.q - q).abs() < 1e-12 * q);
    assert!((inv.tau - 0.6).abs() < 1e-15);
    assert!((inv.xi - c(0.0, 0.6)).norm() < 1e-15);
    assert!((inv.theta - 0.3).abs() < 1e-15);
    let phase = c(0.0, -2.0 * 0.3 * 0.5f64.ln()).exp();
    assert!((inv.omega_f - c(0.0, 1.0) * phase).norm() < 1e-14);
}

#[test]
fn spectrum_is_sorted_and_complete() {
    let fam = TwistFamily::zetas(&[(1, 2), (1, 2)]).unwrap();
    let n = fam.required_n_max(7.0);
    let hits = fam.enumerate_spectrum(7.0, n).unwrap();
    assert!(hits.windows(2).all(|w| w[0].alpha < w[1].alpha));
    // α = 2 sqrt(n1 n2): every product n1 n2 <= 12 appears once, with d(n1 n2) witnesses
    assert_eq!(hits.len(), 12);
    let divisors = |m: u64| (1..=m).filter(|d| m % d == 0).count();
    for (i, h) in hits.iter().enumerate() {
        let m = (i + 1) as u64;
        assert!((h.alpha - 2.0 * (m as f64).sqrt()).abs() < 1e-12);
        assert_eq!(h.witnesses.len(), divisors(m));
        for w in &h.witnesses {
            assert_eq!(w[0] * w[1], m);
        }
    }
    let bigger = fam.enumerate_spectrum(7.0, 4 * n).unwrap();
    assert_eq!(bigger.len(), hits.len());
}

#[test]
fn zero_coefficients_leave_the_spectrum() {
    let l4 = SelbergDatum::dirichlet(DirichletCharacter::mod4());
    let half = BigRational::new(1.into(), 2.into());
    let fam = TwistFamily::new(vec![SelbergDatum::zeta(), l4], vec![half.clone(), half]).unwrap();
    let (a, _) = fam.alpha_of(&[1, 2]).unwrap();
    assert!(fam.membership(&AlphaSpec::Value(a), 1e-10).unwrap().is_some_and(|h| h.witnesses.iter().all(|w| w[1] % 2 == 1)));
    let hits = fam.enumerate_spectrum(3.0, fam.required_n_max(3.0)).unwrap();
    for h in hits {
        for w in h.witnesses {
            assert_ne!(w[1] % 2, 0, "witness {w:?} has chi_4(n_2) = 0");
        }
    }
}

#[test]
fn kappa_must_balance_degrees() {
    let third = BigRational::new(1.into(), 3.into());
    let e = TwistFamily::new(vec![SelbergDatum::zeta(), SelbergDatum::zeta()], vec![third.clone(), third]).unwrap_err();
    assert!(matches!(e, Error::InvalidInput(_)), "{e}");
}

#[test]
fn hyperplanes_and_strips() {
    let fam = TwistFamily::zetas(&[(1, 2), (1, 2)]).unwrap();
    for ell in 0..3 {
        let h = fam.hyperplane(ell);
        let s = h.complete(&[c(0.3, 0.7)]).unwrap();
        assert!(h.distance(&s) < 1e-14);
        assert_eq!(fam.strip_index(&s), Some(ell));
    }
    assert_eq!(fam.strip_index(&[c(2.0, 0.0), c(2.0, 0.0)]), None);
}
