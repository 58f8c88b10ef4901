use multitwist::sympoly::{gamma_product_error, names, pm_polys, sumxt_forms, vk_poly, Coeff, MultiPoly};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewriting_identity(
        order in 1usize..=6,
        a in (-2.0f64..2.0, -2.0f64..2.0),
        b in (-2.0f64..2.0, -2.0f64..2.0),
        t in (0.5f64..5.0, -3.0f64..3.0),
        xs in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 6),
    ) {
        let a = c(a.0, a.1);
        prop_assume!(a.norm() > 0.1);
        let b = c(b.0, b.1);
        let t = c(t.0, t.1);
        let x: Vec<Complex64> = xs[..order].iter().map(|p| c(p.0, p.1)).collect();
        let forms = sumxt_forms(Coeff::approx(a), Coeff::approx(b), order).unwrap();
        let r = forms.identity_residual(a, b, &x, t).unwrap();
        prop_assert!(r < 1e-9, "residual {r}");
    }

    #[test]
    fn exact_forms_have_the_stated_shape(p in 1i64..9, q in 1i64..9, bn in -9i64..9, order in 1usize..=6) {
        let forms = sumxt_forms(Coeff::ratio(p, q), Coeff::ratio(bn, q), order).unwrap();
        prop_assert!(forms.q.degree_in(forms.t_index()).unwrap_or(0) as usize <= order - 1);
        for j in 1..=order {
            prop_assert!(forms.q.degree_in(forms.x_index(j)).unwrap_or(0) <= 1);
        }
        for (m, r) in forms.r.iter().enumerate() {
            prop_assert_eq!(r.degree(), Some(1));
            for k in m + 2..=order {
                prop_assert_eq!(r.degree_in(forms.x_index(k)).unwrap_or(0), 0);
            }
        }
    }
}

#[test]
fn expansion_error_decays_on_the_imaginary_ray() {
    let lambdas = [Coeff::ratio(1, 3), Coeff::ratio(2, 3)];
    let ps = pm_polys(3, &lambdas).unwrap();
    let a = [c(0.2, 0.1), c(-0.4, 0.3)];
    for m in 1..=3 {
        let e: Vec<f64> = [20.0, 40.0, 80.0, 160.0]
            .iter()
            .map(|&r| gamma_product_error(&ps, &a, &[1.0 / 3.0, 2.0 / 3.0], c(0.0, r), m).unwrap())
            .collect();
        for w in e.windows(2) {
            let rate = (w[0] / w[1]).log2();
            assert!((rate - (m as f64 + 1.0)).abs() < 0.5, "M = {m}: rate {rate}");
        }
    }
}

#[test]
fn expansion_stalls_on_the_positive_real_ray() {
    // Γ(a_ν − λ_ν w) has poles on this ray, outside the sector where the expansion holds.
    let half = [Coeff::ratio(1, 2), Coeff::ratio(1, 2)];
    let ps = pm_polys(3, &half).unwrap();
    let a = [c(0.3, 0.0), c(0.7, 0.2)];
    for m in 1..=3 {
        let e: Vec<f64> = [20.0, 40.0, 80.0, 160.0]
            .iter()
            .map(|&r| gamma_product_error(&ps, &a, &[0.5, 0.5], c(r, 0.0), m).unwrap())
            .collect();
        assert!(e.iter().all(|&x| x > 0.5), "M = {m}: {e:?}");
    }
}

#[test]
fn v_polynomials_exponentiate_q() {
    // V_3 = Q_3 + Q_1 Q_2 + Q_1^3/6
    let half = [Coeff::ratio(1, 2), Coeff::ratio(1, 2)];
    let q = |j| multitwist::sympoly::qj_poly(j, &half).unwrap();
    let (q1, q2, q3) = (q(1), q(2), q(3));
    let want = q3
        .add(&q1.mul(&q2).unwrap())
        .unwrap()
        .add(&q1.pow(3).scale(&Coeff::ratio(1, 6)))
        .unwrap();
    assert_eq!(vk_poly(3, &half).unwrap(), want);
}

#[test]
fn p_polynomials_for_three_factors() {
    let l = [Coeff::ratio(1, 3), Coeff::ratio(1, 3), Coeff::ratio(1, 3)];
    let ps = pm_polys(2, &l).unwrap();
    assert_eq!(ps[0], MultiPoly::one(&names("a", 3)));
    assert_eq!(ps[1].degree(), Some(2));
    assert_eq!(ps[2].degree(), Some(4));
    let a = [c(0.1, 0.2), c(0.3, -0.1), c(0.5, 0.0)];
    let lam = [1.0 / 3.0; 3];
    let e1 = gamma_product_error(&ps, &a, &lam, c(0.0, 60.0), 1).unwrap();
    let e2 = gamma_product_error(&ps, &a, &lam, c(0.0, 60.0), 2).unwrap();
    assert!(e2 < e1 / 10.0, "{e1} {e2}");
}

#[test]
fn w_restricted_to_its_hyperplane_keeps_degree_two_l() {
    // kappa = (1/3, 2/3): on H*_l, s_2 = const - s_1 and the top part of W_l becomes
    // (3 s_1^2 + (3/2) s_1^2)^l / (2^l l!)
    use multitwist::spectrum::TwistFamily;
    use multitwist::sympoly::w_ell_poly;
    let fam = TwistFamily::zetas(&[(1, 3), (2, 3)]).unwrap();
    let vars = names("s", 2);
    let s1 = MultiPoly::var(&vars, 0);
    let mut fact = 1i64;
    for ell in 0..=3u32 {
        if ell > 0 {
            fact *= ell as i64;
        }
        let w = w_ell_poly(&fam.well_data(ell as usize).unwrap(), ell as usize).unwrap();
        let target = Coeff::snapped(fam.hyperplane(ell as usize).target);
        let s2 = MultiPoly::linear(&vars, target, &[Coeff::integer(-1), Coeff::zero()]);
        let restricted = w.compose(&[s1.clone(), s2]).unwrap();
        assert_eq!(restricted.degree(), Some(2 * ell));
        let want = s1.pow(2 * ell).scale(&Coeff::ratio(9, 2).powi(ell).mul(&Coeff::ratio(1, (1 << ell) * fact)));
        assert_eq!(restricted.homogeneous_part(2 * ell), want, "l = {ell}");
    }
}
