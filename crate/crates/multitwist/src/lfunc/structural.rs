//! Structural invariants `d_F(ℓ)`: coefficients of
//! `h_F(s) = (2π)^(−1/2) (q^(1/d)/(2πd))^(d(1/2−s)) Σ_ℓ d_F(ℓ) Γ(d(s*_ℓ − s)) + ...`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::SelbergDatum;
use crate::error::{Error, Result};
use crate::linalg::lstsq;
use crate::specfun::log_gamma;
use crate::sympoly::{pm_polys, Coeff};

/// Symbolic value cross-checked against the numeric fit; a disagreement beyond
/// `1e-6` relative (or ten times the spread between two fitting ladders, when
/// that is larger) is an error carrying both values.
pub fn structural_invariants(datum: &SelbergDatum, max_ell: usize) -> Result<Vec<Complex64>> {
    let sym = structural_invariants_symbolic(datum, max_ell)?;
    let num = fit_ladder(datum, max_ell, 16.0)?;
    let alt = fit_ladder(datum, max_ell, 20.0)?;
    for (index, ((s, n), a)) in sym.iter().zip(&num).zip(&alt).enumerate() {
        let spread = (n - a).norm();
        if (s - n).norm() > (1e-6 * s.norm().max(1.0)).max(10.0 * spread) {
            return Err(Error::StructuralMismatch {
                index,
                symbolic: *s,
                numeric: *n,
            });
        }
    }
    Ok(sym)
}

/// Writes `h_F` as a product of `2r` Gamma factors `Γ(a_ν − λ'_ν w)` in
/// `w = d s`, with weights `λ'_ν = λ_j/d` summing to 1, and reads `d_F(m)` off
/// the Gamma-product expansion: `d_F(m) = K P_m(a)`.
///
/// Values within `1e-12` of a small-denominator Gaussian rational are snapped
/// to it, so that exactly-known invariants stay exact downstream.
pub fn structural_invariants_symbolic(datum: &SelbergDatum, max_ell: usize) -> Result<Vec<Complex64>> {
    let inv = datum.invariants()?;
    let d = inv.d;
    let r = datum.factors.len() as f64;
    let mut weights = Vec::new();
    let mut a = Vec::new();
    for f in &datum.factors {
        weights.push(f.lambda / d);
        a.push(f.lambda + f.mu.conj());
    }
    for f in &datum.factors {
        weights.push(f.lambda / d);
        a.push(1.0 - f.mu);
    }
    let lambdas: Vec<Coeff> = weights.iter().map(|&l| Coeff::snapped(Complex64::new(l, 0.0))).collect();
    let ps = pm_polys(max_ell, &lambdas)?;

    let ln2pi = (2.0 * PI).ln();
    let mut log_k = Complex64::new(-r * ln2pi + datum.q_big.ln() + (2.0 * r - 1.0) / 2.0 * ln2pi, 0.0);
    for f in &datum.factors {
        log_k += Complex64::new(0.0, 2.0 * f.mu.im * f.lambda.ln());
    }
    for (av, lv) in a.iter().zip(&weights) {
        log_k += (av - 0.5) * lv.ln();
    }
    log_k -= -0.5 * ln2pi + d / 2.0 * (inv.q.powf(1.0 / d) / (2.0 * PI * d)).ln();
    let k = log_k.exp();
    ps.iter()
        .map(|p| Ok(Coeff::snapped(k * p.evaluate(&a)?).to_complex()))
        .collect()
}

/// Fits `d_F(0..=max_ell)` from values of `h_F` at `s = s*_0 − x/d` for large
/// real `x`: `h/(prefactor Γ(x)) = Σ_k d_F(k) / ((x−1)(x−2)...(x−k))` is
/// triangular in the falling-factorial basis and is solved in one least-squares
/// pass over the ladder.
pub fn structural_invariants_numeric(datum: &SelbergDatum, max_ell: usize) -> Result<Vec<Complex64>> {
    fit_ladder(datum, max_ell, 16.0)
}

fn fit_ladder(datum: &SelbergDatum, max_ell: usize, x0: f64) -> Result<Vec<Complex64>> {
    let inv = datum.invariants()?;
    let d = inv.d;
    let s0 = Complex64::new((d + 1.0) / 2.0, -inv.theta * d) / d;
    let base = (inv.q.powf(1.0 / d) / (2.0 * PI * d)).ln();
    let xs: Vec<f64> = (0..16).map(|i| x0 * 2f64.powf(i as f64 / 4.0)).collect();
    let mut g = Vec::with_capacity(xs.len());
    for &x in &xs {
        let s = s0 - x / d;
        let log_pref = -0.5 * (2.0 * PI).ln() + d * (0.5 - s) * base;
        let lr = datum.log_h_factor(s)? - log_pref - log_gamma(Complex64::new(x, 0.0))?;
        g.push(lr.exp());
    }
    let terms = (max_ell + 1).max(10);
    if max_ell > 12 {
        return Err(Error::InvalidInput("numeric structural invariants are fitted up to index 12".into()));
    }
    let rows: Vec<Vec<Complex64>> = xs
        .iter()
        .map(|&x| {
            let mut v = Vec::with_capacity(terms);
            let mut basis = 1.0;
            for k in 0..terms {
                v.push(Complex64::new(basis, 0.0));
                basis /= x - (k + 1) as f64;
            }
            v
        })
        .collect();
    let (coef, _) = lstsq(&rows, &g)?;
    let out = coef[..=max_ell].to_vec();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::DirichletCharacter;

    #[test]
    fn zeta_invariants_are_exact() {
        let v = structural_invariants(&SelbergDatum::zeta(), 2).unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);
    }

    #[test]
    fn dirichlet_leading_invariant_is_unimodular() {
        for chi in [DirichletCharacter::mod_prime(3, 1).unwrap(), DirichletCharacter::mod4()] {
            let num = structural_invariants_numeric(&SelbergDatum::dirichlet(chi), 0).unwrap();
            assert!((num[0].norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn symbolic_matches_numeric_on_nontrivial_data() {
        use crate::lfunc::{CoefficientSource, GammaFactor};
        let c = Complex64::new;
        let data = [
            vec![GammaFactor::new(1.0, c(0.3, 0.2)).unwrap()],
            vec![GammaFactor::new(0.5, c(0.25, 0.0)).unwrap(), GammaFactor::new(0.5, c(0.75, 0.1)).unwrap()],
            vec![GammaFactor::new(0.25, c(0.0, 0.0)).unwrap(), GammaFactor::new(0.75, c(0.5, -0.3)).unwrap()],
        ];
        for factors in data {
            let f = SelbergDatum::new("test", 0.7, factors, c(1.0, 0.0), CoefficientSource::List(vec![c(1.0, 0.0)])).unwrap();
            let sym = structural_invariants_symbolic(&f, 2).unwrap();
            let num = structural_invariants_numeric(&f, 2).unwrap();
            assert!((sym[0].norm() - 1.0).abs() < 1e-12);
            for (a, b) in sym.iter().zip(&num) {
                assert!((a - b).norm() < 1e-4 * a.norm().max(1.0), "{a} vs {b}");
            }
            assert_eq!(structural_invariants(&f, 2).unwrap(), sym);
        }
    }
}
