//! Functional-equation data of L-functions in the extended Selberg class and
//! the invariants derived from it.
//!
//! A datum carries `Q`, Gamma factors `(λ_j, μ_j)`, the root number `ω` of
//! `Q^s Π Γ(λ_j s + μ_j) F(s) = ω Q^(1−s) Π Γ(λ_j(1−s) + conj μ_j) conj F(1 − conj s)`
//! and a source for the Dirichlet coefficients.

mod dirichlet;
mod structural;

pub use dirichlet::DirichletCharacter;
pub use structural::{
    structural_invariants, structural_invariants_numeric, structural_invariants_symbolic,
};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::specfun::{hurwitz_zeta, log_gamma};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub lambda: f64,
    pub mu: Complex64,
}

impl GammaFactor {
    pub fn new(lambda: f64, mu: Complex64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return invalid(format!("Gamma factor needs lambda > 0, got {lambda}"));
        }
        if !(mu.re >= 0.0) || !mu.im.is_finite() {
            return invalid(format!("Gamma factor needs Re(mu) >= 0, got {mu}"));
        }
        Ok(GammaFactor { lambda, mu })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSource {
    Zeta,
    Dirichlet(DirichletCharacter),
    /// `a(1..=len)`, zero afterwards.
    List(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelbergDatum {
    pub label: String,
    pub q_big: f64,
    pub factors: Vec<GammaFactor>,
    pub omega: Complex64,
    pub coefficients: CoefficientSource,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    pub d: f64,
    pub q: f64,
    pub omega_f: Complex64,
    pub tau: f64,
    pub xi: Complex64,
    pub eta: f64,
    pub theta: f64,
}

impl SelbergDatum {
    pub fn new(
        label: impl Into<String>,
        q_big: f64,
        factors: Vec<GammaFactor>,
        omega: Complex64,
        coefficients: CoefficientSource,
    ) -> Result<Self> {
        let label = label.into();
        if !(q_big > 0.0 && q_big.is_finite()) {
            return invalid(format!("{label}: Q must be positive, got {q_big}"));
        }
        if factors.is_empty() {
            return invalid(format!(
                "{label}: at least one Gamma factor is required (degree must be positive)"
            ));
        }
        for f in &factors {
            GammaFactor::new(f.lambda, f.mu)?;
        }
        if (omega.norm() - 1.0).abs() > 1e-12 {
            return invalid(format!("{label}: |omega| must be 1, got {}", omega.norm()));
        }
        Ok(SelbergDatum {
            label,
            q_big,
            factors,
            omega,
            coefficients,
        })
    }

    /// Riemann zeta: `Q = π^(−1/2)`, one factor `(1/2, 0)`, `ω = 1`.
    pub fn zeta() -> Self {
        SelbergDatum {
            label: "zeta".into(),
            q_big: PI.sqrt().recip(),
            factors: vec![GammaFactor {
                lambda: 0.5,
                mu: Complex64::new(0.0, 0.0),
            }],
            omega: Complex64::new(1.0, 0.0),
            coefficients: CoefficientSource::Zeta,
        }
    }

    /// `L(s, χ)` for a primitive character: `Q = (q/π)^(1/2)`, factor
    /// `(1/2, a/2)` with `a` the parity, `ω = τ(χ)/(i^a √q)`.
    pub fn dirichlet(chi: DirichletCharacter) -> Self {
        let q = chi.modulus() as f64;
        let a = chi.parity();
        let i_a = Complex64::new(0.0, 1.0).powu(a);
        let omega = chi.gauss_sum() / (i_a * q.sqrt());
        SelbergDatum {
            label: format!("L(s, chi mod {})", chi.modulus()),
            q_big: (q / PI).sqrt(),
            factors: vec![GammaFactor {
                lambda: 0.5,
                mu: Complex64::new(a as f64 / 2.0, 0.0),
            }],
            omega: omega / omega.norm(),
            coefficients: CoefficientSource::Dirichlet(chi),
        }
    }

    pub fn degree(&self) -> f64 {
        2.0 * self.factors.iter().map(|f| f.lambda).sum::<f64>()
    }

    pub fn invariants(&self) -> Result<Invariants> {
        compute_invariants(self)
    }

    pub fn coefficient(&self, n: u64) -> Complex64 {
        match &self.coefficients {
            CoefficientSource::Zeta => Complex64::new(1.0, 0.0),
            CoefficientSource::Dirichlet(chi) => chi.value(n),
            CoefficientSource::List(v) => {
                if n >= 1 && (n as usize) <= v.len() {
                    v[n as usize - 1]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// Largest index with a possibly nonzero coefficient (`None` if unbounded).
    pub fn support_len(&self) -> Option<u64> {
        match &self.coefficients {
            CoefficientSource::List(v) => Some(v.len() as u64),
            _ => None,
        }
    }

    /// `sup_n |a(n)|`.
    pub fn coefficient_bound(&self) -> f64 {
        match &self.coefficients {
            CoefficientSource::Zeta | CoefficientSource::Dirichlet(_) => 1.0,
            CoefficientSource::List(v) => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    /// `F(s)`: Hurwitz-zeta representation for generators, finite sum for lists.
    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        match &self.coefficients {
            CoefficientSource::Zeta => hurwitz_zeta(s, 1.0),
            CoefficientSource::Dirichlet(chi) => {
                let q = chi.modulus() as f64;
                let mut sum = Complex64::new(0.0, 0.0);
                for (a, v) in chi.values().iter().enumerate() {
                    if v.norm() > 0.0 {
                        sum += v * hurwitz_zeta(s, a as f64 / q)?;
                    }
                }
                Ok(sum * (-s * q.ln()).exp())
            }
            CoefficientSource::List(v) => Ok(v
                .iter()
                .enumerate()
                .map(|(k, a)| a * (-s * ((k + 1) as f64).ln()).exp())
                .sum()),
        }
    }

    /// `S_F(s) = 2^r Π sin(π(λ_j s + μ_j))`.
    pub fn s_factor(&self, s: Complex64) -> Complex64 {
        self.factors.iter().fold(Complex64::new(1.0, 0.0), |acc, f| {
            acc * 2.0 * ((f.lambda * s + f.mu) * PI).sin()
        })
    }

    /// `log h_F(s)` (branch follows the principal log-Gamma).
    pub fn log_h_factor(&self, s: Complex64) -> Result<Complex64> {
        let r = self.factors.len() as f64;
        let mut acc = Complex64::new(-r * (2.0 * PI).ln(), 0.0) + (1.0 - 2.0 * s) * self.q_big.ln();
        for f in &self.factors {
            acc += Complex64::new(0.0, 2.0 * f.mu.im * f.lambda.ln());
            acc += log_gamma(f.lambda * (1.0 - s) + f.mu.conj()).map_err(|_| pole(s))?;
            acc += log_gamma(1.0 - f.lambda * s - f.mu).map_err(|_| pole(s))?;
        }
        Ok(acc)
    }

    /// `h_F(s) = (2π)^(−r) Π λ_j^(2i Im μ_j) Q^(1−2s) Π Γ(λ_j(1−s) + conj μ_j) Γ(1 − λ_j s − μ_j)`.
    pub fn h_factor(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.log_h_factor(s)?.exp())
    }
}

fn pole(s: Complex64) -> Error {
    Error::Pole {
        what: "h_F".into(),
        at: s,
    }
}

pub fn compute_invariants(datum: &SelbergDatum) -> Result<Invariants> {
    let d = datum.degree();
    if !(d > 0.0) {
        return invalid("degree must be positive");
    }
    let q = (2.0 * PI).powf(d)
        * datum.q_big.powi(2)
        * datum
            .factors
            .iter()
            .map(|f| f.lambda.powf(2.0 * f.lambda))
            .product::<f64>();
    let omega_f = datum.factors.iter().fold(datum.omega, |acc, f| {
        acc * Complex64::from_polar(1.0, -2.0 * f.mu.im * f.lambda.ln())
    });
    let tau = datum
        .factors
        .iter()
        .map(|f| f.mu.im / f.lambda)
        .fold(f64::NEG_INFINITY, f64::max);
    let xi: Complex64 = datum.factors.iter().map(|f| 2.0 * (f.mu - 0.5)).sum();
    Ok(Invariants {
        d,
        q,
        omega_f,
        tau,
        xi,
        eta: xi.re,
        theta: xi.im / d,
    })
}

/// `|S_F(s) h_F(s) conj(S_F(1 − conj s)) conj(h_F(1 − conj s)) − 1|`.
pub fn verify_sh_identity(datum: &SelbergDatum, s: Complex64) -> Result<f64> {
    let t = 1.0 - s.conj();
    let s1 = datum.s_factor(s);
    let s2 = datum.s_factor(t).conj();
    if s1.norm() < 1e-300 || s2.norm() < 1e-300 {
        return invalid(format!("S_F vanishes at {s} or 1 - conj(s)"));
    }
    let lh = datum.log_h_factor(s)? + datum.log_h_factor(t)?.conj();
    Ok((s1 * s2 * lh.exp() - 1.0).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_invariants() {
        let inv = compute_invariants(&SelbergDatum::zeta()).unwrap();
        assert!((inv.d - 1.0).abs() < 1e-12);
        assert!((inv.q - 1.0).abs() < 1e-12);
        assert!((inv.omega_f - 1.0).norm() < 1e-12);
        assert_eq!(inv.tau, 0.0);
        assert!((inv.xi + 1.0).norm() < 1e-12);
        assert_eq!(inv.eta, -1.0);
        assert_eq!(inv.theta, 0.0);
    }

    #[test]
    fn single_factor_conductor() {
        let f = SelbergDatum::new(
            "unit Q",
            1.0,
            vec![GammaFactor::new(0.5, c(0.0, 0.0)).unwrap()],
            c(1.0, 0.0),
            CoefficientSource::Zeta,
        )
        .unwrap();
        assert!((f.invariants().unwrap().q - PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_data() {
        assert!(GammaFactor::new(0.5, c(-0.1, 0.0)).is_err());
        assert!(GammaFactor::new(0.0, c(0.0, 0.0)).is_err());
        assert!(SelbergDatum::new("x", 1.0, vec![], c(1.0, 0.0), CoefficientSource::Zeta).is_err());
        let g = vec![GammaFactor::new(0.5, c(0.0, 0.0)).unwrap()];
        assert!(SelbergDatum::new("x", 1.0, g, c(0.5, 0.0), CoefficientSource::Zeta).is_err());
    }

    #[test]
    fn s_factor_values() {
        let z = SelbergDatum::zeta();
        assert!((z.s_factor(c(0.5, 0.0)) - 2f64.sqrt()).norm() < 1e-15);
        assert!(z.s_factor(c(0.0, 0.0)).norm() < 1e-15);
        assert!((z.s_factor(c(1.0, 0.0)) - 2.0).norm() < 1e-15);
    }

    #[test]
    fn h_factor_closed_form() {
        let z = SelbergDatum::zeta();
        assert!((z.h_factor(c(0.5, 0.0)).unwrap() - (PI / (2.0 * PI)).sqrt()).norm() < 1e-14);
        assert!((z.h_factor(c(0.0, 0.0)).unwrap() - 1.0 / (2.0 * PI)).norm() < 1e-14);
        assert!((z.h_factor(c(-1.0, 0.0)).unwrap() - 1.0 / (4.0 * PI * PI)).norm() < 1e-14);
        assert!(matches!(z.h_factor(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn coefficients() {
        assert_eq!(SelbergDatum::zeta().coefficient(7), c(1.0, 0.0));
        let l4 = SelbergDatum::dirichlet(DirichletCharacter::mod4());
        assert_eq!(l4.coefficient(3), c(-1.0, 0.0));
        let list = SelbergDatum::new(
            "list",
            1.0,
            vec![GammaFactor::new(0.5, c(0.0, 0.0)).unwrap()],
            c(1.0, 0.0),
            CoefficientSource::List(vec![c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]),
        )
        .unwrap();
        assert_eq!(list.coefficient(5), c(0.0, 0.0));
        assert_eq!(list.coefficient(3), c(2.0, 0.0));
    }

    #[test]
    fn dirichlet_root_numbers_and_conductors() {
        let l4 = SelbergDatum::dirichlet(DirichletCharacter::mod4());
        assert!((l4.omega - 1.0).norm() < 1e-12);
        for p in [3u64, 5, 7] {
            let l = SelbergDatum::dirichlet(DirichletCharacter::mod_prime(p, 1).unwrap());
            assert!((l.invariants().unwrap().q - p as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn sh_identity_points() {
        let z = SelbergDatum::zeta();
        assert!(verify_sh_identity(&z, c(0.3, 0.4)).unwrap() < 1e-10);
        assert!(verify_sh_identity(&z, c(0.5, 0.0)).unwrap() < 1e-12);
        let l4 = SelbergDatum::dirichlet(DirichletCharacter::mod4());
        assert!(verify_sh_identity(&l4, c(0.2, 1.1)).unwrap() < 1e-10);
        assert!(verify_sh_identity(&z, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn evaluate_against_known_values() {
        let l4 = SelbergDatum::dirichlet(DirichletCharacter::mod4());
        // Catalan's constant is L(2, chi_4)
        assert!((l4.evaluate(c(2.0, 0.0)).unwrap() - 0.915_965_594_177_219).norm() < 1e-13);
    }

    #[test]
    fn functional_equation_holds() {
        let data = [
            SelbergDatum::zeta(),
            SelbergDatum::dirichlet(DirichletCharacter::mod4()),
            SelbergDatum::dirichlet(DirichletCharacter::mod_prime(5, 1).unwrap()),
            SelbergDatum::dirichlet(DirichletCharacter::mod_prime(7, 1).unwrap()),
        ];
        for f in data {
            let w = f.invariants().unwrap().omega_f;
            for s in [c(0.3, 2.0), c(-0.7, 0.4), c(1.6, -3.0)] {
                let lhs = f.evaluate(s).unwrap();
                let fbar = f.evaluate(1.0 - s.conj()).unwrap().conj();
                let rhs = w * f.s_factor(s) * f.h_factor(s).unwrap() * fbar;
                assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0), "{}: {lhs} vs {rhs}", f.label);
            }
        }
    }
}
