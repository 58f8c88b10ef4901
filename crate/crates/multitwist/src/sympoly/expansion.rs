//! Numeric checks of the two expansion identities.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{MultiPoly, SumXTForms};
use crate::error::{invalid, Result};
use crate::specfun::{log_gamma, pochhammer};

impl SumXTForms {
    /// Relative residual of
    /// `Σ X_k/T^k = Σ (−1)^m R_m/(AT+b)_m + Q_M/(T^M (AT+b)_M)`
    /// for forms built by `sumxt_forms(A, b, M)`.
    pub fn identity_residual(&self, a: Complex64, b: Complex64, x: &[Complex64], t: Complex64) -> Result<f64> {
        if self.base_arity != 0 {
            return invalid("identity_residual needs forms with numeric A and b");
        }
        if x.len() != self.order {
            return invalid(format!("need {} values X_k, got {}", self.order, x.len()));
        }
        let mut point = x.to_vec();
        point.push(t);
        let lhs: Complex64 = x.iter().enumerate().map(|(k, xk)| xk / t.powi(k as i32 + 1)).sum();
        let at_b = a * t + b;
        let mut rhs = Complex64::new(0.0, 0.0);
        for (m, r) in self.r.iter().enumerate() {
            let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
            rhs += sign * r.evaluate(&point)? / pochhammer(at_b, m + 1);
        }
        let big_m = self.order;
        rhs += self.q.evaluate(&point)? / (t.powi(big_m as i32) * pochhammer(at_b, big_m));
        let scale = x.iter().enumerate().map(|(k, xk)| (xk / t.powi(k as i32 + 1)).norm()).fold(lhs.norm(), f64::max);
        Ok((lhs - rhs).norm() / scale.max(f64::MIN_POSITIVE))
    }
}

/// Relative error of the `M`-term Gamma-product expansion
/// `Π Γ(a_ν − λ_ν w) ≈ (2π)^((N−1)/2) Π λ_ν^(a_ν−λ_ν w−1/2) Σ_{m<=M} P_m(a) Γ(a − (N−1)/2 − w − m)`,
/// with `ps = [P_0, .., P_M]` (at least `M+1` entries).
pub fn gamma_product_error(ps: &[MultiPoly], a: &[Complex64], lambdas: &[f64], w: Complex64, order: usize) -> Result<f64> {
    let n = a.len();
    if lambdas.len() != n || n < 2 {
        return invalid("need matching a and lambda vectors with N >= 2");
    }
    if ps.len() <= order {
        return invalid(format!("need P_0..P_{order}, got {} polynomials", ps.len()));
    }
    let a_sum: Complex64 = a.iter().sum();
    let shift = (n as f64 - 1.0) / 2.0;
    let mut log_lhs = Complex64::new(0.0, 0.0);
    let mut log_pref = Complex64::new(shift * (2.0 * PI).ln(), 0.0);
    for (&av, &l) in a.iter().zip(lambdas) {
        log_lhs += log_gamma(av - l * w)?;
        log_pref += (av - l * w - 0.5) * l.ln();
    }
    let mut ratio = Complex64::new(0.0, 0.0);
    for (m, p) in ps.iter().take(order + 1).enumerate() {
        let g = log_gamma(a_sum - shift - w - m as f64)?;
        ratio += p.evaluate(a)? * (log_pref + g - log_lhs).exp();
    }
    Ok((ratio - 1.0).norm())
}
