use std::f64::consts::PI;

use num_complex::Complex64;

use super::{z_x, EvalParams};
use crate::error::{invalid, Error, Result};
use crate::specfun::log_gamma;
use crate::spectrum::TwistFamily;

/// Margin by which `Re(s_ν + κ_ν c)` must exceed 1 on the contour.
const ABSCISSA_MARGIN: f64 = 1e-3;

/// Consecutive negligible nodes required before the trapezoid stops.
const QUIET_NODES: usize = 60;

/// `F_X(s, α) = (1/2πi) ∫_(c) Π F_ν(s_ν + κ_ν w) Γ(w) z_X(α)^(−w) dw` by the
/// trapezoidal rule on `Re w = c`, truncated once the integrand has decayed.
pub fn smoothed_twist_mb(
    family: &TwistFamily,
    s: &[Complex64],
    alpha: f64,
    params: &EvalParams,
) -> Result<Complex64> {
    family.check_point(s)?;
    if !(alpha > 0.0) {
        return invalid(format!("alpha must be positive, got {alpha}"));
    }
    if !(params.x >= 1.0) {
        return invalid(format!("smoothing parameter X must be >= 1, got {}", params.x));
    }
    let kappa = family.kappa_f64();
    let c = match params.contour.c {
        Some(c) => c,
        None => kappa
            .iter()
            .zip(s)
            .map(|(k, z)| (1.5 - z.re) / k)
            .fold(0.5, f64::max),
    };
    if !(c > 0.0) {
        return invalid(format!("contour abscissa must be positive, got {c}"));
    }
    for (nu, (k, z)) in kappa.iter().zip(s).enumerate() {
        if z.re + k * c <= 1.0 + ABSCISSA_MARGIN {
            return invalid(format!(
                "contour abscissa c = {c} puts member {} at Re = {} on the line; need Re(s + kappa c) > 1",
                nu + 1,
                z.re + k * c
            ));
        }
    }
    let lz = z_x(alpha, params.x).ln();
    let integrand = |v: f64| -> Result<Complex64> {
        let w = Complex64::new(c, v);
        let mut val = (log_gamma(w)? - w * lz).exp();
        for ((m, k), z) in family.members().iter().zip(&kappa).zip(s) {
            val *= m.evaluate(z + k * w)?;
        }
        Ok(val)
    };
    let h = params.contour.step;
    let peak = lz.exp().norm() + 10.0;
    let mut sum = integrand(0.0)?;
    for dir in [1.0, -1.0] {
        let mut quiet = 0;
        let mut k = 1usize;
        loop {
            let v = dir * k as f64 * h;
            if v.abs() > params.contour.max_height {
                return Err(Error::Convergence {
                    message: format!(
                        "Mellin-Barnes integrand has not decayed at |Im w| = {}",
                        params.contour.max_height
                    ),
                    history: vec![],
                });
            }
            let f = integrand(v)?;
            sum += f;
            if f.norm() * h < params.mb_tol * 1e-2 {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= QUIET_NODES && v.abs() > peak {
                break;
            }
            k += 1;
        }
    }
    Ok(sum * h / (2.0 * PI))
}
