use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use super::ladder::{fit_ladder, LadderFit};
use super::residue::ResidueFormula;
use super::series::smoothed_twist_ladder;
use super::EvalParams;
use crate::error::{Error, Result};
use crate::specfun::{gamma, rgamma};
use crate::spectrum::{AlphaSpec, TwistFamily};

/// How the singular terms `Ξ_k Γ(τ_k) (−iX)^(τ_k)`, `k <= ℓ`, are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Subtract them with the closed-form `Ξ_k`.
    Analytic,
    /// Fit their coefficients from the ladder along with everything else.
    Fitted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Continuation {
    pub value: Complex64,
    pub ell: Option<usize>,
    pub in_spectrum: bool,
    pub xs: Vec<f64>,
    /// `F_X(s, α)` on the ladder.
    pub raw: Vec<Complex64>,
    /// `|F_{X_(j+1)} − F_(X_j)|`.
    pub differences: Vec<f64>,
    pub fit: LadderFit,
}

/// Analytic continuation of `F(s, α)`.
pub fn continue_twist(family: &TwistFamily, s: &[Complex64], alpha: f64, params: &EvalParams) -> Result<Complex64> {
    Ok(continue_twist_report(family, s, alpha, params, Mode::Analytic)?.value)
}

pub fn continue_twist_report(
    family: &TwistFamily,
    s: &[Complex64],
    alpha: f64,
    params: &EvalParams,
    mode: Mode,
) -> Result<Continuation> {
    Ok(continue_twist_batch(family, &[s.to_vec()], alpha, params, mode)?.remove(0))
}

/// `F(s, α) / Γ(Σ d_ν s_ν − (d+1)/2 + iθ)`, entire in `s`.
pub fn gamma_quotient(family: &TwistFamily, s: &[Complex64], alpha: f64, params: &EvalParams) -> Result<Complex64> {
    let f = continue_twist(family, s, alpha, params)?;
    Ok(f * rgamma(-family.tau0(s)))
}

/// `(−iX)^τ` on the principal branch, `arg(−iX) = −π/2`.
pub(crate) fn rotated_power(x: f64, tau: Complex64) -> Complex64 {
    (tau * Complex64::new(x.ln(), -FRAC_PI_2)).exp()
}

/// Continuation at several points sharing one ladder of `F_X` evaluations.
///
/// For `α` off the spectrum `F_X` converges and the ladder is extended until
/// the extrapolated limit stabilises. For `α` in the spectrum the correction
/// `Σ_{k<=ℓ} Ξ_k Γ(τ_k)[(−iX)^(τ_k) − 1]` is removed, the remainder is
/// extrapolated to `X = ∞` and `Σ_{k<=ℓ} Ξ_k Γ(τ_k)` is subtracted from the
/// limit.
pub fn continue_twist_batch(
    family: &TwistFamily,
    points: &[Vec<Complex64>],
    alpha: f64,
    params: &EvalParams,
    mode: Mode,
) -> Result<Vec<Continuation>> {
    for p in points {
        family.check_point(p)?;
    }
    let hit = family.membership(&AlphaSpec::Value(alpha), params.alpha_tol)?;
    if hit.is_none() {
        return off_spectrum(family, points, alpha, params);
    }
    let ells: Vec<Option<usize>> = points.iter().map(|p| family.strip_index(p)).collect();
    let formula = match (mode, ells.iter().flatten().max()) {
        (Mode::Analytic, Some(&m)) => Some(ResidueFormula::new(family, alpha, m, params.alpha_tol)?),
        _ => None,
    };
    // A locus whose closed-form residue vanishes at the point is not a pole there.
    let mut silent: Vec<Option<usize>> = vec![None; points.len()];
    for (i, p) in points.iter().enumerate() {
        let t0 = family.tau0(p);
        let k = t0.re.round();
        if k >= 0.0 && (t0 - k).norm() < params.pole_tol {
            let k = k as usize;
            let vanishes = match &formula {
                Some(f) if ells[i].is_some_and(|l| k <= l) => f.xi(k, p)?.norm() <= 1e-14,
                _ => false,
            };
            if !vanishes {
                return Err(Error::OnPoleLocus {
                    ell: k,
                    distance: (t0 - k as f64).norm(),
                });
            }
            silent[i] = Some(k);
        }
    }
    let xs = params.ladder.values();
    let raw = smoothed_twist_ladder(family, points, alpha, &xs, params)?;
    let p_int = params.int_powers;
    let mut out = Vec::with_capacity(points.len());
    for (((p, raw), ell), silent) in points.iter().zip(raw).zip(ells).zip(silent) {
        let t0 = family.tau0(p);
        let first = match (mode, ell) {
            (Mode::Analytic, Some(l)) => l + 1,
            _ => 0,
        };
        let last = t0.re.ceil().max(0.0) as usize + p_int + 1;
        let exponents: Vec<Complex64> = (first..=last).map(|k| t0 - k as f64).collect();
        let mut shifted = raw.clone();
        let mut offset = Complex64::new(0.0, 0.0);
        if let (Some(f), Some(l)) = (&formula, ell) {
            for k in 0..=l {
                if silent == Some(k) {
                    continue;
                }
                let tau = t0 - k as f64;
                let c = f.xi(k, p)? * gamma(tau)?;
                for (v, &x) in shifted.iter_mut().zip(&xs) {
                    *v -= c * (rotated_power(x, tau) - 1.0);
                }
                offset += c;
            }
        }
        let fit = fit_ladder(&xs, &shifted, &exponents, p_int)?;
        let value = fit.limit - offset;
        if !(fit.spread <= params.ladder_fail_tol * value.norm().max(1.0)) {
            return Err(Error::Convergence {
                message: format!(
                    "extrapolated limit moves by {:e} when the smallest X is dropped",
                    fit.spread
                ),
                history: differences(&raw),
            });
        }
        out.push(Continuation {
            value,
            ell,
            in_spectrum: true,
            xs: xs.clone(),
            differences: differences(&raw),
            raw,
            fit,
        });
    }
    Ok(out)
}

fn differences(v: &[Complex64]) -> Vec<f64> {
    v.windows(2).map(|w| (w[1] - w[0]).norm()).collect()
}

/// `α ∉ Spec`: ladder extended rung by rung until successive extrapolated
/// limits agree to `ladder_tol`.
fn off_spectrum(
    family: &TwistFamily,
    points: &[Vec<Complex64>],
    alpha: f64,
    params: &EvalParams,
) -> Result<Vec<Continuation>> {
    let all = params.ladder.values();
    let start = params.min_rungs.min(all.len()).max(params.int_powers + 3);
    let mut xs: Vec<f64> = all[..start.min(all.len())].to_vec();
    let mut raw = smoothed_twist_ladder(family, points, alpha, &xs, params)?;
    let fit_all = |raw: &[Vec<Complex64>], xs: &[f64]| -> Result<Vec<LadderFit>> {
        raw.iter().map(|r| fit_ladder(xs, r, &[], params.int_powers)).collect()
    };
    let mut fits = fit_all(&raw, &xs)?;
    let mut history: Vec<f64> = Vec::new();
    let mut converged = false;
    while xs.len() < all.len() {
        let x = all[xs.len()];
        let next = match smoothed_twist_ladder(family, points, alpha, &[x], params) {
            Ok(v) => v,
            Err(Error::Cutoff { .. }) => break,
            Err(e) => return Err(e),
        };
        xs.push(x);
        for (r, n) in raw.iter_mut().zip(next) {
            r.push(n[0]);
        }
        let new_fits = fit_all(&raw, &xs)?;
        let change = fits
            .iter()
            .zip(&new_fits)
            .map(|(a, b)| (a.limit - b.limit).norm() / b.limit.norm().max(1.0))
            .fold(0.0, f64::max);
        history.push(change);
        fits = new_fits;
        if change <= params.ladder_tol {
            converged = true;
            break;
        }
    }
    let mut out = Vec::with_capacity(points.len());
    for (r, fit) in raw.into_iter().zip(fits) {
        if !converged && !(fit.spread <= params.ladder_fail_tol * fit.limit.norm().max(1.0)) {
            return Err(Error::Convergence {
                message: format!("X ladder exhausted at X = {}", xs.last().copied().unwrap_or(0.0)),
                history: history.clone(),
            });
        }
        out.push(Continuation {
            value: fit.limit,
            ell: None,
            in_spectrum: false,
            xs: xs.clone(),
            differences: differences(&r),
            raw: r,
            fit,
        });
    }
    Ok(out)
}
