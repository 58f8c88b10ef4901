use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::continuation::{continue_twist_batch, Mode};
use super::EvalParams;
use crate::error::{invalid, Error, Result};
use crate::spectrum::{AlphaSpec, SpectrumHit, TwistFamily};
use crate::sympoly::{w_ell_poly, MultiPoly};

/// Directions are normalised to `Σ d_ν u_ν = 1`; this bounds `|u| |d|`, whose
/// minimum over such directions is 1.
const MAX_DIRECTION_STRETCH: f64 = 3.0;

/// Closed-form residues `Ξ_k(s, α)`, `k = 0..=max_ell`, of a family at a fixed `α`.
#[derive(Debug, Clone)]
pub struct ResidueFormula {
    family: TwistFamily,
    hit: Option<SpectrumHit>,
    w: Vec<MultiPoly>,
}

impl ResidueFormula {
    pub fn new(family: &TwistFamily, alpha: f64, max_ell: usize, alpha_tol: f64) -> Result<Self> {
        let hit = family.membership(&AlphaSpec::Value(alpha), alpha_tol)?;
        let w = if hit.is_some() {
            let data = family.well_data(max_ell)?;
            (0..=max_ell).map(|k| w_ell_poly(&data, k)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        Ok(ResidueFormula {
            family: family.clone(),
            hit,
            w,
        })
    }

    pub fn hit(&self) -> Option<&SpectrumHit> {
        self.hit.as_ref()
    }

    pub fn max_ell(&self) -> Option<usize> {
        self.w.len().checked_sub(1)
    }

    pub fn w_poly(&self, k: usize) -> Option<&MultiPoly> {
        self.w.get(k)
    }

    /// `(1/√(2π)) e^(−iΣ((π/2)d_ν s_ν + (π/2)ξ_ν + d_ν θ_ν log(d_ν κ_ν))) Π (κ_ν q_ν^(1/d_ν)/2π)^(d_ν(1/2 − s_ν))`.
    pub fn prefactor(&self, s: &[Complex64]) -> Complex64 {
        let mut phase = Complex64::new(0.0, 0.0);
        let mut log_mag = Complex64::new(-0.5 * (2.0 * PI).ln(), 0.0);
        for ((inv, k), z) in self.family.invariants().iter().zip(self.family.kappa()).zip(s) {
            let k = k.to_f64().unwrap_or(f64::NAN);
            phase += PI / 2.0 * inv.d * z + PI / 2.0 * inv.xi + inv.d * inv.theta * (inv.d * k).ln();
            log_mag += inv.d * (0.5 - z) * (k * inv.q.powf(1.0 / inv.d) / (2.0 * PI)).ln();
        }
        (log_mag - Complex64::i() * phase).exp()
    }

    /// `Ξ_k(s, α)`; zero when `α` is not in the spectrum.
    pub fn xi(&self, k: usize, s: &[Complex64]) -> Result<Complex64> {
        self.family.check_point(s)?;
        let Some(hit) = &self.hit else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        let w = self.w.get(k).ok_or_else(|| {
            Error::InvalidInput(format!(
                "structural invariants prepared up to order {:?}, residue of order {k} requested",
                self.max_ell()
            ))
        })?;
        Ok(self.prefactor(s) * w.evaluate(s)? * self.family.xi_sum(Some(hit), s))
    }
}

/// `Ξ_ℓ(s, α)` from the closed form.
pub fn analytic_residue(family: &TwistFamily, s: &[Complex64], alpha: f64, ell: usize) -> Result<Complex64> {
    ResidueFormula::new(family, alpha, ell, crate::spectrum::DEFAULT_ALPHA_TOL)?.xi(ell, s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericResidue {
    pub value: Complex64,
    pub direction: Vec<Complex64>,
    pub epsilons: Vec<f64>,
    /// `(Σ d_ν(w_ν − s_ν)) F(w)` at each approach step.
    pub approach: Vec<Complex64>,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueReport {
    pub ell: usize,
    pub s: Vec<Complex64>,
    pub numeric: Complex64,
    pub analytic: Complex64,
    pub rel_error: f64,
    pub direction: Vec<Complex64>,
    pub epsilons: Vec<f64>,
    pub approach: Vec<Complex64>,
    pub attempts: usize,
    pub seed: u64,
}

fn require_spectrum(family: &TwistFamily, alpha: f64, tol: f64) -> Result<SpectrumHit> {
    family
        .membership(&AlphaSpec::Value(alpha), tol)?
        .ok_or(Error::NotInSpectrum(alpha))
}

/// `lim (Σ d_ν(w_ν − s_ν)) F(w, α)` as `w → s ∈ H*_ℓ` along `w = s + εu`.
///
/// The continuation is evaluated with every singular coefficient fitted from
/// the `X` ladder, so no closed-form residue enters. The products at the
/// steps `ε` are extrapolated to `ε = 0` by Neville's scheme.
pub fn numeric_residue(
    family: &TwistFamily,
    s: &[Complex64],
    alpha: f64,
    ell: usize,
    params: &EvalParams,
) -> Result<NumericResidue> {
    require_spectrum(family, alpha, params.alpha_tol)?;
    let locus = family.hyperplane(ell);
    family.check_point(s)?;
    let dist = locus.distance(s);
    if dist > 1e-6 {
        return invalid(format!("point is {dist:e} away from H*_{ell}"));
    }
    let s = locus.project(s)?;
    let degrees = family.degrees();
    let d_norm = degrees.iter().map(|d| d * d).sum::<f64>().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut last_err = None;
    for attempt in 1..=params.max_retries.max(1) {
        let u = loop {
            let u: Vec<Complex64> = (0..family.len())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm: Complex64 = degrees.iter().zip(&u).map(|(d, z)| d * z).sum();
            let size = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if size * d_norm <= MAX_DIRECTION_STRETCH * norm.norm() {
                break u.iter().map(|z| z / norm).collect::<Vec<_>>();
            }
        };
        match approach(family, &s, &u, alpha, ell, params) {
            Ok((value, approach)) => {
                return Ok(NumericResidue {
                    value,
                    direction: u,
                    epsilons: params.residue_eps.clone(),
                    approach,
                    attempts: attempt,
                })
            }
            Err(e @ (Error::OnPoleLocus { .. } | Error::Convergence { .. })) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Convergence {
        message: format!(
            "numeric residue failed for {} approach directions; last error: {}",
            params.max_retries.max(1),
            last_err.map_or_else(String::new, |e| e.to_string())
        ),
        history: vec![],
    })
}

/// Residue along `w = s + εu` with `Σ d_ν u_ν = 1`.
pub fn numeric_residue_along(
    family: &TwistFamily,
    s: &[Complex64],
    u: &[Complex64],
    alpha: f64,
    ell: usize,
    params: &EvalParams,
) -> Result<Complex64> {
    Ok(approach(family, s, u, alpha, ell, params)?.0)
}

fn approach(
    family: &TwistFamily,
    s: &[Complex64],
    u: &[Complex64],
    alpha: f64,
    ell: usize,
    params: &EvalParams,
) -> Result<(Complex64, Vec<Complex64>)> {
    if params.residue_eps.is_empty() {
        return invalid("residue_eps must list at least one step");
    }
    let degrees = family.degrees();
    let points: Vec<Vec<Complex64>> = params
        .residue_eps
        .iter()
        .map(|&e| s.iter().zip(u).map(|(z, d)| z + e * d).collect())
        .collect();
    for w in &points {
        let t0 = family.tau0(w);
        for k in 0..=(t0.re.ceil().max(0.0) as usize + 1) {
            if k != ell && (t0 - k as f64).norm() < 10.0 * params.pole_tol.max(1e-3) {
                return Err(Error::OnPoleLocus {
                    ell: k,
                    distance: (t0 - k as f64).norm(),
                });
            }
        }
    }
    let conts = continue_twist_batch(family, &points, alpha, params, Mode::Fitted)?;
    let vals: Vec<Complex64> = conts
        .iter()
        .zip(&points)
        .map(|(c, w)| {
            let gap: Complex64 = degrees.iter().zip(w.iter().zip(s)).map(|(d, (a, b))| d * (a - b)).sum();
            gap * c.value
        })
        .collect();
    Ok((neville_at_zero(&params.residue_eps, &vals), vals))
}

/// Value at `0` of the interpolating polynomial through `(x_i, y_i)`.
fn neville_at_zero(x: &[f64], y: &[Complex64]) -> Complex64 {
    let mut p = y.to_vec();
    let n = x.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
        }
    }
    p[0]
}

/// Compares numeric and closed-form residues at `n_samples` random points of `H*_ℓ`.
pub fn verify_residues(
    family: &TwistFamily,
    alpha: f64,
    ell: usize,
    n_samples: usize,
    params: &EvalParams,
) -> Result<Vec<ResidueReport>> {
    require_spectrum(family, alpha, params.alpha_tol)?;
    let formula = ResidueFormula::new(family, alpha, ell, params.alpha_tol)?;
    let locus = family.hyperplane(ell);
    let n = family.len();
    let base = locus.target / family.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut reports = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let head: Vec<Complex64> = (0..n - 1)
            .map(|_| base + Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)))
            .collect();
        let s = locus.complete(&head)?;
        let seed = params.seed.wrapping_add(i as u64 + 1);
        let sub = EvalParams {
            seed,
            ..params.clone()
        };
        let num = numeric_residue(family, &s, alpha, ell, &sub)?;
        let analytic = formula.xi(ell, &s)?;
        let rel_error = (num.value - analytic).norm() / analytic.norm().max(1e-300);
        reports.push(ResidueReport {
            ell,
            s,
            numeric: num.value,
            analytic,
            rel_error,
            direction: num.direction,
            epsilons: num.epsilons,
            approach: num.approach,
            attempts: num.attempts,
            seed,
        });
    }
    if n_samples > 0 && reports.iter().all(|r| r.analytic.norm() <= 1e-10) {
        return Err(Error::Vanishing { ell });
    }
    Ok(reports)
}
