//! Smoothed twists `F_X(s, α)`, their continuation in `s` and the residues on
//! the hyperplanes `H*_ℓ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

mod continuation;
mod ladder;
mod mb;
mod residue;
mod series;

pub use continuation::{
    continue_twist, continue_twist_batch, continue_twist_report, gamma_quotient, Continuation, Mode,
};
pub use ladder::{fit_ladder, LadderFit};
pub use mb::smoothed_twist_mb;
pub use residue::{
    analytic_residue, numeric_residue, numeric_residue_along, verify_residues, NumericResidue, ResidueFormula,
    ResidueReport,
};
pub use series::{smoothed_twist_ladder, smoothed_twist_series};

/// `z_X(α) = 2πα(1/X + i)`.
pub fn z_x(alpha: f64, x: f64) -> Complex64 {
    Complex64::new(2.0 * PI * alpha / x, 2.0 * PI * alpha)
}

/// Vertical contour `Re w = c` for the Mellin-Barnes integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Contour {
    /// Abscissa; chosen automatically when absent.
    pub c: Option<f64>,
    pub step: f64,
    /// Largest `|Im w|` the trapezoid may reach before giving up.
    pub max_height: f64,
}

impl Default for Contour {
    fn default() -> Self {
        Contour {
            c: None,
            step: 0.05,
            max_height: 5000.0,
        }
    }
}

/// Geometric schedule `X_j = x0 · ratio^j`, `j < rungs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct XLadder {
    pub x0: f64,
    pub ratio: f64,
    pub rungs: usize,
}

impl Default for XLadder {
    fn default() -> Self {
        XLadder {
            x0: 10.0,
            ratio: std::f64::consts::SQRT_2.sqrt(),
            rungs: 21,
        }
    }
}

impl XLadder {
    pub fn values(&self) -> Vec<f64> {
        (0..self.rungs).map(|j| self.x0 * self.ratio.powi(j as i32)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalParams {
    /// Smoothing parameter for single evaluations of `F_X`.
    pub x: f64,
    /// Absolute bound on the neglected series tail.
    pub series_tol: f64,
    /// Largest admissible series cutoff.
    pub max_terms: u64,
    pub contour: Contour,
    /// Absolute accuracy target of the Mellin-Barnes quadrature.
    pub mb_tol: f64,
    pub ladder: XLadder,
    /// Rungs evaluated before Cauchy-difference stopping is tried (α off the spectrum).
    pub min_rungs: usize,
    /// Highest integer power `P` in the extrapolation basis `X^0, .., X^(-P)`.
    pub int_powers: usize,
    /// Relative Cauchy difference accepted as converged.
    pub ladder_tol: f64,
    /// Relative spread above which the extrapolation is reported as failed.
    pub ladder_fail_tol: f64,
    /// Distance to `H*_ℓ` treated as lying on the locus.
    pub pole_tol: f64,
    pub alpha_tol: f64,
    /// Approach steps for numeric residues.
    pub residue_eps: Vec<f64>,
    pub max_retries: usize,
    pub seed: u64,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            x: 10.0,
            series_tol: 1e-12,
            max_terms: 8_000_000,
            contour: Contour::default(),
            mb_tol: 1e-12,
            ladder: XLadder::default(),
            min_rungs: 7,
            int_powers: 6,
            ladder_tol: 1e-7,
            ladder_fail_tol: 1e-3,
            pole_tol: 1e-8,
            alpha_tol: crate::spectrum::DEFAULT_ALPHA_TOL,
            residue_eps: vec![0.08, 0.04, 0.02, 0.01],
            max_retries: 5,
            seed: 0,
        }
    }
}
