use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::lstsq;

/// Exponents closer than this to an integer power `X^(−m)` of the basis are
/// paired with it through the column `X^(−m)(X^δ − 1)/δ`.
const PAIR_RADIUS: f64 = 0.25;

/// Least-squares fit of `v(X) ≈ Σ_m c_m X^(−m) + Σ_k b_k X^(τ_k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderFit {
    /// Constant term of the expansion, i.e. the limit as `X → ∞` once the
    /// growing terms are removed.
    pub limit: Complex64,
    /// Coefficient of the `X^0` column.
    pub constant: Complex64,
    /// Exponent `δ` paired with `X^0`, if any, and the coefficient of
    /// `(X^δ − 1)/δ`.
    pub pole_exponent: Option<Complex64>,
    pub pole_coefficient: Option<Complex64>,
    pub rms: f64,
    /// Change of `limit` when the smallest `X` is dropped.
    pub spread: f64,
    pub unknowns: usize,
}

enum Column {
    Power(f64),
    Singular(Complex64),
    Paired(usize, Complex64),
}

impl Column {
    fn eval(&self, x: f64) -> Complex64 {
        let lx = x.ln();
        match *self {
            Column::Power(m) => Complex64::new(x.powf(-m), 0.0),
            Column::Singular(t) => (t * lx).exp(),
            Column::Paired(m, d) => {
                let h = d * lx * 0.5;
                let ratio = if d.norm() == 0.0 {
                    Complex64::new(lx, 0.0)
                } else {
                    h.exp() * h.sinh() * 2.0 / d
                };
                ratio * x.powi(-(m as i32))
            }
        }
    }
}

/// Fits the values of a ladder with integer powers `X^0..X^(−P)` and the
/// given singular exponents (those with `Re τ <= −P − 1/2` are dropped).
pub fn fit_ladder(
    xs: &[f64],
    values: &[Complex64],
    exponents: &[Complex64],
    int_powers: usize,
) -> Result<LadderFit> {
    if xs.len() != values.len() {
        return invalid("ladder abscissae and values differ in length");
    }
    let mut cols: Vec<Column> = Vec::new();
    let mut paired = vec![None; int_powers + 1];
    for &t in exponents {
        if t.re <= -(int_powers as f64) - 0.5 {
            continue;
        }
        let m = (-t.re).round();
        if m >= 0.0 && (m as usize) <= int_powers && (t + m).norm() < PAIR_RADIUS && paired[m as usize].is_none() {
            paired[m as usize] = Some(t + m);
        } else {
            cols.push(Column::Singular(t));
        }
    }
    for (m, p) in paired.iter().enumerate() {
        cols.push(Column::Power(m as f64));
        if let Some(d) = p {
            cols.push(Column::Paired(m, *d));
        }
    }
    let unknowns = cols.len();
    if xs.len() < unknowns + 2 {
        return invalid(format!(
            "ladder has {} rungs but the fit has {} unknowns; need at least {}",
            xs.len(),
            unknowns,
            unknowns + 2
        ));
    }
    let solve = |from: usize| -> Result<(Complex64, Complex64, Option<Complex64>, f64)> {
        let rows: Vec<Vec<Complex64>> = xs[from..].iter().map(|&x| cols.iter().map(|c| c.eval(x)).collect()).collect();
        let (coef, rms) = lstsq(&rows, &values[from..])?;
        let mut constant = Complex64::new(0.0, 0.0);
        let mut pole = None;
        for (c, v) in cols.iter().zip(&coef) {
            match c {
                Column::Power(m) if *m == 0.0 => constant = *v,
                Column::Paired(0, _) => pole = Some(*v),
                _ => {}
            }
        }
        let limit = match (paired[0], pole) {
            (Some(d), Some(b)) => constant - b / d,
            _ => constant,
        };
        Ok((limit, constant, pole, rms))
    };
    let (limit, constant, pole, rms) = solve(0)?;
    let (other, ..) = solve(1)?;
    Ok(LadderFit {
        limit,
        constant,
        pole_exponent: paired[0],
        pole_coefficient: pole,
        rms,
        spread: (limit - other).norm(),
        unknowns,
    })
}
