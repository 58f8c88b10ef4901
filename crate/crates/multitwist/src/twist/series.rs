use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use super::{z_x, EvalParams};
use crate::error::{invalid, Error, Result};
use crate::specfun::log_gamma;
use crate::spectrum::TwistFamily;

/// `F_X(s, α) = Σ Π a_ν(n_ν) n_ν^(−s_ν) exp(−z_X(α) Π n_ν^(κ_ν))` at `X = params.x`.
pub fn smoothed_twist_series(
    family: &TwistFamily,
    s: &[Complex64],
    alpha: f64,
    params: &EvalParams,
) -> Result<Complex64> {
    let v = smoothed_twist_ladder(family, &[s.to_vec()], alpha, &[params.x], params)?;
    Ok(v[0][0])
}

/// `F_X(s, α)` for every point and every `X`; `result[point][rung]`.
///
/// Terms are summed while `Π n_ν^(κ_ν) <= B_X`, with `B_X` the smallest bound
/// whose tail estimate is below `params.series_tol`.
pub fn smoothed_twist_ladder(
    family: &TwistFamily,
    points: &[Vec<Complex64>],
    alpha: f64,
    xs: &[f64],
    params: &EvalParams,
) -> Result<Vec<Vec<Complex64>>> {
    if !(alpha > 0.0) {
        return invalid(format!("alpha must be positive, got {alpha}"));
    }
    if let Some(x) = xs.iter().find(|&&x| !(x >= 1.0)) {
        return invalid(format!("smoothing parameter X must be >= 1, got {x}"));
    }
    for p in points {
        family.check_point(p)?;
    }
    if points.is_empty() || xs.is_empty() {
        return Ok(vec![Vec::new(); points.len()]);
    }
    let sigma_min: Vec<f64> = (0..family.len())
        .map(|nu| points.iter().map(|p| p[nu].re).fold(f64::INFINITY, f64::min))
        .collect();
    if family.kappa().iter().all(|k| *k == family.kappa()[0]) {
        grouped(family, points, alpha, xs, params, &sigma_min)
    } else {
        generic(family, points, alpha, xs, params, &sigma_min)
    }
}

/// Equal exponents: the terms depend on `n` only through `m = Π n_ν`, so the
/// Dirichlet convolution `c(m) = Σ_{Π n_ν = m} Π a_ν(n_ν) n_ν^(−s_ν)` is formed
/// once per point and shared by every `X`.
fn grouped(
    family: &TwistFamily,
    points: &[Vec<Complex64>],
    alpha: f64,
    xs: &[f64],
    params: &EvalParams,
    sigma_min: &[f64],
) -> Result<Vec<Vec<Complex64>>> {
    let n = family.len();
    let kappa = family.kappa_f64()[0];
    let low = sigma_min.iter().cloned().fold(f64::INFINITY, f64::min);
    let p = (n as f64 - 1.0) / 2.0 - low;
    let amp = 2f64.powi(n as i32 - 1)
        * family.members().iter().map(|m| m.coefficient_bound()).product::<f64>();
    let support: Option<u64> = family
        .members()
        .iter()
        .map(|m| m.support_len())
        .try_fold(1u64, |acc, s| s.map(|s| acc.saturating_mul(s)));
    let mut cutoffs = Vec::with_capacity(xs.len());
    for &x in xs {
        let a = 2.0 * PI * alpha / x;
        let mut m = grouped_cutoff(a, kappa, p, amp, params.series_tol);
        if let Some(sup) = support {
            m = m.min(sup as f64);
        }
        if m > params.max_terms as f64 {
            return Err(Error::Cutoff {
                required: m.min(u64::MAX as f64) as u64,
                limit: params.max_terms,
            });
        }
        cutoffs.push(m as usize);
    }
    let m_max = *cutoffs.iter().max().unwrap();
    let logs: Vec<f64> = (0..=m_max).map(|k| if k == 0 { 0.0 } else { (k as f64).ln() }).collect();
    let mut conv: Vec<Vec<Complex64>> = Vec::with_capacity(points.len());
    for s in points {
        let mut cur = member_terms(family, 0, s[0], &logs);
        for nu in 1..n {
            let next = member_terms(family, nu, s[nu], &logs);
            let mut out = vec![Complex64::zero(); m_max + 1];
            for i in 1..=m_max {
                let ci = cur[i];
                if ci.is_zero() {
                    continue;
                }
                let mut k = i;
                for nj in next.iter().take(m_max / i + 1).skip(1) {
                    out[k] += ci * nj;
                    k += i;
                }
            }
            cur = out;
        }
        conv.push(cur);
    }
    let mut out = vec![vec![Complex64::zero(); xs.len()]; points.len()];
    for (j, (&x, &cut)) in xs.iter().zip(&cutoffs).enumerate() {
        let z = z_x(alpha, x);
        for m in 1..=cut {
            let w = (kappa * logs[m]).exp();
            let e = Complex64::from_polar((-z.re * w).exp(), -z.im * w);
            for (acc, c) in out.iter_mut().zip(&conv) {
                acc[j] += c[m] * e;
            }
        }
    }
    Ok(out)
}

fn member_terms(family: &TwistFamily, nu: usize, s: Complex64, logs: &[f64]) -> Vec<Complex64> {
    let member = &family.members()[nu];
    let mut v = vec![Complex64::zero(); logs.len()];
    for (k, slot) in v.iter_mut().enumerate().skip(1) {
        let a = member.coefficient(k as u64);
        if !a.is_zero() {
            *slot = a * (-s * logs[k]).exp();
        }
    }
    v
}

/// Smallest `M` with `amp Σ_{m>M} m^p e^(−a m^κ) <= tol`, using the incomplete
/// Gamma bound `Γ(σ, y) <= y^(σ−1) e^(−y) · y/(y − σ + 1)` for `y > σ − 1`,
/// or `Σ_{m>M} m^p <= M^(p+1)/(−p−1)` when `p < −1`.
fn grouped_cutoff(a: f64, kappa: f64, p: f64, amp: f64, tol: f64) -> f64 {
    let power = if p < -1.0 {
        (amp / ((-p - 1.0) * tol)).powf(1.0 / (-p - 1.0)).ceil() + 1.0
    } else {
        f64::INFINITY
    };
    let sig = (p + 1.0) / kappa;
    let log_pref = amp.ln() - kappa.ln() - sig * a.ln();
    let mut y = (p / kappa).max(sig).max(0.0) + 1.0;
    let log_bound = |y: f64| {
        let corr = if sig > 1.0 { (y / (y - sig + 1.0)).ln() } else { 0.0 };
        log_pref + (sig - 1.0) * y.ln() - y + corr
    };
    while log_bound(y) > tol.ln() {
        y += 0.25;
    }
    ((y / a).powf(1.0 / kappa).ceil() + 1.0).min(power)
}

/// Unequal exponents: direct enumeration of the region `Π n_ν^(κ_ν) <= B`,
/// with `B` from `e^(−aΠn^κ) <= e^(−aθB) Π_ν e^(−a(1−θ) n_ν^(κ_ν)/N)` outside it.
fn generic(
    family: &TwistFamily,
    points: &[Vec<Complex64>],
    alpha: f64,
    xs: &[f64],
    params: &EvalParams,
    sigma_min: &[f64],
) -> Result<Vec<Vec<Complex64>>> {
    let n = family.len();
    let kappa = family.kappa_f64();
    let amps: Vec<f64> = family.members().iter().map(|m| m.coefficient_bound()).collect();
    let rho_max = (0..n)
        .map(|nu| (sigma_min[nu] - 1.0) / kappa[nu])
        .fold(f64::INFINITY, f64::min)
        .max(0.0);
    let mut bounds = Vec::with_capacity(xs.len());
    for &x in xs {
        let a = 2.0 * PI * alpha / x;
        let mut best = f64::INFINITY;
        for theta in [0.0, 0.25, 0.5, 0.75] {
            for rho in [0.0, 0.5 * rho_max, 0.9 * rho_max] {
                if theta == 0.0 && rho == 0.0 {
                    continue;
                }
                let b = a * (1.0 - theta) / n as f64;
                let mut log_s = 0.0;
                for nu in 0..n {
                    log_s += axis_mass(amps[nu], sigma_min[nu] - rho * kappa[nu], kappa[nu], b)?;
                }
                best = best.min(solve_bound(a * theta, rho, log_s - params.series_tol.ln()));
            }
        }
        bounds.push(best.max(1.0));
    }
    let b_max = bounds.iter().cloned().fold(0.0, f64::max);
    for nu in 0..n {
        let reach = b_max.powf(1.0 / kappa[nu]);
        let cap = family.members()[nu].support_len().map_or(f64::INFINITY, |s| s as f64);
        if reach.min(cap) > params.max_terms as f64 {
            return Err(Error::Cutoff {
                required: reach.min(u64::MAX as f64) as u64,
                limit: params.max_terms,
            });
        }
    }
    let zs: Vec<Complex64> = xs.iter().map(|&x| z_x(alpha, x)).collect();
    let mut out = vec![vec![Complex64::zero(); xs.len()]; points.len()];
    let mut idx = vec![1u64; n];
    walk(family, &kappa, points, &zs, &bounds, b_max, 0, 0.0, &mut idx, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    family: &TwistFamily,
    kappa: &[f64],
    points: &[Vec<Complex64>],
    zs: &[Complex64],
    bounds: &[f64],
    b_max: f64,
    nu: usize,
    log_u: f64,
    idx: &mut Vec<u64>,
    out: &mut [Vec<Complex64>],
) {
    let n = family.len();
    let log_b = b_max.ln() * (1.0 + 1e-14);
    let cap = family.members()[nu].support_len().unwrap_or(u64::MAX);
    let mut k = 1u64;
    while k <= cap {
        let lu = log_u + kappa[nu] * (k as f64).ln();
        if lu > log_b {
            break;
        }
        idx[nu] = k;
        if nu + 1 < n {
            walk(family, kappa, points, zs, bounds, b_max, nu + 1, lu, idx, out);
        } else {
            let coef = family.coefficient_product(idx);
            if !coef.is_zero() {
                let u = lu.exp();
                for (acc, s) in out.iter_mut().zip(points) {
                    let ls: Complex64 = s.iter().zip(idx.iter()).map(|(z, &m)| z * (m as f64).ln()).sum();
                    let base = coef * (-ls).exp();
                    for (j, z) in zs.iter().enumerate() {
                        if u <= bounds[j] {
                            acc[j] += base * (-z * u).exp();
                        }
                    }
                }
            }
        }
        k += 1;
    }
    idx[nu] = 1;
}

/// Smallest `B >= 1` with `c B + ρ log B >= rhs`.
fn solve_bound(c: f64, rho: f64, rhs: f64) -> f64 {
    if rhs <= 0.0 {
        return 1.0;
    }
    let f = |b: f64| c * b + rho * b.ln();
    let mut hi = 2.0;
    while f(hi) < rhs {
        hi *= 2.0;
        if hi > 1e300 {
            return f64::INFINITY;
        }
    }
    let mut lo = 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < rhs {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// `log` of an upper bound for `A Σ_n n^(−σ) e^(−b n^κ)`: `A(1 + 1/(σ−1))` for
/// `σ > 1`, otherwise (with `σ` lowered to at most `1/2`) the maximum of the
/// summand plus its integral over `(0, ∞)`.
fn axis_mass(amp: f64, sigma: f64, kappa: f64, b: f64) -> Result<f64> {
    let plain = if sigma > 1.0 { 1.0 + 1.0 / (sigma - 1.0) } else { f64::INFINITY };
    let sig = sigma.min(0.5);
    let peak = if sig >= 0.0 {
        1.0
    } else {
        let t = -sig / (kappa * b);
        (t.ln() * (-sig / kappa) + sig / kappa).exp().max(1.0)
    };
    let e = (1.0 - sig) / kappa;
    let integral = (log_gamma(Complex64::new(e, 0.0))?.re - kappa.ln() - e * b.ln()).exp();
    Ok((amp * (peak + integral).min(plain)).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta;
    use num_rational::BigRational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_identity_twist() {
        let f = TwistFamily::zetas(&[(1, 1)]).unwrap();
        let p = EvalParams {
            x: 50.0,
            ..EvalParams::default()
        };
        let v = smoothed_twist_series(&f, &[c(2.0, 0.0)], 1.0, &p).unwrap();
        let exact: f64 = (1..100_000).map(|n| (n as f64).powi(-2) * (-2.0 * PI * n as f64 / 50.0).exp()).sum();
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn grouped_matches_generic() {
        let f = TwistFamily::zetas(&[(1, 2), (1, 2)]).unwrap();
        let p = EvalParams::default();
        let s = vec![c(1.2, 0.3), c(0.9, -0.2)];
        let g = smoothed_twist_ladder(&f, &[s.clone()], 0.7, &[5.0, 8.0], &p).unwrap();
        let sig = [0.9, 0.9];
        let h = generic(&f, &[s], 0.7, &[5.0, 8.0], &p, &sig).unwrap();
        for j in 0..2 {
            assert!((g[0][j] - h[0][j]).norm() < 1e-10, "{} {}", g[0][j], h[0][j]);
        }
    }

    #[test]
    fn doubling_cutoff_stable() {
        let f = TwistFamily::zetas(&[(1, 2), (1, 2)]).unwrap();
        let p = EvalParams::default();
        let tight = EvalParams {
            series_tol: 1e-16,
            ..EvalParams::default()
        };
        let s = vec![c(2.0, 0.0), c(2.0, 0.0)];
        let a = smoothed_twist_series(&f, &s, 0.7, &p).unwrap();
        let b = smoothed_twist_series(&f, &s, 0.7, &tight).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn large_x_approaches_direct_sum() {
        let f = TwistFamily::new(
            vec![crate::lfunc::SelbergDatum::zeta(); 2],
            vec![BigRational::new(1.into(), 3.into()), BigRational::new(2.into(), 3.into())],
        )
        .unwrap();
        let s = vec![c(9.0, 0.0), c(8.0, 1.0)];
        let mut direct = Complex64::zero();
        for n1 in 1..60u64 {
            for n2 in 1..60u64 {
                let u = (n1 as f64).powf(1.0 / 3.0) * (n2 as f64).powf(2.0 / 3.0);
                direct += (-s[0] * (n1 as f64).ln() - s[1] * (n2 as f64).ln()).exp()
                    * Complex64::from_polar(1.0, -2.0 * PI * 0.3 * u);
            }
        }
        let p = EvalParams {
            x: 1e13,
            series_tol: 1e-10,
            ..EvalParams::default()
        };
        let v = smoothed_twist_series(&f, &s, 0.3, &p).unwrap();
        assert!((v - direct).norm() < 1e-8, "{v} {direct}");
        let z = TwistFamily::zetas(&[(1, 1)]).unwrap();
        let v = smoothed_twist_series(&z, &[c(3.0, 0.0)], 1.0, &EvalParams { x: 1e13, ..p.clone() }).unwrap();
        assert!((v - zeta(c(3.0, 0.0)).unwrap()).norm() < 1e-8);
        let far = smoothed_twist_series(&f, &[c(0.1, 0.0), c(0.1, 0.0)], 0.3, &EvalParams { x: 1e6, ..p });
        assert!(matches!(far, Err(Error::Cutoff { .. })));
    }
}
