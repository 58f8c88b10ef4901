//! Complex special functions: log-Gamma, Bernoulli polynomials, Pochhammer
//! symbols, the generalized Stirling expansion, Hurwitz zeta, and a
//! trapezoidal rule on vertical lines used for Mellin-Barnes integrals.
//!
//! | function | method |
//! |---|---|
//! | `log_gamma` | upward recursion to `|z| >= 12`, Stirling series with 12 terms; reflection for `Re z < 1/2` |
//! | `bernoulli_poly` | exact rational coefficient table, `n <= 32` |
//! | `stirling_log_gamma` | truncated series in `B_{j+1}(s)` with an explicit remainder bound |
//! | `hurwitz_zeta` | Euler-Maclaurin summation |

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

pub const MAX_BERNOULLI: usize = 32;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_RADIUS: f64 = 12.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `log Γ(z)`, analytic on `C \ (-∞, 0]`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return invalid(format!("log_gamma of non-finite argument {z}"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            what: "Gamma".into(),
            at: z,
        });
    }
    if z.re < 0.5 {
        let k = (0.5 * z.re + 0.25).floor();
        let tmp = (2.0 * PI).copysign(z.im) * k;
        Ok(c(PI.ln(), tmp) - log_sin_pi(z) - log_gamma_right(c(1.0, 0.0) - z))
    } else {
        Ok(log_gamma_right(z))
    }
}

fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::zero();
    while w.norm() < STIRLING_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling_series(w) - shift
}

fn stirling_series(w: Complex64) -> Complex64 {
    let b = bernoulli_f64();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut sum = Complex64::zero();
    for k in 1..=12 {
        let n = 2 * k;
        sum += term * (b[n] / ((n * (n - 1)) as f64));
        term *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + sum
}

/// Principal `Log(sin(πz))`, stable for large `|Im z|`.
fn log_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() > 20.0 {
        let x = PI * z.re;
        let y = PI * z.im;
        let re = y.abs() - std::f64::consts::LN_2;
        let im = (y.signum() * x.cos()).atan2(x.sin());
        c(re, im)
    } else {
        (z * PI).sin().ln()
    }
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `1/Γ(z)`, zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::zero(),
    }
}

/// Rising factorial `z(z+1)...(z+m-1)`.
pub fn pochhammer(z: Complex64, m: usize) -> Complex64 {
    (0..m).fold(Complex64::one(), |acc, k| acc * (z + k as f64))
}

fn bernoulli_table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_BERNOULLI + 1);
        b.push(BigRational::one());
        for n in 1..=MAX_BERNOULLI {
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binomial(n + 1, k)) * bk;
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b
    })
}

fn bernoulli_f64() -> &'static Vec<f64> {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_table().iter().map(ratio_to_f64).collect())
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> Result<BigRational> {
    bernoulli_table()
        .get(n)
        .cloned()
        .ok_or(Error::BernoulliIndex(n))
}

/// Coefficients of `B_n(x)` in increasing powers of `x`.
pub fn bernoulli_poly_coeffs(n: usize) -> Result<Vec<BigRational>> {
    if n > MAX_BERNOULLI {
        return Err(Error::BernoulliIndex(n));
    }
    let b = bernoulli_table();
    Ok((0..=n)
        .map(|p| BigRational::from_integer(binomial(n, p)) * &b[n - p])
        .collect())
}

fn bernoulli_poly_f64(n: usize) -> Result<&'static [f64]> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        (0..=MAX_BERNOULLI)
            .map(|k| {
                bernoulli_poly_coeffs(k)
                    .expect("index within table")
                    .iter()
                    .map(ratio_to_f64)
                    .collect()
            })
            .collect()
    });
    t.get(n)
        .map(|v| v.as_slice())
        .ok_or(Error::BernoulliIndex(n))
}

/// `B_n(x)` evaluated by Horner's rule on the exact coefficient table.
pub fn bernoulli_poly(n: usize, x: Complex64) -> Result<Complex64> {
    let coeffs = bernoulli_poly_f64(n)?;
    Ok(coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &a| acc * x + a))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingApprox {
    pub value: Complex64,
    pub order: usize,
    pub error_bound: f64,
}

pub const STIRLING_DELTA: f64 = 0.1;

/// Truncated expansion of `log Γ(z + s)` for large `z`:
/// `(z+s-1/2) log z - z + log(2π)/2 + Σ_{j<=M} (-1)^(j+1) B_{j+1}(s) / (j(j+1) z^j)`.
///
/// The remainder bound is `C_M/|z|^(M+1)` with
/// `C_M = 2 max(|B_{M+2}(s)|, |B_{M+2}|) / ((M+1)(M+2) cos(arg(z)/2)^(M+2))`,
/// twice the first omitted term inflated by the usual sector factor.
pub fn stirling_log_gamma(z: Complex64, s: Complex64, order: usize) -> Result<StirlingApprox> {
    if order < 1 || order + 2 > MAX_BERNOULLI {
        return invalid(format!("Stirling order {order} outside 1..={}", MAX_BERNOULLI - 2));
    }
    if z.norm() < 2.0 || z.arg().abs() > PI - STIRLING_DELTA {
        return Err(Error::OutsideSector {
            z,
            delta: STIRLING_DELTA,
        });
    }
    let lz = z.ln();
    let mut value = (z + s - 0.5) * lz - z + LN_SQRT_2PI;
    let zinv = z.inv();
    let mut zp = zinv;
    for j in 1..=order {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        value += zp * bernoulli_poly(j + 1, s)? * (sign / ((j * (j + 1)) as f64));
        zp *= zinv;
    }
    let next = order + 2;
    let bs = bernoulli_poly(next, s)?.norm();
    let b0 = bernoulli_f64()[next].abs();
    let sector = (z.arg() / 2.0).cos().powi(next as i32);
    let cm = 2.0 * bs.max(b0) / (((order + 1) * (order + 2)) as f64 * sector);
    Ok(StirlingApprox {
        value,
        order,
        error_bound: cm / z.norm().powi(order as i32 + 1),
    })
}

/// Trapezoidal rule on the vertical line `Re w = c`, `|Im w| <= height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineQuadrature {
    pub step: f64,
    pub height: f64,
}

impl Default for LineQuadrature {
    fn default() -> Self {
        LineQuadrature {
            step: 0.05,
            height: 60.0,
        }
    }
}

impl LineQuadrature {
    /// `(1/2πi) ∫_{c-iT}^{c+iT} f(w) dw`.
    pub fn integrate<F>(&self, c: f64, mut f: F) -> Complex64
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let n = (self.height / self.step).ceil() as i64;
        let mut sum = f(Complex64::new(c, 0.0));
        for k in 1..=n {
            let v = k as f64 * self.step;
            sum += f(Complex64::new(c, v)) + f(Complex64::new(c, -v));
        }
        sum * (self.step / (2.0 * PI))
    }
}

/// Numerical value of `(1/2πi) ∫_(c) Γ(ξ-w)Γ(w)η^(-w) dw`, whose closed form is
/// `Γ(ξ)(1+η)^(-ξ)`.
pub fn mellin_kernel_check(xi: Complex64, eta: Complex64, c: f64) -> Result<Complex64> {
    mellin_kernel_check_with(xi, eta, c, &LineQuadrature::default())
}

pub fn mellin_kernel_check_with(
    xi: Complex64,
    eta: Complex64,
    c: f64,
    quad: &LineQuadrature,
) -> Result<Complex64> {
    if !(c > 0.0 && c < xi.re) {
        return invalid(format!("need 0 < c < Re(xi); got c = {c}, xi = {xi}"));
    }
    if eta.norm() == 0.0 || eta.arg().abs() >= PI {
        return invalid(format!("need |arg eta| < pi; got eta = {eta}"));
    }
    if !(quad.step > 0.0 && quad.height > 0.0) {
        return invalid("quadrature step and height must be positive");
    }
    let log_eta = eta.ln();
    let mut failure = None;
    let value = quad.integrate(c, |w| {
        match (log_gamma(xi - w), log_gamma(w)) {
            (Ok(a), Ok(b)) => (a + b - w * log_eta).exp(),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                Complex64::zero()
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k>=0} (k+a)^(-s)` for `Re a > 0`, continued to `s ≠ 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return invalid(format!("Hurwitz parameter must be positive, got {a}"));
    }
    if (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole {
            what: "zeta".into(),
            at: s,
        });
    }
    let n = (s.norm().ceil() as usize + 6).max(10);
    let mut sum = Complex64::zero();
    for k in 0..n {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let na = n as f64 + a;
    let ln_na = na.ln();
    let pow = (-s * ln_na).exp();
    sum += pow * na / (s - 1.0) + pow * 0.5;
    let b = bernoulli_f64();
    let mut rising = s;
    let mut npow = pow / na;
    let mut fact = 2.0;
    for j in 1..=15 {
        let term = rising * npow * (b[2 * j] / fact);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        rising *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        npow /= na * na;
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
    }
    Ok(sum)
}

/// Riemann zeta function.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}
