use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Gaussian rational `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn mul(&self, o: &Self) -> Self {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }
}

/// A polynomial coefficient: exact when every input was rational, otherwise a
/// double flagged as inexact.
#[derive(Debug, Clone, PartialEq)]
pub enum Coeff {
    Exact(GaussRational),
    Approx(Complex64),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Exact(GaussRational::real(BigRational::zero()))
    }

    pub fn one() -> Self {
        Coeff::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Coeff::Exact(GaussRational::real(BigRational::from_integer(BigInt::from(n))))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Coeff::Exact(GaussRational::real(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn rational(r: BigRational) -> Self {
        Coeff::Exact(GaussRational::real(r))
    }

    pub fn gauss(re: BigRational, im: BigRational) -> Self {
        Coeff::Exact(GaussRational::new(re, im))
    }

    pub fn approx(z: Complex64) -> Self {
        Coeff::Approx(z)
    }

    /// Exact coefficient when both parts of `z` are small-denominator
    /// rationals to within `1e-12`, otherwise an inexact one.
    pub fn snapped(z: Complex64) -> Self {
        match (snap_rational(z.re), snap_rational(z.im)) {
            (Some(re), Some(im)) => Coeff::gauss(re, im),
            _ => Coeff::Approx(z),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(g) => g.is_zero(),
            Coeff::Approx(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coeff::Exact(g) => g.to_complex(),
            Coeff::Approx(z) => *z,
        }
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::gauss(&a.re + &b.re, &a.im + &b.im),
            _ => Coeff::Approx(self.to_complex() + o.to_complex()),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Exact(a) => Coeff::gauss(-&a.re, -&a.im),
            Coeff::Approx(z) => Coeff::Approx(-z),
        }
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a.mul(b)),
            _ => Coeff::Approx(self.to_complex() * o.to_complex()),
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        match self {
            Coeff::Exact(a) => match a.inv() {
                Some(i) => Ok(Coeff::Exact(i)),
                None => invalid("division by an exact zero coefficient"),
            },
            Coeff::Approx(z) if z.norm() == 0.0 => invalid("division by a zero coefficient"),
            Coeff::Approx(z) => Ok(Coeff::Approx(z.inv())),
        }
    }

    pub fn powi(&self, n: u32) -> Coeff {
        (0..n).fold(Coeff::one(), |acc, _| acc.mul(self))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Coeff {
        match self {
            Coeff::Exact(a) => Coeff::gauss(a.re.clone(), -&a.im),
            Coeff::Approx(z) => Coeff::Approx(z.conj()),
        }
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::integer(n)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(g) => {
                if g.im.is_zero() {
                    write!(f, "{}", g.re)
                } else if g.re.is_zero() {
                    write!(f, "{}i", g.im)
                } else if g.im.is_negative() {
                    write!(f, "{}-{}i", g.re, -&g.im)
                } else {
                    write!(f, "{}+{}i", g.re, g.im)
                }
            }
            Coeff::Approx(z) => write!(f, "~({:e}{:+e}i)", z.re, z.im),
        }
    }
}

/// Best rational approximation with denominator at most `10^4`, accepted
/// when it reproduces `x` to `1e-12` relative.
pub fn snap_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(BigRational::zero());
    }
    let tol = 1e-12 * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > 10_000 {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}
