use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{invalid, Result};

/// A primitive Dirichlet character given by its values on `0..q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Complex64>,
}

const TOL: f64 = 1e-12;

impl DirichletCharacter {
    /// Validates periodic values `χ(0..q)`: `χ(1) = 1`, support on units,
    /// unimodular on units, complete multiplicativity and primitivity.
    pub fn new(modulus: u64, values: Vec<Complex64>) -> Result<Self> {
        if modulus < 2 {
            return invalid("character modulus must be at least 2 (use the zeta generator for q = 1)");
        }
        if values.len() as u64 != modulus {
            return invalid(format!(
                "character mod {modulus} needs {modulus} values, got {}",
                values.len()
            ));
        }
        if (values[1] - Complex64::new(1.0, 0.0)).norm() > TOL {
            return invalid("character must satisfy chi(1) = 1");
        }
        for (n, v) in values.iter().enumerate() {
            let unit = (n as u64).gcd(&modulus) == 1;
            if unit && (v.norm() - 1.0).abs() > TOL {
                return invalid(format!("|chi({n})| must be 1 for n coprime to {modulus}"));
            }
            if !unit && v.norm() > TOL {
                return invalid(format!("chi({n}) must vanish since gcd({n}, {modulus}) > 1"));
            }
        }
        for m in 1..modulus as usize {
            for n in m..modulus as usize {
                let mn = (m * n) % modulus as usize;
                if (values[mn] - values[m] * values[n]).norm() > 1e-9 {
                    return invalid(format!("character is not multiplicative at ({m}, {n})"));
                }
            }
        }
        let chi = DirichletCharacter { modulus, values };
        if let Some(d) = chi.induced_from() {
            return invalid(format!("character mod {modulus} is induced from modulus {d}; only primitive characters are supported"));
        }
        Ok(chi)
    }

    /// Character of the prime modulus `p` sending a fixed primitive root `g`
    /// (the least one) to `exp(2πi j/(p−1))`, for `1 <= j <= p−2`.
    pub fn mod_prime(p: u64, j: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return invalid(format!("{p} is not an odd prime"));
        }
        if j == 0 || j >= p - 1 {
            return invalid(format!("index j = {j} must lie in 1..={}", p - 2));
        }
        let g = primitive_root(p);
        let mut values = vec![Complex64::new(0.0, 0.0); p as usize];
        let mut x = 1u64;
        for k in 0..p - 1 {
            let angle = 2.0 * PI * ((j * k) % (p - 1)) as f64 / (p - 1) as f64;
            values[x as usize] = Complex64::from_polar(1.0, angle);
            x = x * g % p;
        }
        DirichletCharacter::new(p, values)
    }

    /// The non-principal character mod 4.
    pub fn mod4() -> Self {
        let r = |x: f64| Complex64::new(x, 0.0);
        DirichletCharacter::new(4, vec![r(0.0), r(1.0), r(0.0), r(-1.0)]).expect("valid character")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u32 {
        if self.value(self.modulus - 1).re < 0.0 {
            1
        } else {
            0
        }
    }

    pub fn gauss_sum(&self) -> Complex64 {
        let q = self.modulus as f64;
        self.values
            .iter()
            .enumerate()
            .map(|(n, v)| v * Complex64::from_polar(1.0, 2.0 * PI * n as f64 / q))
            .sum()
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    fn induced_from(&self) -> Option<u64> {
        let q = self.modulus;
        let units: Vec<u64> = (1..q).filter(|n| n.gcd(&q) == 1).collect();
        (1..q).filter(|d| q % d == 0).find(|&d| {
            units.iter().all(|&n| {
                units
                    .iter()
                    .filter(|&&m| m % d == n % d)
                    .all(|&m| (self.value(n) - self.value(m)).norm() < TOL)
            })
        })
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let factors: Vec<u64> = (2..=phi).filter(|d| phi % d == 0 && is_prime(*d)).collect();
    (2..p)
        .find(|&g| factors.iter().all(|f| pow_mod(g, phi / f, p) != 1))
        .expect("odd primes have primitive roots")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let chi4 = DirichletCharacter::mod4();
        assert_eq!(chi4.value(3), Complex64::new(-1.0, 0.0));
        assert_eq!(chi4.parity(), 1);
        let chi3 = DirichletCharacter::mod_prime(3, 1).unwrap();
        assert!((chi3.value(2) + 1.0).norm() < 1e-15);
        let chi5 = DirichletCharacter::mod_prime(5, 2).unwrap();
        assert_eq!(chi5.parity(), 0);
        assert!((chi5.value(4) - 1.0).norm() < 1e-12);
        assert!((chi5.value(2) + 1.0).norm() < 1e-12);
        let chi5c = DirichletCharacter::mod_prime(5, 1).unwrap();
        assert!((chi5c.value(2) - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn gauss_sum_modulus() {
        for chi in [
            DirichletCharacter::mod4(),
            DirichletCharacter::mod_prime(5, 1).unwrap(),
            DirichletCharacter::mod_prime(7, 2).unwrap(),
        ] {
            let q = chi.modulus() as f64;
            assert!((chi.gauss_sum().norm() - q.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let r = |x: f64| Complex64::new(x, 0.0);
        assert!(DirichletCharacter::new(4, vec![r(0.0), r(1.0), r(0.0), r(1.0)]).is_err());
        assert!(DirichletCharacter::new(3, vec![r(0.0), r(1.0)]).is_err());
        assert!(DirichletCharacter::new(3, vec![r(0.0), r(1.0), r(0.5)]).is_err());
        assert!(DirichletCharacter::mod_prime(9, 1).is_err());
    }
}
