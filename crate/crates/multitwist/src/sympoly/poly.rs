use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::coeff::Coeff;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over Gaussian rationals (or flagged floats).
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: Coeff) -> Self {
        let mut p = MultiPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &[String]) -> Self {
        MultiPoly::constant(vars, Coeff::one())
    }

    /// The variable `vars[i]`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero(vars);
        p.add_term(e, Coeff::one());
        p
    }

    /// `c_0 + Σ c_i x_i`.
    pub fn linear(vars: &[String], constant: Coeff, coeffs: &[Coeff]) -> Self {
        let mut p = MultiPoly::constant(vars, constant);
        for (i, ci) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = 1;
            p.add_term(e, ci.clone());
        }
        p
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<u32>, Coeff)>) -> Result<Self> {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Arity {
                    left: vars.len(),
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coeff::is_exact)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Coeff {
        self.terms.get(exponents).cloned().unwrap_or_else(Coeff::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.get(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if merged.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, merged);
        }
    }

    fn check(&self, o: &MultiPoly) -> Result<()> {
        if self.vars.len() != o.vars.len() {
            return Err(Error::Arity {
                left: self.vars.len(),
                right: o.vars.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Coeff) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.vars);
        for (e, a) in &self.terms {
            r.add_term(e.clone(), a.mul(c));
        }
        r
    }

    pub fn add_constant(&self, c: &Coeff) -> MultiPoly {
        let mut r = self.clone();
        r.add_term(vec![0; self.vars.len()], c.clone());
        r
    }

    pub fn mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = MultiPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        Ok(r)
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut r = MultiPoly::one(&self.vars);
        for _ in 0..n {
            r = r.mul(self).expect("same variables");
        }
        r
    }

    /// Substitutes `subs[i]` for the `i`-th variable; all substitutes share one
    /// variable list, which becomes the result's.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly> {
        if subs.len() != self.vars.len() {
            return Err(Error::Arity {
                left: self.vars.len(),
                right: subs.len(),
            });
        }
        let target: Vec<String> = match subs.first() {
            Some(s) => s.vars.clone(),
            None => Vec::new(),
        };
        for s in subs {
            if s.vars.len() != target.len() {
                return Err(Error::Arity {
                    left: target.len(),
                    right: s.vars.len(),
                });
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![MultiPoly::one(&target), s.clone()]).collect();
        let mut r = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k as usize])?;
                }
            }
            r = r.add(&t)?;
        }
        Ok(r)
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.vars.len() {
            return Err(Error::Arity {
                left: self.vars.len(),
                right: point.len(),
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_complex();
            for (x, &k) in point.iter().zip(e) {
                t *= x.powu(k);
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Top-degree homogeneous part.
    pub fn leading_part(&self) -> MultiPoly {
        match self.degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    /// Coefficient of `var^power`, as a polynomial in the same variables
    /// (the exponent of `var` is zero in every term).
    pub fn coefficient_of(&self, var: usize, power: u32) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var] == power {
                let mut e2 = e.clone();
                e2[var] = 0;
                r.add_term(e2, c.clone());
            }
        }
        r
    }

    /// Same polynomial over `vars ++ extra`.
    pub fn extend_vars(&self, extra: &[String]) -> MultiPoly {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        MultiPoly {
            vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.resize(e.len() + extra.len(), 0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing variables that do not occur.
    pub fn truncate_vars(&self, n: usize) -> Result<MultiPoly> {
        let mut r = MultiPoly::zero(&self.vars[..n]);
        for (e, c) in &self.terms {
            if e[n..].iter().any(|&k| k > 0) {
                return Err(Error::InvalidInput(format!(
                    "cannot drop variables {:?}: they occur",
                    &self.vars[n..]
                )));
            }
            r.add_term(e[..n].to_vec(), c.clone());
        }
        Ok(r)
    }

    /// Largest coefficient modulus.
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.to_complex().norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let coeff = match c {
                    Coeff::Exact(g) => json!({"re": g.re.to_string(), "im": g.im.to_string()}),
                    Coeff::Approx(z) => json!([z.re, z.im]),
                };
                json!({"exponents": e, "coeff": coeff})
            })
            .collect();
        json!({"variables": self.vars, "exact": self.is_exact(), "terms": terms})
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Variable names `prefix1 .. prefixn`.
pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let v = names("x", 1);
        let x = MultiPoly::var(&v, 0);
        let p = x.add_constant(&Coeff::one()).mul(&x.add_constant(&Coeff::integer(-1))).unwrap();
        let want = MultiPoly::from_terms(&v, [(vec![2], Coeff::one()), (vec![0], Coeff::integer(-1))]).unwrap();
        assert_eq!(p, want);
        assert_eq!(p.evaluate(&[Complex64::new(2.0, 0.0)]).unwrap(), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn arity_mismatch_rejected() {
        let p = MultiPoly::var(&names("x", 1), 0);
        let q = MultiPoly::var(&names("y", 2), 1);
        assert!(matches!(p.add(&q), Err(Error::Arity { .. })));
        assert!(p.evaluate(&[]).is_err());
    }

    #[test]
    fn compose_and_coefficients() {
        let v = names("t", 1);
        let t = MultiPoly::var(&v, 0);
        let sq = t.mul(&t).unwrap();
        let w = names("a", 2);
        let sum = MultiPoly::linear(&w, Coeff::ratio(-1, 2), &[Coeff::one(), Coeff::one()]);
        let c = sq.compose(&[sum]).unwrap();
        assert_eq!(c.degree(), Some(2));
        assert_eq!(c.coefficient(&[1, 1]), Coeff::integer(2));
        assert_eq!(c.coefficient(&[0, 0]), Coeff::ratio(1, 4));
        assert_eq!(c.coefficient_of(0, 1).coefficient(&[0, 1]), Coeff::integer(2));
        assert_eq!(c.to_string(), "(1)*a1^2 + (2)*a1*a2 + (-1)*a1 + (1)*a2^2 + (-1)*a2 + (1/4)");
    }
}
