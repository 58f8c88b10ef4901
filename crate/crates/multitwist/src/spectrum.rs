//! Twist families, the spectrum `Spec(F)`, the finite sum `Ξ(s, α)` and the
//! pole hyperplanes `H*_ℓ`.
//!
//! For a family `F_1..F_N` with exponents `κ_ν`, `Σ d_ν κ_ν = 1`, the
//! spectrum consists of `α_n = Π (n_ν/(q_ν κ_ν^(d_ν)))^(κ_ν)` over index
//! vectors with `Π a_ν(n_ν) ≠ 0`. With `r` the lcm of the denominators of the
//! `κ_ν`, `α_n^r` is rational whenever every `q_ν` and `d_ν` is, which gives an
//! exact grouping key.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::lfunc::{structural_invariants, Invariants, SelbergDatum};
use crate::sympoly::{snap_rational, Coeff, WellData};

#[derive(Debug, Clone)]
pub struct TwistFamily {
    members: Vec<SelbergDatum>,
    kappa: Vec<BigRational>,
    invariants: Vec<Invariants>,
    d: f64,
    theta: f64,
    omega: Complex64,
    exact: Option<ExactData>,
}

#[derive(Debug, Clone)]
struct ExactData {
    exponents: Vec<u32>,
    /// `q_ν κ_ν^(d_ν)`.
    scales: Vec<BigRational>,
}

/// Equality key of a spectrum value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpectrumKey {
    /// `α^r` as an exact rational.
    Exact(BigRational),
    /// `round(1e10 · log α)` when some `q_ν` or `d_ν` is not rational.
    Log(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumHit {
    pub alpha: f64,
    pub witnesses: Vec<Vec<u64>>,
    pub exact_key: SpectrumKey,
}

/// `α` as a float (matched with a tolerance) or as a witness vector (exact).
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSpec {
    Value(f64),
    Witness(Vec<u64>),
}

/// Affine locus `Σ d_ν s_ν = (d+1)/2 − ℓ − iθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleLocus {
    pub ell: usize,
    pub coefficients: Vec<f64>,
    pub target: Complex64,
}

pub const DEFAULT_ALPHA_TOL: f64 = 1e-10;

impl TwistFamily {
    pub fn new(members: Vec<SelbergDatum>, kappa: Vec<BigRational>) -> Result<Self> {
        if members.is_empty() {
            return invalid("a twist family needs at least one member");
        }
        if members.len() != kappa.len() {
            return invalid(format!(
                "{} members but {} exponents kappa",
                members.len(),
                kappa.len()
            ));
        }
        if kappa.iter().any(|k| !k.is_positive()) {
            return invalid("every kappa must be positive");
        }
        let invariants: Vec<Invariants> = members.iter().map(|m| m.invariants()).collect::<Result<_>>()?;
        let degrees: Vec<Option<BigRational>> = invariants.iter().map(|i| snap_rational(i.d)).collect();
        if degrees.iter().all(Option::is_some) {
            let sum: BigRational = degrees
                .iter()
                .zip(&kappa)
                .map(|(d, k)| d.as_ref().unwrap() * k)
                .sum();
            if !sum.is_one() {
                return invalid(format!("sum of d_nu * kappa_nu must be 1, got {sum}"));
            }
        } else {
            let sum: f64 = invariants
                .iter()
                .zip(&kappa)
                .map(|(i, k)| i.d * k.to_f64().unwrap_or(f64::NAN))
                .sum();
            if (sum - 1.0).abs() > 1e-12 {
                return invalid(format!("sum of d_nu * kappa_nu must be 1, got {sum}"));
            }
        }
        let d = invariants.iter().map(|i| i.d).sum();
        let theta = invariants.iter().map(|i| i.d * i.theta).sum();
        let omega = invariants.iter().map(|i| i.omega_f).product();
        let exact = exact_data(&invariants, &kappa);
        Ok(TwistFamily {
            members,
            kappa,
            invariants,
            d,
            theta,
            omega,
            exact,
        })
    }

    /// `N` copies of zeta with the given exponents.
    pub fn zetas(kappa: &[(i64, i64)]) -> Result<Self> {
        let members = vec![SelbergDatum::zeta(); kappa.len()];
        let k = kappa
            .iter()
            .map(|&(p, q)| BigRational::new(p.into(), q.into()))
            .collect();
        TwistFamily::new(members, k)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SelbergDatum] {
        &self.members
    }

    pub fn kappa(&self) -> &[BigRational] {
        &self.kappa
    }

    pub fn kappa_f64(&self) -> Vec<f64> {
        self.kappa.iter().map(|k| k.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn invariants(&self) -> &[Invariants] {
        &self.invariants
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.invariants.iter().map(|i| i.d).collect()
    }

    /// `d = Σ d_ν`.
    pub fn degree(&self) -> f64 {
        self.d
    }

    /// `θ = Σ d_ν θ_ν`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `ω_F = Π ω_{F_ν}`.
    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    /// Exponent `τ_0(s) = (d+1)/2 − iθ − Σ d_ν s_ν` of the leading singular term.
    pub fn tau0(&self, s: &[Complex64]) -> Complex64 {
        Complex64::new((self.d + 1.0) / 2.0, -self.theta) - self.weighted_sum(s)
    }

    pub fn weighted_sum(&self, s: &[Complex64]) -> Complex64 {
        self.invariants.iter().zip(s).map(|(i, z)| i.d * z).sum()
    }

    /// Strip index: the largest `ℓ >= 0` with
    /// `(d+1)/2 − ℓ − 2/3 <= Σ d_ν Re s_ν < (d+1)/2 − ℓ + 2/3`, or `None` when
    /// `Σ d_ν Re s_ν >= (d+1)/2 + 2/3` (no correction needed).
    pub fn strip_index(&self, s: &[Complex64]) -> Option<usize> {
        let t = self.tau0(s).re;
        let ell = (t + 2.0 / 3.0).ceil() - 1.0;
        if ell < 0.0 {
            None
        } else {
            Some(ell as usize)
        }
    }

    pub fn hyperplane(&self, ell: usize) -> PoleLocus {
        PoleLocus {
            ell,
            coefficients: self.degrees(),
            target: Complex64::new((self.d + 1.0) / 2.0 - ell as f64, -self.theta),
        }
    }

    pub fn check_point(&self, s: &[Complex64]) -> Result<()> {
        if s.len() != self.len() {
            return invalid(format!("point has {} coordinates, family has {} members", s.len(), self.len()));
        }
        Ok(())
    }

    /// Inputs of `W_ℓ`: snapped degrees, exponents, shifts, and structural
    /// invariants `d_{F_ν}(0..=ell)`.
    pub fn well_data(&self, ell: usize) -> Result<WellData> {
        let mut struct_invs = Vec::with_capacity(self.len());
        for m in &self.members {
            let v = structural_invariants(m, ell)?;
            struct_invs.push(v.into_iter().map(Coeff::snapped).collect());
        }
        Ok(WellData {
            degrees: self.invariants.iter().map(|i| Coeff::snapped(Complex64::new(i.d, 0.0))).collect(),
            kappa: self.kappa.iter().map(|k| Coeff::rational(k.clone())).collect(),
            theta: self.invariants.iter().map(|i| Coeff::snapped(Complex64::new(i.theta, 0.0))).collect(),
            struct_invs,
        })
    }

    pub fn alpha_of(&self, n: &[u64]) -> Result<(f64, SpectrumKey)> {
        if n.len() != self.len() {
            return invalid(format!("index vector has {} entries, family has {}", n.len(), self.len()));
        }
        if n.iter().any(|&k| k < 1) {
            return invalid("index vector entries must be >= 1");
        }
        let alpha = self.alpha_value(n);
        Ok((alpha, self.key(n, alpha)))
    }

    fn alpha_value(&self, n: &[u64]) -> f64 {
        self.invariants
            .iter()
            .zip(&self.kappa_f64())
            .zip(n)
            .map(|((i, &k), &m)| (m as f64 / (i.q * k.powf(i.d))).powf(k))
            .product()
    }

    fn key(&self, n: &[u64], alpha: f64) -> SpectrumKey {
        match &self.exact {
            Some(ex) => {
                let mut key = BigRational::one();
                for ((&m, scale), &e) in n.iter().zip(&ex.scales).zip(&ex.exponents) {
                    let base = BigRational::from_integer(BigInt::from(m)) / scale;
                    key *= num_traits::pow(base, e as usize);
                }
                SpectrumKey::Exact(key)
            }
            None => SpectrumKey::Log((alpha.ln() * 1e10).round() as i64),
        }
    }

    /// `Π a_ν(n_ν)`.
    pub fn coefficient_product(&self, n: &[u64]) -> Complex64 {
        self.members.iter().zip(n).map(|(m, &k)| m.coefficient(k)).product()
    }

    /// Smallest `n_max` certifying completeness of the enumeration up to `alpha_max`.
    pub fn required_n_max(&self, alpha_max: f64) -> u64 {
        let mut need = 1u64;
        for nu in 0..self.len() {
            let mut e = vec![1u64; self.len()];
            let mut k = 1u64;
            let cap = self.members[nu].support_len().unwrap_or(u64::MAX);
            loop {
                e[nu] = k + 1;
                if k >= cap || self.alpha_value(&e) > alpha_max * (1.0 + 1e-12) {
                    break;
                }
                k += 1;
            }
            need = need.max(k);
        }
        need
    }

    /// All spectrum points `α <= alpha_max` with every `n_ν <= n_max`.
    pub fn enumerate_spectrum(&self, alpha_max: f64, n_max: u64) -> Result<Vec<SpectrumHit>> {
        if !(alpha_max > 0.0) || n_max < 1 {
            return invalid("need alpha_max > 0 and n_max >= 1");
        }
        let required = self.required_n_max(alpha_max);
        if n_max < required {
            return Err(Error::SpectrumBound {
                given: n_max,
                alpha_max,
                required,
            });
        }
        let mut groups: BTreeMap<SpectrumKey, SpectrumHit> = BTreeMap::new();
        let mut n = vec![1u64; self.len()];
        self.enumerate_rec(0, &mut n, alpha_max, n_max, &mut groups);
        let mut hits: Vec<SpectrumHit> = groups.into_values().collect();
        for h in &mut hits {
            h.witnesses.sort();
        }
        hits.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
        Ok(hits)
    }

    fn enumerate_rec(
        &self,
        nu: usize,
        n: &mut Vec<u64>,
        alpha_max: f64,
        n_max: u64,
        out: &mut BTreeMap<SpectrumKey, SpectrumHit>,
    ) {
        let limit = alpha_max * (1.0 + 1e-12);
        if nu == self.len() {
            if self.coefficient_product(n).norm() == 0.0 {
                return;
            }
            let alpha = self.alpha_value(n);
            let key = self.key(n, alpha);
            out.entry(key.clone())
                .or_insert_with(|| SpectrumHit {
                    alpha,
                    witnesses: Vec::new(),
                    exact_key: key,
                })
                .witnesses
                .push(n.clone());
            return;
        }
        for k in 1..=n_max {
            n[nu] = k;
            for rest in n.iter_mut().skip(nu + 1) {
                *rest = 1;
            }
            if self.alpha_value(n) > limit {
                break;
            }
            self.enumerate_rec(nu + 1, n, alpha_max, n_max, out);
        }
        n[nu] = 1;
    }

    /// Spectrum point matching `alpha`, if any.
    pub fn membership(&self, alpha: &AlphaSpec, tol: f64) -> Result<Option<SpectrumHit>> {
        match alpha {
            AlphaSpec::Value(a) => {
                if !(*a > 0.0) {
                    return invalid(format!("alpha must be positive, got {a}"));
                }
                let top = a * (1.0 + tol) * (1.0 + 1e-12);
                let hits = self.enumerate_spectrum(top, self.required_n_max(top))?;
                let near: Vec<SpectrumHit> = hits
                    .into_iter()
                    .filter(|h| (h.alpha - a).abs() <= tol * a)
                    .collect();
                if near.len() > 1 {
                    return Err(Error::Ambiguous {
                        alpha: *a,
                        candidates: near.iter().map(|h| h.alpha).collect(),
                    });
                }
                Ok(near.into_iter().next())
            }
            AlphaSpec::Witness(n) => {
                let (a, key) = self.alpha_of(n)?;
                let top = a * (1.0 + 1e-9);
                let hits = self.enumerate_spectrum(top, self.required_n_max(top))?;
                Ok(hits.into_iter().find(|h| h.exact_key == key))
            }
        }
    }

    /// `Ξ(s, α) = ω_F Σ_witnesses Π conj(a_ν(n_ν)) n_ν^(s_ν − 1)`; zero off the spectrum.
    pub fn xi_sum(&self, hit: Option<&SpectrumHit>, s: &[Complex64]) -> Complex64 {
        let Some(hit) = hit else {
            return Complex64::zero();
        };
        let mut sum = Complex64::zero();
        for w in &hit.witnesses {
            let mut term = Complex64::new(1.0, 0.0);
            for ((m, &k), z) in self.members.iter().zip(w).zip(s) {
                term *= m.coefficient(k).conj() * ((z - 1.0) * (k as f64).ln()).exp();
            }
            sum += term;
        }
        self.omega * sum
    }
}

fn exact_data(invariants: &[Invariants], kappa: &[BigRational]) -> Option<ExactData> {
    let r = kappa
        .iter()
        .fold(BigInt::one(), |acc, k| acc.lcm(k.denom()));
    let mut exponents = Vec::new();
    let mut scales = Vec::new();
    for (inv, k) in invariants.iter().zip(kappa) {
        let e = (k * BigRational::from_integer(r.clone())).to_integer().to_u32()?;
        let q = snap_rational(inv.q)?;
        let d = snap_rational(inv.d)?;
        if !d.is_integer() {
            return None;
        }
        let d = d.to_integer().to_u32()?;
        exponents.push(e);
        scales.push(q * num_traits::pow(k.clone(), d as usize));
    }
    Some(ExactData { exponents, scales })
}

impl PoleLocus {
    /// `Σ d_ν s_ν − target`.
    pub fn residual(&self, s: &[Complex64]) -> Complex64 {
        self.coefficients.iter().zip(s).map(|(d, z)| d * z).sum::<Complex64>() - self.target
    }

    pub fn distance(&self, s: &[Complex64]) -> f64 {
        self.residual(s).norm()
    }

    pub fn contains(&self, s: &[Complex64], tol: f64) -> bool {
        self.distance(s) <= tol
    }

    /// Completes `s_1..s_{N−1}` with the `s_N` putting the point on the locus.
    pub fn complete(&self, head: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.coefficients.len();
        if head.len() + 1 != n {
            return invalid(format!("need {} free coordinates, got {}", n - 1, head.len()));
        }
        let partial: Complex64 = self.coefficients.iter().zip(head).map(|(d, z)| d * z).sum();
        let mut s = head.to_vec();
        s.push((self.target - partial) / self.coefficients[n - 1]);
        Ok(s)
    }

    /// Moves `s_N` so that the point lies exactly on the locus.
    pub fn project(&self, s: &[Complex64]) -> Result<Vec<Complex64>> {
        self.complete(&s[..s.len().saturating_sub(1)])
    }
}
