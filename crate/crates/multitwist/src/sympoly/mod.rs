//! Exact polynomial engine and the recursions that build the Gamma-product
//! expansion coefficients.
//!
//! * `sumxt_forms`: the linear forms `R_m`, `R̃_m` and remainder `Q_M` rewriting
//!   `Σ X_k/T^k` over Pochhammer denominators `(AT+b)_m`.
//! * `qj_poly`, `vk_poly`, `pm_poly`: coefficients of
//!   `Π Γ(a_ν − λ_ν w) ~ (2π)^((N−1)/2) Π λ_ν^(a_ν−λ_ν w−1/2) Σ P_m(a) Γ(a − (N−1)/2 − w − m)`.
//! * `w_ell_poly`: the polynomial `W_ℓ(s)` in the residue formula.

mod coeff;
mod expansion;
mod poly;

pub use coeff::{snap_rational, Coeff, GaussRational};
pub use expansion::gamma_product_error;
pub use poly::{names, MultiPoly};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::specfun::bernoulli_poly_coeffs;

/// Output of the Pochhammer rewriting recursion for a given order `M`.
///
/// All polynomials share the variable list `base ++ [X1..XM, T]`.
#[derive(Debug, Clone)]
pub struct SumXTForms {
    pub r: Vec<MultiPoly>,
    pub r_tilde: Vec<MultiPoly>,
    pub q: MultiPoly,
    pub base_arity: usize,
    pub order: usize,
}

impl SumXTForms {
    pub fn vars(&self) -> &[String] {
        self.q.vars()
    }

    pub fn x_index(&self, k: usize) -> usize {
        self.base_arity + k - 1
    }

    pub fn t_index(&self) -> usize {
        self.base_arity + self.order
    }
}

/// Recursion with numeric constants `A`, `b` over variables `X1..XM, T`.
pub fn sumxt_forms(a: Coeff, b: Coeff, order: usize) -> Result<SumXTForms> {
    let vars = xt_vars(&[], order);
    sumxt_forms_over(
        &[],
        &MultiPoly::constant(&vars, a),
        &MultiPoly::constant(&vars, b),
        order,
    )
}

fn xt_vars(base: &[String], order: usize) -> Vec<String> {
    let mut v = base.to_vec();
    v.extend(names("X", order));
    v.push("T".into());
    v
}

/// Recursion with `A`, `b` polynomials in the leading `base` variables of the
/// list `base ++ [X1..XM, T]` (the coefficient ring is extended by `base`).
pub fn sumxt_forms_over(
    base: &[String],
    a: &MultiPoly,
    b: &MultiPoly,
    order: usize,
) -> Result<SumXTForms> {
    if order < 1 {
        return invalid("sumxt_forms needs M >= 1");
    }
    if a.is_zero() {
        return invalid("sumxt_forms needs A != 0");
    }
    let vars = xt_vars(base, order);
    if a.arity() != vars.len() || b.arity() != vars.len() {
        return Err(Error::Arity {
            left: vars.len(),
            right: a.arity().min(b.arity()),
        });
    }
    let nb = base.len();
    let t_idx = nb + order;
    let t = MultiPoly::var(&vars, t_idx);
    let x = |k: usize| MultiPoly::var(&vars, nb + k - 1);
    // A·T + b
    let at_b = a.mul(&t)?.add(b)?;

    let x1 = x(1);
    let mut r = vec![a.mul(&x1)?.neg()];
    let mut r_tilde = vec![MultiPoly::zero(&vars)];
    let mut q = b.mul(&x1)?;
    let mut a_pow = a.clone();
    for m in 2..=order {
        let sign = if m % 2 == 0 { Coeff::one() } else { Coeff::integer(-1) };
        let e = q.coefficient_of(t_idx, (m - 2) as u32);
        a_pow = a_pow.mul(a)?;
        let rt = a.mul(&e)?.scale(&sign);
        let rm = a_pow.mul(&x(m))?.scale(&sign).add(&rt)?;
        let mut poch = MultiPoly::one(&vars);
        for k in 0..m {
            poch = poch.mul(&at_b.add_constant(&Coeff::integer(k as i64)))?;
        }
        let shifted = at_b.add_constant(&Coeff::integer((m - 1) as i64));
        q = q
            .mul(&t)?
            .mul(&shifted)?
            .add(&x(m).mul(&poch)?)?
            .sub(&rm.scale(&sign).mul(&t.pow(m as u32))?)?;
        r.push(rm);
        r_tilde.push(rt);
    }
    Ok(SumXTForms {
        r,
        r_tilde,
        q,
        base_arity: nb,
        order,
    })
}

fn check_lambdas(lambdas: &[Coeff], min_n: usize) -> Result<()> {
    if lambdas.len() < min_n {
        return invalid(format!("need at least {min_n} weights, got {}", lambdas.len()));
    }
    for l in lambdas {
        let z = l.to_complex();
        if z.im != 0.0 || !(z.re > 0.0) {
            return invalid(format!("weights must be positive reals, got {z}"));
        }
    }
    let sum = lambdas.iter().fold(Coeff::zero(), |acc, l| acc.add(l));
    let ok = match &sum {
        Coeff::Exact(_) => sum == Coeff::one(),
        Coeff::Approx(z) => (z - Complex64::new(1.0, 0.0)).norm() <= 1e-12,
    };
    if !ok {
        return invalid(format!("weights must sum to 1, got {}", sum.to_complex()));
    }
    Ok(())
}

fn bernoulli_as_poly(n: usize) -> Result<MultiPoly> {
    let v = names("x", 1);
    let coeffs = bernoulli_poly_coeffs(n)?;
    MultiPoly::from_terms(
        &v,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(p, c)| (vec![p as u32], Coeff::rational(c))),
    )
}

/// `Q_j(a) = [B_{j+1}(a − (N−1)/2) − Σ B_{j+1}(a_ν)/λ_ν^j] / (j(j+1))`, `a = Σ a_ν`.
pub fn qj_poly(j: usize, lambdas: &[Coeff]) -> Result<MultiPoly> {
    check_lambdas(lambdas, 2)?;
    qj_unchecked(j, lambdas)
}

fn qj_unchecked(j: usize, lambdas: &[Coeff]) -> Result<MultiPoly> {
    if j < 1 {
        return invalid("Q_j needs j >= 1");
    }
    let n = lambdas.len();
    let vars = names("a", n);
    let b = bernoulli_as_poly(j + 1)?;
    let shift = Coeff::ratio(-(n as i64 - 1), 2);
    let a_sum = MultiPoly::linear(&vars, shift, &vec![Coeff::one(); n]);
    let mut q = b.compose(&[a_sum])?;
    for (nu, l) in lambdas.iter().enumerate() {
        let term = b.compose(&[MultiPoly::var(&vars, nu)])?;
        q = q.sub(&term.scale(&l.powi(j as u32).inv()?))?;
    }
    Ok(q.scale(&Coeff::ratio(1, (j * (j + 1)) as i64)))
}

const MAX_K: usize = 8;

/// `V_k = Σ_{m=1}^{k} (1/m!) Σ_{j_1+..+j_m=k} Π Q_{j_p}`.
pub fn vk_poly(k: usize, lambdas: &[Coeff]) -> Result<MultiPoly> {
    check_lambdas(lambdas, 2)?;
    Ok(vk_all(k, lambdas)?.pop().expect("k+1 entries"))
}

/// `[V_0, V_1, .., V_k]`.
fn vk_all(k: usize, lambdas: &[Coeff]) -> Result<Vec<MultiPoly>> {
    if k > MAX_K {
        return invalid(format!("V_k is capped at k <= {MAX_K}"));
    }
    let vars = names("a", lambdas.len());
    let qs: Vec<MultiPoly> = (1..=k.max(1))
        .map(|j| qj_unchecked(j, lambdas))
        .collect::<Result<_>>()?;
    let mut out = vec![MultiPoly::one(&vars)];
    for kk in 1..=k {
        let mut v = MultiPoly::zero(&vars);
        let mut fact = 1i64;
        for m in 1..=kk {
            fact *= m as i64;
            let mut sum = MultiPoly::zero(&vars);
            for comp in compositions(kk, m) {
                let mut prod = MultiPoly::one(&vars);
                for j in comp {
                    prod = prod.mul(&qs[j - 1])?;
                }
                sum = sum.add(&prod)?;
            }
            v = v.add(&sum.scale(&Coeff::ratio(1, fact)))?;
        }
        out.push(v);
    }
    Ok(out)
}

/// All ordered tuples of `m` positive integers summing to `k`.
pub fn compositions(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, m: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            if k == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for j in 1..=k.saturating_sub(m - 1) {
            prefix.push(j);
            rec(k - j, m - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, m, &mut Vec::new(), &mut out);
    out
}

/// `P_m(a_1..a_N)`.
pub fn pm_poly(m: usize, lambdas: &[Coeff]) -> Result<MultiPoly> {
    Ok(pm_polys(m, lambdas)?.pop().expect("m+1 entries"))
}

/// `[P_0, .., P_m]` with the Pochhammer shift `b = (N+1)/2 − a`.
pub fn pm_polys(m: usize, lambdas: &[Coeff]) -> Result<Vec<MultiPoly>> {
    let n = lambdas.len() as i64;
    pm_polys_with_shift(m, lambdas, Coeff::ratio(n + 1, 2))
}

/// `[P_0, .., P_m]` built with `b = shift − a` in the rewriting recursion.
///
/// Only `shift = (N+1)/2` turns `Γ(a − (N−1)/2 − w)/(w + b)_m` into
/// `(−1)^m Γ(a − (N−1)/2 − w − m)`; other shifts are kept for comparison.
pub fn pm_polys_with_shift(m: usize, lambdas: &[Coeff], shift: Coeff) -> Result<Vec<MultiPoly>> {
    check_lambdas(lambdas, 2)?;
    let n = lambdas.len();
    let base = names("a", n);
    let mut out = vec![MultiPoly::one(&base)];
    if m == 0 {
        return Ok(out);
    }
    let v = vk_all(m, lambdas)?;
    let xt = xt_vars(&base, m);
    let extra = &xt[n..];
    let a_const = MultiPoly::one(&xt);
    let b = MultiPoly::linear(&base, shift, &vec![Coeff::integer(-1); n]).extend_vars(extra);
    let forms = sumxt_forms_over(&base, &a_const, &b, m)?;
    let mut subs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(&base, i)).collect();
    subs.extend(v[1..=m].iter().cloned());
    subs.push(MultiPoly::zero(&base));
    for rm in &forms.r {
        out.push(rm.compose(&subs)?);
    }
    Ok(out)
}

/// Data of a twist family entering `W_ℓ`: per member degree `d_ν`, exponent
/// `κ_ν`, internal shift `θ_ν`, and structural invariants `d_{F_ν}(0..)`.
#[derive(Debug, Clone)]
pub struct WellData {
    pub degrees: Vec<Coeff>,
    pub kappa: Vec<Coeff>,
    pub theta: Vec<Coeff>,
    pub struct_invs: Vec<Vec<Coeff>>,
}

/// `W_ℓ(s) = Σ_{ℓ_1+..+ℓ_N+m=ℓ} Π d_{F_ν}(ℓ_ν)(d_ν κ_ν)^(−ℓ_ν) P_m(a)` with
/// `λ_ν = d_ν κ_ν` and `a_ν = (d_ν+1)/2 − ℓ_ν − i d_ν θ_ν − d_ν s_ν`.
pub fn w_ell_poly(data: &WellData, ell: usize) -> Result<MultiPoly> {
    let n = data.degrees.len();
    if n == 0 || data.kappa.len() != n || data.theta.len() != n || data.struct_invs.len() != n {
        return invalid("W_ell data must list degree, kappa, theta and invariants for every member");
    }
    for (nu, inv) in data.struct_invs.iter().enumerate() {
        if inv.len() <= ell {
            return invalid(format!(
                "structural invariants of member {} cover 0..{} but W_{ell} needs 0..{ell}",
                nu + 1,
                inv.len() as i64 - 1
            ));
        }
    }
    let svars = names("s", n);
    let lambdas: Vec<Coeff> = data.degrees.iter().zip(&data.kappa).map(|(d, k)| d.mul(k)).collect();
    let ps = if n >= 2 {
        pm_polys(ell, &lambdas)?
    } else {
        let mut v = vec![MultiPoly::one(&names("a", 1))];
        v.extend((0..ell).map(|_| MultiPoly::zero(&names("a", 1))));
        v
    };
    let i_unit = Coeff::gauss(num_rational::BigRational::from_integer(0.into()), num_rational::BigRational::from_integer(1.into()));
    let mut w = MultiPoly::zero(&svars);
    for parts in weak_compositions(ell, n + 1) {
        let m = parts[n];
        if ps[m].is_zero() {
            continue;
        }
        let mut weight = Coeff::one();
        for nu in 0..n {
            let l = parts[nu] as u32;
            weight = weight.mul(&data.struct_invs[nu][parts[nu]]).mul(&lambdas[nu].powi(l).inv()?);
        }
        if weight.is_zero() {
            continue;
        }
        let subs: Vec<MultiPoly> = (0..n)
            .map(|nu| {
                let d = &data.degrees[nu];
                let c0 = d
                    .add(&Coeff::one())
                    .mul(&Coeff::ratio(1, 2))
                    .sub(&Coeff::integer(parts[nu] as i64))
                    .sub(&i_unit.mul(d).mul(&data.theta[nu]));
                let mut lin = vec![Coeff::zero(); n];
                lin[nu] = d.neg();
                MultiPoly::linear(&svars, c0, &lin)
            })
            .collect();
        w = w.add(&ps[m].compose(&subs)?.scale(&weight))?;
    }
    Ok(w)
}

/// All tuples of `parts` nonnegative integers summing to `total`.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for j in 0..=total {
            prefix.push(j);
            rec(total - j, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Vec<Coeff> {
        vec![Coeff::ratio(1, 2), Coeff::ratio(1, 2)]
    }

    #[test]
    fn first_forms() {
        let f = sumxt_forms(Coeff::integer(3), Coeff::integer(5), 1).unwrap();
        let v = f.vars().to_vec();
        assert_eq!(f.r[0], MultiPoly::var(&v, 0).scale(&Coeff::integer(-3)));
        assert_eq!(f.q, MultiPoly::var(&v, 0).scale(&Coeff::integer(5)));
        assert!(f.r_tilde[0].is_zero());
        assert!(sumxt_forms(Coeff::zero(), Coeff::one(), 2).is_err());
    }

    #[test]
    fn q1_at_origin() {
        let q1 = qj_poly(1, &half()).unwrap();
        let z = Complex64::new(0.0, 0.0);
        let v = q1.evaluate(&[z, z]).unwrap();
        assert!((v - Complex64::new(0.125, 0.0)).norm() < 1e-15);
        assert_eq!(qj_poly(2, &half()).unwrap().degree(), Some(3));
        assert!(qj_poly(1, &[Coeff::ratio(1, 2), Coeff::ratio(1, 3)]).is_err());
    }

    #[test]
    fn compositions_counts() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(5, 5).len(), 1);
        assert_eq!(weak_compositions(2, 3).len(), 6);
    }

    #[test]
    fn v2_is_q2_plus_half_q1_squared() {
        let l = half();
        let q1 = qj_poly(1, &l).unwrap();
        let q2 = qj_poly(2, &l).unwrap();
        let want = q2.add(&q1.mul(&q1).unwrap().scale(&Coeff::ratio(1, 2))).unwrap();
        assert_eq!(vk_poly(2, &l).unwrap(), want);
        assert_eq!(vk_poly(1, &l).unwrap(), q1);
    }

    #[test]
    fn p0_is_one() {
        let p = pm_poly(0, &half()).unwrap();
        assert_eq!(p, MultiPoly::one(&names("a", 2)));
    }

    #[test]
    fn p_values_match_independent_expansion() {
        // coefficients of the Gamma-product expansion fitted numerically (mpmath, 30 digits)
        let a = [Complex64::new(0.3, 0.0), Complex64::new(0.7, 0.2)];
        let want = [
            Complex64::new(-0.065, 0.08),
            Complex64::new(0.031_412_5, -0.045_2),
            Complex64::new(-0.030_887_770_833_333, 0.047_017),
            Complex64::new(0.045_893_242_526_042, -0.071_907_281_666_667),
        ];
        let ps = pm_polys(4, &half()).unwrap();
        for (m, w) in want.iter().enumerate() {
            let got = ps[m + 1].evaluate(&a).unwrap();
            assert!((got - w).norm() < 1e-12, "P_{}: {got} vs {w}", m + 1);
        }
    }
}
