// Exact polynomials: the Pochhammer rewriting, the Gamma-product expansion
// and the residue polynomial W_l.

use multitwist::spectrum::TwistFamily;
use multitwist::sympoly::{gamma_product_error, pm_polys, sumxt_forms, w_ell_poly, Coeff};
use num_complex::Complex64;

pub fn run_example() -> multitwist::Result<()> {
    let forms = sumxt_forms(Coeff::integer(1), Coeff::ratio(1, 3), 3)?;
    for (m, r) in forms.r.iter().enumerate() {
        println!("R_{} = {r}", m + 1);
    }
    println!("Q_3 = {}", forms.q);
    let x = [Complex64::new(0.5, 1.0), Complex64::new(-2.0, 0.0), Complex64::new(0.25, -0.5)];
    let res = forms.identity_residual(Complex64::new(1.0, 0.0), Complex64::new(1.0 / 3.0, 0.0), &x, Complex64::new(2.5, 1.0))?;
    println!("rewriting residual {res:.1e}");

    let half = [Coeff::ratio(1, 2), Coeff::ratio(1, 2)];
    let ps = pm_polys(3, &half)?;
    println!("P_1 = {}", ps[1]);
    let a = [Complex64::new(0.3, 0.0), Complex64::new(0.7, 0.2)];
    for r in [20.0, 40.0, 80.0] {
        let e = gamma_product_error(&ps, &a, &[0.5, 0.5], Complex64::new(0.0, r), 2)?;
        println!("|w| = {r}: two-term error {e:.3e}");
    }

    let family = TwistFamily::zetas(&[(1, 2), (1, 2)])?;
    for ell in 0..3 {
        let w = w_ell_poly(&family.well_data(ell)?, ell)?;
        println!("W_{ell} = {w}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multitwist::Result<()> {
    run_example()
}
