// Functional-equation invariants of zeta and two Dirichlet L-functions.

use multitwist::lfunc::{compute_invariants, structural_invariants, verify_sh_identity, DirichletCharacter, SelbergDatum};
use num_complex::Complex64;

pub fn run_example() -> multitwist::Result<()> {
    let data = [
        SelbergDatum::zeta(),
        SelbergDatum::dirichlet(DirichletCharacter::mod4()),
        SelbergDatum::dirichlet(DirichletCharacter::mod_prime(5, 1)?),
    ];
    for f in &data {
        let inv = compute_invariants(f)?;
        let d: Vec<String> = structural_invariants(f, 2)?.iter().map(|z| format!("{z:.4}")).collect();
        let residual = verify_sh_identity(f, Complex64::new(0.3, 4.0))?;
        println!(
            "{:>8}: d = {}, q = {:.6}, omega = {:.6}, xi = {:.3}, d_F(0..3) = [{}], FE residual {:.1e}",
            f.label, inv.d, inv.q, inv.omega_f, inv.xi, d.join(", "), residual
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multitwist::Result<()> {
    run_example()
}
