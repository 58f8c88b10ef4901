// Numeric residues on the polar hyperplanes against the closed form.

use multitwist::spectrum::TwistFamily;
use multitwist::twist::{verify_residues, EvalParams};

pub fn run_example() -> multitwist::Result<()> {
    let family = TwistFamily::zetas(&[(1, 2), (1, 2)])?;
    let params = EvalParams::default();
    for ell in 0..2 {
        for r in verify_residues(&family, 2.0, ell, 2, &params)? {
            println!(
                "l = {ell}: s = ({:.3}, {:.3}) numeric {:.6} closed form {:.6} rel. error {:.1e}",
                r.s[0], r.s[1], r.numeric, r.analytic, r.rel_error
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multitwist::Result<()> {
    run_example()
}
