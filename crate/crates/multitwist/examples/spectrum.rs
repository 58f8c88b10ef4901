// The spectrum of the twist of zeta times zeta with exponents (1/2, 1/2).

use multitwist::spectrum::{AlphaSpec, TwistFamily, DEFAULT_ALPHA_TOL};

pub fn run_example() -> multitwist::Result<()> {
    let family = TwistFamily::zetas(&[(1, 2), (1, 2)])?;
    let hits = family.enumerate_spectrum(5.0, family.required_n_max(5.0))?;
    for h in &hits {
        println!("alpha = {:.6}  witnesses {:?}", h.alpha, h.witnesses);
    }
    for a in [2.0, 0.7] {
        let hit = family.membership(&AlphaSpec::Value(a), DEFAULT_ALPHA_TOL)?;
        println!("{a} in spectrum: {}", hit.is_some());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multitwist::Result<()> {
    run_example()
}
