// The smoothed twist by its series and by the Mellin-Barnes integral.

use multitwist::spectrum::TwistFamily;
use multitwist::twist::{smoothed_twist_mb, smoothed_twist_series, EvalParams};
use num_complex::Complex64;

pub fn run_example() -> multitwist::Result<()> {
    let family = TwistFamily::zetas(&[(1, 2), (1, 2)])?;
    let s = vec![Complex64::new(1.5, 0.0); 2];
    for (alpha, x) in [(0.7, 5.0), (2.0, 10.0)] {
        let params = EvalParams { x, ..EvalParams::default() };
        let series = smoothed_twist_series(&family, &s, alpha, &params)?;
        let mb = smoothed_twist_mb(&family, &s, alpha, &params)?;
        println!("alpha = {alpha}, X = {x}: series {series:.12}, integral {mb:.12}, gap {:.1e}", (series - mb).norm());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multitwist::Result<()> {
    run_example()
}
