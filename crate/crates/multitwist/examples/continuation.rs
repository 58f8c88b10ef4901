// Continuation in s: zeta values from the one-member twist, and an entire
// twist of zeta times zeta off the spectrum.

use multitwist::spectrum::TwistFamily;
use multitwist::twist::{continue_twist, continue_twist_report, EvalParams, Mode};
use num_complex::Complex64;

pub fn run_example() -> multitwist::Result<()> {
    let params = EvalParams::default();
    let zeta = TwistFamily::zetas(&[(1, 1)])?;
    for s in [2.0, 0.0, -1.0] {
        let v = continue_twist(&zeta, &[Complex64::new(s, 0.0)], 1.0, &params)?;
        println!("zeta({s}) ~ {:.8}", v.re);
    }

    let zz = TwistFamily::zetas(&[(1, 2), (1, 2)])?;
    let s = vec![Complex64::new(0.6, 1.0), Complex64::new(0.4, -0.5)];
    let report = continue_twist_report(&zz, &s, 0.7, &params, Mode::Analytic)?;
    println!(
        "F(s, 0.7) = {:.8} from {} rungs up to X = {:.1}",
        report.value,
        report.xs.len(),
        report.xs.last().copied().unwrap_or(0.0)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> multitwist::Result<()> {
    run_example()
}
