//! Monte Carlo estimates of SR(p) for G(7,10) against the exact values.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use splitrel::constructions::two_terminal_balloon;
use splitrel::engine::{monte_carlo_sr, RandomSource};
use splitrel::signature::{sr_polynomial, SplitSignature};

fn main() -> splitrel::Result<()> {
    let g = two_terminal_balloon(7, 10)?;
    let poly = sr_polynomial(&SplitSignature::of(&g)?);
    for k in 1..10 {
        let p = BigRational::new(k.into(), 10.into());
        let exact = poly.evaluate(&p).to_f64().unwrap_or(f64::NAN);
        let est = monte_carlo_sr(&g, &p, 200_000, RandomSource::new(k as u64))?;
        println!(
            "p = 0.{k}: exact {exact:.6} estimate {:.6} +- {:.6} (z = {:+.2})",
            est.estimate,
            est.std_error,
            (est.estimate - exact) / est.std_error
        );
    }
    Ok(())
}
