//! Monte Carlo estimate of the probability that a random binary cubic over
//! Z_p has a nontrivial zero, against the exact rational function.
//!
//! Run with `cargo run --release --example padic_sampling`.

use cubic_density::fforacle::padic_binary_cubic_sample;
use cubic_density::localdensity::rho_local;
use cubic_density::Rat;
use num_traits::ToPrimitive;

fn main() -> cubic_density::Result<()> {
    let rho1 = rho_local(1)?;
    let samples = 100_000;
    for p in [2u32, 3, 5, 7] {
        let est = padic_binary_cubic_sample(p, samples, 40, 2024)?;
        let exact = rho1.eval(&Rat::from_integer(p.into()))?;
        let mean = exact.to_f64().unwrap();
        let sd = (mean * (1.0 - mean) / samples as f64).sqrt();
        println!(
            "p = {p}: sampled {:.5}, exact {exact} = {mean:.5}, {:+.2} sd, undecided {:.4}%",
            est.soluble_fraction(),
            (est.soluble_fraction() - mean) / sd,
            100.0 * est.undecided_fraction()
        );
    }
    Ok(())
}
