//! Solving the lifting-probability system over Q(t) for each n.
//!
//! Run with `cargo run --release --example local_density`.

use std::time::Instant;

use cubic_density::eulerprod::{scientific, Rounding};
use cubic_density::localdensity::{
    asymptotic_params, build_system, golden_check_value, residuals, solve_staged,
};
use cubic_density::{Rat, RatFunc};

fn main() -> cubic_density::Result<()> {
    for n in 1..=9 {
        let start = Instant::now();
        let sys = build_system(n)?;
        let table = solve_staged(&sys)?;
        let rho = table.rho();
        let clean = residuals(&sys, &table).iter().all(|(_, r)| r.is_zero());
        let deficit = &RatFunc::one() - rho;
        let at2 = deficit.eval(&Rat::from_integer(2.into()))?;
        print!(
            "n = {n}: {} live unknowns, deg g/h = {:?}/{:?}, 1 - rho(2) = {}, residuals zero: {clean}",
            sys.rows.len(),
            deficit.numer().degree(),
            deficit.denom().degree(),
            scientific(&at2, 4, Rounding::Nearest),
        );
        if n <= 8 {
            print!(", reference {}", if golden_check_value(n, rho)? { "OK" } else { "MISMATCH" });
        }
        if (2..=8).contains(&n) {
            let (gamma, delta) = asymptotic_params(n)?;
            print!(", 1 - rho ~ 1/({gamma} p^{delta})");
        }
        println!(" [{:.1?}]", start.elapsed());
    }
    Ok(())
}
