//! Certified truncations of the Euler product, one line per published row.
//!
//! Run with `cargo run --release --example euler_product`.

use cubic_density::eulerprod::{
    plan_truncation, truncated_product, truncation_error_bound, Rounding, TailBoundParams,
    REFERENCE_TRUNCATIONS,
};
use cubic_density::eulerprod::scientific;
use cubic_density::Rat;

fn main() -> cubic_density::Result<()> {
    println!("{:>2} {:>6} {:>4} {:>12} {:>6} {:>12}", "n", "A", "D", "error", "min A", "1 - prod");
    for (n, a, d) in REFERENCE_TRUNCATIONS {
        let (_, err) = truncation_error_bound(n, a, TailBoundParams::default())?;
        let plan = plan_truncation(n, d, a)?;
        let deficit = Rat::from_integer(1.into()) - truncated_product(n, a)?;
        println!(
            "{n:>2} {a:>6} {d:>4} {:>12} {:>6} {:>12}",
            scientific(&err, 4, Rounding::Up),
            plan.a,
            scientific(&deficit, 4, Rounding::Nearest)
        );
    }
    Ok(())
}
