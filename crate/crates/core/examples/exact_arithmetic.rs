//! Rational functions over Q in normal form.
//!
//! Run with `cargo run --example exact_arithmetic`.

use cubic_density::exactalg::zpoly_gcd;
use cubic_density::{PolyQ, Rat, RatFunc};

fn main() -> cubic_density::Result<()> {
    // rho_1(t) = (2t^4 + 3t^3 + t^2 + 3t + 2) / (3(t^4 + t^3 + t^2 + t + 1))
    let rho1 = RatFunc::new(
        &PolyQ::from_i64s(&[2, 3, 1, 3, 2]),
        &PolyQ::from_i64s(&[3, 3, 3, 3, 3]),
    )?;
    println!("rho_1(t)     = {rho1}");
    println!("rho_1(2)     = {}", rho1.eval(&Rat::from_integer(2.into()))?);
    println!("1 - rho_1(t) = {}", &RatFunc::one() - &rho1);

    // Common factors cancel on construction.
    let t = RatFunc::t();
    let one = RatFunc::one();
    let q = (&(&t * &t) - &one).checked_div(&(&t - &one))?;
    println!("(t^2 - 1)/(t - 1) = {q}");

    let a = (&t * &t) - one.clone();
    let b = (&t * &(&t * &t)) - one;
    println!("gcd(t^2 - 1, t^3 - 1) = {}", zpoly_gcd(a.numer(), b.numer()));

    match rho1.recip()?.eval(&Rat::from_integer((-1).into())) {
        Ok(v) => println!("1/rho_1(-1) = {v}"),
        Err(e) => println!("1/rho_1(-1): {e}"),
    }
    Ok(())
}
