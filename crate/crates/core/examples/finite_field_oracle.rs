//! Counting factorization types over F_q by enumeration and comparing with
//! the closed-form probabilities.
//!
//! Run with `cargo run --release --example finite_field_oracle`.

use cubic_density::fforacle::{
    build_field_tower, classify_form, count_types, CubicForm, VERIFICATION_GRID,
};
use cubic_density::localdensity::xi_table;
use cubic_density::Rat;

fn main() -> cubic_density::Result<()> {
    let f8 = build_field_tower(2)?;
    println!("F_8 = F_2[x]/({:?}) (constant term first)", f8.modulus());

    // x0^3 + x0 x1^2 + x1^3 over F_2 is irreducible, so it is the norm of a
    // linear form spanning a 2-dimensional space: type 2.
    let f = CubicForm::from_terms(1, 2, &[(1, (0, 0, 0)), (1, (0, 1, 1)), (1, (1, 1, 1))])?;
    println!("type of x0^3 + x0 x1^2 + x1^3 over F_2: {}", classify_form(&f)?);

    for (n, q) in VERIFICATION_GRID {
        let conds = std::iter::once(None).chain((1..=3.min(n + 1)).map(Some));
        for cond in conds {
            let counts = count_types(n, q, cond)?;
            let xi = xi_table(n, cond)?;
            let x = Rat::from_integer(q.into());
            let total = Rat::from_integer(counts.total.into());
            let agree = (0..4).all(|i| {
                xi.values[i].eval(&x).map(|v| v * &total) == Ok(Rat::from_integer(counts.get(i).into()))
            });
            println!(
                "n = {n}, q = {q}, condition {:>4}: total {:>10}, N = {:?}  {}",
                cond.map_or("none".into(), |j| j.to_string()),
                counts.total,
                (0..4).map(|i| counts.get(i)).collect::<Vec<_>>(),
                if agree { "agrees" } else { "DISAGREES" }
            );
        }
    }
    Ok(())
}
