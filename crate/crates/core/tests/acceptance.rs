//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any
//! criterion fails.

use std::time::Instant;

use cubic_density::eulerprod::{
    primes_up_to, rho_global, scientific, truncated_product, truncation_error_bound,
    verify_asymptote_inequality, Rounding, TailBoundParams, REFERENCE_DENSITIES,
    REFERENCE_DEFICITS, REFERENCE_TRUNCATIONS,
};
use cubic_density::eulerprod::fixed;
use cubic_density::fforacle::{count_types, padic_binary_cubic_sample, VERIFICATION_GRID};
use cubic_density::localdensity::{
    asymptotic_params_computed, build_system, golden_record, matches_record, residuals,
    solved_table, xi_table, UnknownId, REFERENCE_ASYMPTOTICS,
};
use cubic_density::{Rat, RatFunc};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn int(x: impl Into<BigInt>) -> Rat {
    Rat::from_integer(x.into())
}

fn conditions(n: usize) -> Vec<Option<usize>> {
    std::iter::once(None).chain((1..=3.min(n + 1)).map(Some)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_symbolic() -> Outcome {
    for n in 1..=8 {
        let table = solved_table(n).map_err(|e| e.to_string())?;
        let deficit = &RatFunc::one() - table.rho();
        let rec = golden_record(n).map_err(|e| e.to_string())?;
        ensure(matches_record(&deficit, rec), || format!("n = {n}: 1 - rho differs from g/h"))?;
    }
    let table = solved_table(9).map_err(|e| e.to_string())?;
    let sys = build_system(9).map_err(|e| e.to_string())?;
    ensure(sys.live().all(|u| table.get(u).is_one()), || "n = 9: a live unknown is not 1".into())?;
    Ok(format!("n = 1..8 match g_n/h_n exactly; all {} unknowns are 1 at n = 9", sys.rows.len()))
}

fn oracle_agreement() -> Outcome {
    let mut checked = 0;
    for (n, q) in VERIFICATION_GRID {
        for cond in conditions(n) {
            let counts = count_types(n, q, cond).map_err(|e| e.to_string())?;
            let xi = xi_table(n, cond).map_err(|e| e.to_string())?;
            let total = int(counts.total);
            for i in 0..4 {
                let want = xi.values[i].eval(&int(q)).map_err(|e| e.to_string())? * &total;
                ensure(want == int(counts.get(i)), || {
                    format!("n = {n}, q = {q}, cond {cond:?}, type {i}: {} vs {want}", counts.get(i))
                })?;
            }
            checked += 1;
        }
    }
    let c = count_types(2, 2, None).map_err(|e| e.to_string())?;
    ensure((c.get(1), c.get(2), c.get(3), c.total) == (7, 14, 8, 1023), || "n = 2, q = 2 counts".into())?;
    Ok(format!("{checked} (n, q, condition) cases agree exactly"))
}

fn asymptotics_match() -> Outcome {
    for (n, gamma, delta) in REFERENCE_ASYMPTOTICS {
        let got = asymptotic_params_computed(n).map_err(|e| e.to_string())?;
        ensure(got == (gamma, delta), || format!("n = {n}: got {got:?}, want ({gamma}, {delta})"))?;
    }
    Ok("(gamma, delta) match for n = 2..8".into())
}

fn truncation_accuracy() -> Outcome {
    for (n, a, d) in REFERENCE_TRUNCATIONS {
        let (_, err) = truncation_error_bound(n, a, TailBoundParams::default()).map_err(|e| e.to_string())?;
        let limit = Rat::new(BigInt::one(), BigInt::from(10).pow(d));
        ensure(err <= limit, || {
            format!("n = {n}, A = {a}: error {} exceeds 1e-{d}", scientific(&err, 4, Rounding::Up))
        })?;
    }
    for (n, a, printed) in REFERENCE_DEFICITS {
        let sig = printed.split('e').next().unwrap().replace('.', "").len() as u32;
        let deficit = Rat::one() - truncated_product(n, a).map_err(|e| e.to_string())?;
        let got = scientific(&deficit, sig, Rounding::Nearest);
        ensure(got == printed, || format!("n = {n}, A = {a}: 1 - product = {got}, printed {printed}"))?;
    }
    Ok(format!("{} rows certified, {} printed deficits reproduced", REFERENCE_TRUNCATIONS.len(), REFERENCE_DEFICITS.len()))
}

fn global_densities() -> Outcome {
    for (n, printed) in REFERENCE_DENSITIES {
        let d = REFERENCE_TRUNCATIONS.iter().find(|r| r.0 == n).unwrap().2;
        let v = rho_global(n, d).map_err(|e| e.to_string())?;
        let got = if printed.contains('e') {
            v.deficit_scientific(4)
        } else {
            fixed(&v.product, 6, Rounding::Nearest)
        };
        ensure(got == printed, || format!("n = {n}: got {got}, printed {printed}"))?;
        ensure(v.certificate.as_ref().is_some_and(|c| c.check().unwrap_or(false)), || {
            format!("n = {n}: certificate does not re-check")
        })?;
    }
    Ok("rho_3 = 0.999927 and 1 - rho_n for n = 4..8 match to printed digits".into())
}

fn asymptote_sweep() -> Outcome {
    for n in 2..=8 {
        let c = verify_asymptote_inequality(n, 10_000).map_err(|e| e.to_string())?;
        ensure(c.holds() && c.primes_checked == 1229, || format!("n = {n}: fails at {:?}", c.witness))?;
    }
    Ok("gamma p^delta g(p) <= h(p) at all 1229 primes below 10^4, n = 2..8".into())
}

/// Forms of type `i` spanning a fixed `i`-dimensional space of linear forms.
fn forms_per_subspace(i: u32, q: u128) -> u128 {
    let q3 = q * q * q;
    match i {
        1 => q - 1,
        2 => (q - 1) * (q3 - q) / 3,
        3 => (q - 1) * (q3 - q) * (q3 - q * q) / 3,
        _ => unreachable!(),
    }
}

fn gaussian(k: u32, r: u32, q: u128) -> u128 {
    (0..r).fold(1u128, |acc, j| acc * (q.pow(k - j) - 1)) / (0..r).fold(1u128, |acc, j| acc * (q.pow(j + 1) - 1))
}

fn property_suites() -> Outcome {
    for n in 0..=12 {
        for cond in conditions(n) {
            let xi = xi_table(n, cond).map_err(|e| e.to_string())?;
            let sum = xi.values.iter().fold(RatFunc::zero(), |acc, v| &acc + v);
            ensure(sum.is_one(), || format!("xi sum n = {n}, cond {cond:?}"))?;
        }
    }
    let primes = primes_up_to(100);
    for n in 1..=9 {
        let table = solved_table(n).map_err(|e| e.to_string())?;
        let sys = build_system(n).map_err(|e| e.to_string())?;
        ensure(residuals(&sys, &table).iter().all(|(_, r)| r.is_zero()), || format!("residual n = {n}"))?;
        for u in UnknownId::all() {
            for &p in &primes {
                let v = table.get(u).eval(&int(p)).map_err(|e| e.to_string())?;
                ensure(!v.is_negative_or_above_one(), || format!("n = {n}, {u} at p = {p} is {v}"))?;
            }
        }
    }
    for (n, q) in VERIFICATION_GRID {
        let c = count_types(n, q, None).map_err(|e| e.to_string())?;
        for i in 1..=3u32 {
            let want = gaussian(n as u32 + 1, i, q as u128) * forms_per_subspace(i, q as u128);
            ensure(c.get(i as usize) == want, || format!("Grassmannian n = {n}, q = {q}, i = {i}"))?;
        }
    }
    Ok("xi sums (n <= 12), [0,1] bounds at p <= 100, zero residuals (n <= 9), Grassmannian counts".into())
}

trait UnitInterval {
    fn is_negative_or_above_one(&self) -> bool;
}

impl UnitInterval for Rat {
    fn is_negative_or_above_one(&self) -> bool {
        self < &Rat::zero() || self > &Rat::one()
    }
}

fn monte_carlo() -> Outcome {
    let rho1 = cubic_density::localdensity::rho_local(1).map_err(|e| e.to_string())?;
    let samples = 100_000u64;
    let mut notes = Vec::new();
    for p in [2u32, 3, 5] {
        let est = padic_binary_cubic_sample(p, samples, 40, 7).map_err(|e| e.to_string())?;
        let mean = rho1.eval(&int(p)).map_err(|e| e.to_string())?.to_f64().unwrap();
        let sd = (mean * (1.0 - mean) / samples as f64).sqrt();
        let z = (est.soluble_fraction() - mean) / sd;
        ensure(z.abs() <= 3.0, || format!("p = {p}: z = {z:.2}"))?;
        ensure(est.undecided_fraction() < 0.01, || format!("p = {p}: undecided {}", est.undecided))?;
        notes.push(format!("p = {p}: z = {z:+.2}"));
    }
    Ok(notes.join(", "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 golden symbolic reproduction", golden_symbolic),
        ("2 oracle-formula agreement", oracle_agreement),
        ("3 asymptotics table", asymptotics_match),
        ("4 truncation accuracy table", truncation_accuracy),
        ("5 global densities table", global_densities),
        ("6 asymptote inequality sweep", asymptote_sweep),
        ("7 property suites", property_suites),
        ("8 Monte Carlo n = 1", monte_carlo),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
