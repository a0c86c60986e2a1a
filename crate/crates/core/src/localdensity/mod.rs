//! Local densities as rational functions of p.
//!
//! `rho_n(p)` is the probability that a random cubic form over Z_p in `n + 1`
//! variables has a nontrivial zero. It is obtained by solving a linear system
//! over Q(t) whose unknowns are conditional lifting probabilities and whose
//! coefficients come from the factorization-type probabilities in [`xi_table`].

mod cache;
mod golden;
mod solve;
mod system;
mod unknowns;
mod xi;

use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub use cache::{CacheRecord, DensityCache, CACHE_ENV};
pub use golden::{golden_record, matches_record, parse_poly, GoldenRecord};
pub use solve::{residuals, solve_staged, ProbabilityTable};
pub use system::{build_system, is_defined, is_structural_zero, LinearSystem, Row};
pub use unknowns::{Stage, UnknownId};
pub use xi::{xi_table, XiTable};

use crate::error::{Error, Result};
use crate::exactalg::RatFunc;

/// From this many variables minus one on, every form has a p-adic zero.
pub const ALWAYS_SOLUBLE_FROM: usize = 9;

/// Published `(n, gamma_n, delta_n)` with `1 - rho_n(p) ~ 1 / (gamma_n p^delta_n)`.
pub const REFERENCE_ASYMPTOTICS: [(usize, u64, u64); 7] = [
    (2, 3, 3),
    (3, 3, 10),
    (4, 9, 22),
    (5, 9, 43),
    (6, 9, 78),
    (7, 27, 129),
    (8, 27, 201),
];

static SOLVED: [OnceLock<Arc<ProbabilityTable>>; ALWAYS_SOLUBLE_FROM] =
    [const { OnceLock::new() }; ALWAYS_SOLUBLE_FROM];
static RHO: [OnceLock<RatFunc>; ALWAYS_SOLUBLE_FROM] =
    [const { OnceLock::new() }; ALWAYS_SOLUBLE_FROM];

/// The solved system for `1 <= n <= 9`, computed once per process.
pub fn solved_table(n: usize) -> Result<Arc<ProbabilityTable>> {
    if !(1..=ALWAYS_SOLUBLE_FROM).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "the system is solved for 1 <= n <= {ALWAYS_SOLUBLE_FROM}, not n = {n}"
        )));
    }
    let cell = &SOLVED[n - 1];
    if let Some(t) = cell.get() {
        return Ok(t.clone());
    }
    let table = Arc::new(solve_staged(&build_system(n)?)?);
    Ok(cell.get_or_init(|| table).clone())
}

/// `rho_n(t)`: solved for `n <= 9`, identically 1 beyond.
pub fn rho_local(n: usize) -> Result<RatFunc> {
    if n == 0 {
        return Err(Error::InvalidArgument("rho_local needs n >= 1".into()));
    }
    if n > ALWAYS_SOLUBLE_FROM {
        return Ok(RatFunc::one());
    }
    if let Some(r) = RHO[n - 1].get() {
        return Ok(r.clone());
    }
    let rho = solved_table(n)?.rho().clone();
    Ok(RHO[n - 1].get_or_init(|| rho).clone())
}

/// Like [`rho_local`], reading and writing `cache` for `1 <= n <= 8`. A cached
/// value is used only if it passes [`golden_check_value`].
pub fn rho_local_cached(n: usize, cache: Option<&DensityCache>) -> Result<RatFunc> {
    let Some(cache) = cache.filter(|_| (1..=8).contains(&n)) else {
        return rho_local(n);
    };
    if let Some(rec) = cache.load(n) {
        if let Ok(rho) = rec.rho() {
            if golden_check_value(n, &rho)? {
                return Ok(RHO[n - 1].get_or_init(|| rho).clone());
            }
        }
    }
    let rho = rho_local(n)?;
    cache.store(&CacheRecord::from_rho(n, &rho))?;
    Ok(rho)
}

/// Whether `1 - rho` matches the reference `g_n / h_n`.
pub fn golden_check_value(n: usize, rho: &RatFunc) -> Result<bool> {
    let rec = golden_record(n)?;
    Ok(matches_record(&(&RatFunc::one() - rho), rec))
}

/// Whether the solved `rho_n` matches the reference `g_n / h_n`, `1 <= n <= 8`.
pub fn golden_check(n: usize) -> Result<bool> {
    golden_record(n)?;
    golden_check_value(n, &rho_local(n)?)
}

/// `(gamma, delta)` with `q ~ 1 / (gamma t^delta)` for a reduced `q`.
pub(crate) fn leading_asymptotics(q: &RatFunc) -> Result<(u64, u64)> {
    let (g, h) = (q.numer(), q.denom());
    let (Some(dg), Some(dh)) = (g.degree(), h.degree()) else {
        return Err(Error::Defect("zero has no asymptotics".into()));
    };
    if dh < dg {
        return Err(Error::Defect(format!("fraction grows like t^{}", dg - dh)));
    }
    let (lg, lh) = (g.lc().unwrap(), h.lc().unwrap());
    let (gamma, rem) = lh.div_rem(lg);
    if !rem.is_zero() || !gamma.is_positive() {
        return Err(Error::Defect(format!(
            "leading coefficient ratio {lh}/{lg} is not a positive integer"
        )));
    }
    let gamma = gamma
        .to_u64()
        .ok_or_else(|| Error::Defect(format!("gamma {gamma} too large")))?;
    Ok((gamma, (dh - dg) as u64))
}

/// `(gamma_n, delta_n)` read off the solved `1 - rho_n`, `2 <= n <= 8`.
pub fn asymptotic_params_computed(n: usize) -> Result<(u64, u64)> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "asymptotic parameters are defined for 2 <= n <= 8, not n = {n}"
        )));
    }
    leading_asymptotics(&(&RatFunc::one() - &rho_local(n)?))
}

/// [`asymptotic_params_computed`], cross-checked against
/// [`REFERENCE_ASYMPTOTICS`].
pub fn asymptotic_params(n: usize) -> Result<(u64, u64)> {
    let got = asymptotic_params_computed(n)?;
    let want = REFERENCE_ASYMPTOTICS
        .iter()
        .find(|r| r.0 == n)
        .map(|&(_, g, d)| (g, d))
        .expect("table covers 2..=8");
    if got != want {
        return Err(Error::Defect(format!(
            "n = {n}: solved asymptotics {got:?} differ from reference {want:?}"
        )));
    }
    Ok(got)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PolyQ, Rat};

    #[test]
    fn binary_density() {
        let rho = rho_local(1).unwrap();
        let want = RatFunc::new(
            &PolyQ::from_i64s(&[2, 3, 1, 3, 2]),
            &PolyQ::from_i64s(&[3, 3, 3, 3, 3]),
        )
        .unwrap();
        assert_eq!(rho, want);
        assert_eq!(
            rho.eval(&Rat::from_integer(2.into())).unwrap(),
            Rat::new(68.into(), 93.into())
        );
    }

    #[test]
    fn ternary_matches_reference() {
        assert!(golden_check(2).unwrap());
        assert_eq!(asymptotic_params(2).unwrap(), (3, 3));
    }

    #[test]
    fn corrupted_reference_fails() {
        let rec = golden_record(3).unwrap();
        let mut g = rec.g.coeffs().to_vec();
        g[7] += Rat::from_integer(1.into());
        let bad = GoldenRecord {
            n: 3,
            g: PolyQ::from_coeffs(g),
            h: rec.h.clone(),
        };
        let q = &RatFunc::one() - &rho_local(3).unwrap();
        assert!(matches_record(&q, rec));
        assert!(!matches_record(&q, &bad));
    }

    #[test]
    fn beyond_nine_is_one() {
        assert!(rho_local(10).unwrap().is_one());
        assert!(rho_local(0).is_err());
        assert!(golden_check(9).is_err());
        assert!(asymptotic_params(1).is_err());
    }
}
