//! Upper bounds for `ζ_{>A}(s) = ∏_{p > A} (1 - p^{-s})^{-1}`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bernoulli::bernoulli;
use super::primes::primes_up_to;
use crate::error::{Error, Result};
use crate::exactalg::Rat;

/// Euler-Maclaurin parameters: `m` explicit terms, `i` Bernoulli corrections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TailBoundParams {
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "I")]
    pub i: u32,
}

impl Default for TailBoundParams {
    fn default() -> Self {
        TailBoundParams { m: 1000, i: 4 }
    }
}

impl TailBoundParams {
    pub fn new(m: u32, i: u32) -> Result<Self> {
        let p = TailBoundParams { m, i };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidArgument("M must be at least 1".into()));
        }
        if self.i < 2 || self.i % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "I must be even and at least 2, got {}",
                self.i
            )));
        }
        Ok(())
    }
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * j)
}

/// `B_{2i} (s+2i-2)! / ((2i)! (s-1)! M^{s+2i-1})`.
fn correction(s: u32, m: u32, i: u32) -> Result<Rat> {
    let (s, i) = (s as u64, i as u64);
    let b = bernoulli(2 * i as usize)?;
    let num = factorial(s + 2 * i - 2);
    let den = factorial(2 * i) * factorial(s - 1) * BigInt::from(m).pow((s + 2 * i - 1) as u32);
    Ok(b * Rat::new(num, den))
}

/// `Σ_{m <= M} m^{-s}` over the common denominator `lcm(1..M)^s`.
fn partial_sum(s: u32, m: u32) -> Rat {
    let l = (1..=m as u64).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let big = l.pow(s);
    let num = (1..=m as u64).fold(BigInt::zero(), |acc, k| acc + &big / BigInt::from(k).pow(s));
    Rat::new(num, big)
}

/// The absolute value of the first omitted Euler-Maclaurin term.
pub fn em_remainder(s: u32, params: TailBoundParams) -> Result<Rat> {
    Ok(correction(s, params.m, params.i + 1)?.abs())
}

static EM_CACHE: Mutex<Option<HashMap<(u32, TailBoundParams), Rat>>> = Mutex::new(None);

/// An exact rational upper bound for `ζ(s)`.
pub fn zeta_upper(s: u32, params: TailBoundParams) -> Result<Rat> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s must be at least 2, got {s}")));
    }
    params.validate()?;
    if let Some(v) = EM_CACHE
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get_or_insert_with(HashMap::new)
        .get(&(s, params))
    {
        return Ok(v.clone());
    }
    let m = params.m;
    let mm = BigInt::from(m);
    let mut total = partial_sum(s, m);
    total += Rat::new(BigInt::one(), BigInt::from(s - 1) * mm.pow(s - 1));
    total -= Rat::new(BigInt::one(), BigInt::from(2) * mm.pow(s));
    for i in 1..=params.i {
        total += correction(s, m, i)?;
    }
    total += em_remainder(s, params)?;
    EM_CACHE
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get_or_insert_with(HashMap::new)
        .insert((s, params), total.clone());
    Ok(total)
}

/// `∏_{p <= A} (1 - p^{-s})` as an unreduced `(num, den)` pair.
pub(crate) fn euler_factor_product(primes: &[u64], s: u32) -> (BigInt, BigInt) {
    primes.iter().fold((BigInt::one(), BigInt::one()), |(n, d), &p| {
        let ps = BigInt::from(p).pow(s);
        (n * (&ps - 1u32), d * ps)
    })
}

/// Upper bound for `ζ_{>A}(s)`: the Euler factors at `p <= A` times an upper
/// bound for `ζ(s)`. `A` is an integer cutoff; a real cutoff behaves as its
/// floor.
pub fn zeta_tail_upper(a: u64, s: u32, params: TailBoundParams) -> Result<Rat> {
    if a == 0 {
        return Err(Error::InvalidArgument("A must be at least 1".into()));
    }
    let z = zeta_upper(s, params)?;
    let (n, d) = euler_factor_product(&primes_up_to(a), s);
    Ok(z * Rat::new(n, d))
}
