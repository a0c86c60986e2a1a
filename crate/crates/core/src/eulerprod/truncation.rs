//! Certified truncations of `∏_p rho_n(p)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::decimal::{fixed, scientific, Rounding};
use super::primes::primes_up_to;
use super::zeta::{zeta_upper, TailBoundParams};
use crate::error::{Error, Result};
use crate::exactalg::{Rat, ZPoly};
use crate::localdensity::{asymptotic_params, rho_local, ALWAYS_SOLUBLE_FROM};

/// Default largest cutoff tried by the planner.
pub const DEFAULT_A_MAX: u64 = 20_000;

/// Default prime bound for the asymptote sweep.
pub const DEFAULT_SWEEP_LIMIT: u64 = 10_000;

/// `1 - rho_n(p) ~ 1 / (gamma p^delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AsympParams {
    pub gamma: u64,
    pub delta: u64,
}

pub fn asymp_params(n: usize) -> Result<AsympParams> {
    let (gamma, delta) = asymptotic_params(n)?;
    Ok(AsympParams { gamma, delta })
}

fn pow10(k: u64) -> BigInt {
    BigInt::from(10).pow(k as u32)
}

fn ten_to_minus(d: u32) -> Rat {
    Rat::new(BigInt::one(), pow10(d as u64))
}

/// An upper bound on `1 - B^{-1/gamma}` from a lower bound on `B^{-1/gamma}`
/// with at least `min_places` decimals, accurate to 0.1%.
fn root_gap_upper(b: &Rat, gamma: u64, min_places: u32) -> Rat {
    let e = b - Rat::one();
    if !e.is_positive() {
        return Rat::zero();
    }
    let g = gamma as u32;
    let first = -super::decimal::floor_log10(&(&e / Rat::from_integer(gamma.into()))) + 4;
    let mut places = (first.max(1) as u32).max(min_places);
    loop {
        let scale = pow10(places as u64);
        let rhs = scale.pow(g) * b.denom();
        let ok = |y: &BigInt| y.pow(g) * b.numer() <= rhs;
        // B^{-1/gamma} >= 1 - e/gamma, so `lo` always qualifies.
        let drop = &scale * e.numer();
        let den = e.denom() * gamma;
        let drop = (&drop + &den - 1u32) / &den;
        let mut lo = (&scale - drop).max(BigInt::zero());
        let mut hi = scale.clone();
        debug_assert!(ok(&lo) && !ok(&hi));
        while &hi - &lo > BigInt::one() {
            let mid = (&lo + &hi) >> 1;
            if ok(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let upper = Rat::one() - Rat::new(lo, scale.clone());
        if Rat::new(BigInt::from(1000), scale) <= upper {
            return upper;
        }
        places += 5;
    }
}

/// Sweep results are computed once per `n` at the default limit.
static SWEPT: [OnceLock<bool>; 9] = [const { OnceLock::new() }; 9];

fn ensure_asymptote(n: usize) -> Result<()> {
    let ok = match SWEPT[n].get() {
        Some(&ok) => ok,
        None => {
            let ok = verify_asymptote_inequality(n, DEFAULT_SWEEP_LIMIT)?.holds();
            *SWEPT[n].get_or_init(|| ok)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Defect(format!(
            "1 - rho_{n} exceeds its asymptote at some prime below {DEFAULT_SWEEP_LIMIT}"
        )))
    }
}

/// `B = zeta_tail_upper(A, delta_n)` and an upper bound on
/// `|rho^ELS_n - ∏_{p<=A} rho_n(p)|`.
pub fn truncation_error_bound(n: usize, a: u64, params: TailBoundParams) -> Result<(Rat, Rat)> {
    let AsympParams { gamma, delta } = asymp_params(n)?;
    ensure_asymptote(n)?;
    let b = super::zeta::zeta_tail_upper(a, delta as u32, params)?;
    let err = root_gap_upper(&b, gamma, 0);
    Ok((b, err))
}

/// Everything needed to re-check `|rho^ELS_n - ∏_{p<=A} rho_n(p)| <= 10^{-D}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationCertificate {
    pub n: usize,
    /// Largest prime included, or 1 for the empty product.
    pub a: u64,
    pub params: TailBoundParams,
    /// Upper bound on `ζ_{>A}(delta_n)`.
    pub b: Rat,
    /// Exact upper bound on the truncation error.
    pub error_upper: Rat,
    pub digits: u32,
}

impl TruncationCertificate {
    /// The error bound rounded up to four significant digits.
    pub fn error_bound(&self) -> String {
        scientific(&self.error_upper, 4, Rounding::Up)
    }

    /// Re-derives the certificate's claims from its stored numbers.
    pub fn check(&self) -> Result<bool> {
        let AsympParams { gamma, delta } = asymp_params(self.n)?;
        let b = super::zeta::zeta_tail_upper(self.a.max(1), delta as u32, self.params)?;
        // 1 - B^{-1/gamma} <= E  iff  (1 - E)^gamma B <= 1.
        let lower_root = Rat::one() - &self.error_upper;
        Ok(b == self.b
            && self.error_upper <= ten_to_minus(self.digits)
            && num_traits::pow(lower_root, gamma as usize) * &self.b <= Rat::one())
    }
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    n: usize,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none")]
    i: Option<u32>,
    #[serde(rename = "B", skip_serializing_if = "Option::is_none")]
    b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    digits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<&'a str>,
}

impl<'a> CertificateJson<'a> {
    fn new(n: usize, cert: Option<&TruncationCertificate>, value: Option<&'a str>) -> Self {
        CertificateJson {
            n,
            a: cert.map(|c| c.a),
            m: cert.map(|c| c.params.m),
            i: cert.map(|c| c.params.i),
            b: cert.map(|c| format!("{}/{}", c.b.numer(), c.b.denom())),
            error_bound: cert.map(|c| c.error_bound()),
            digits: cert.map(|c| c.digits),
            value,
        }
    }
}

impl Serialize for TruncationCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson::new(self.n, Some(self), None).serialize(s)
    }
}

/// [`plan_truncation_with`] using the default tail parameters.
pub fn plan_truncation(n: usize, digits: u32, a_max: u64) -> Result<TruncationCertificate> {
    plan_truncation_with(n, digits, a_max, TailBoundParams::default())
}

/// The smallest prime cutoff `A <= a_max` whose truncation error is
/// certified below `10^{-digits}`.
pub fn plan_truncation_with(
    n: usize,
    digits: u32,
    a_max: u64,
    params: TailBoundParams,
) -> Result<TruncationCertificate> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    if a_max == 0 {
        return Err(Error::InvalidArgument("A_max must be at least 1".into()));
    }
    params.validate()?;
    let AsympParams { gamma, delta } = asymp_params(n)?;
    ensure_asymptote(n)?;
    let z = zeta_upper(delta as u32, params)?;
    let g = gamma as u32;
    // B <= (10^D / (10^D - 1))^gamma  iff  1 - B^{-1/gamma} <= 10^{-D}.
    let certifies = |num: &BigInt, den: &BigInt, d: u32| {
        let t = pow10(d as u64);
        num * z.numer() * (&t - 1u32).pow(g) <= den * z.denom() * t.pow(g)
    };
    let primes = primes_up_to(a_max);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    let mut a = 1;
    let mut next = primes.iter();
    while !certifies(&num, &den, digits) {
        let Some(&p) = next.next() else {
            let mut best = 0;
            while best < u32::MAX && certifies(&num, &den, best + 1) {
                best += 1;
            }
            return Err(Error::PlanFailed { digits, a_max, best });
        };
        let ps = BigInt::from(p).pow(delta as u32);
        num *= &ps - 1u32;
        den *= ps;
        a = p;
    }
    let b = Rat::new(num * z.numer(), den * z.denom());
    let limit = ten_to_minus(digits);
    let mut places = 0;
    let error_upper = loop {
        let e = root_gap_upper(&b, gamma, places);
        if e <= limit {
            break e;
        }
        places = places.max(digits) + 20;
        if places > digits + 400 {
            return Err(Error::Defect(format!(
                "cannot resolve the error bound below 10^-{digits} at A = {a}"
            )));
        }
    };
    Ok(TruncationCertificate {
        n,
        a,
        params,
        b,
        error_upper,
        digits,
    })
}

/// Exact `∏_{p <= A} rho_n(p)`.
pub fn truncated_product(n: usize, a: u64) -> Result<Rat> {
    let rho = rho_local(n)?;
    let primes = primes_up_to(a);
    let evals: Vec<(BigInt, BigInt)> = primes
        .par_iter()
        .map(|&p| {
            let x = BigInt::from(p);
            (rho.numer().eval_int(&x), rho.denom().eval_int(&x))
        })
        .collect();
    if let Some(i) = evals.iter().position(|(_, d)| d.is_zero()) {
        return Err(Error::Pole(primes[i].to_string()));
    }
    let (num, den) = evals
        .into_par_iter()
        .reduce(|| (BigInt::one(), BigInt::one()), |x, y| (x.0 * y.0, x.1 * y.1));
    Ok(Rat::new(num, den))
}

/// `rho_n` as a decimal with `digits` places plus its certificate; exactly 1
/// and uncertified for `n >= 9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedValue {
    pub n: usize,
    pub value: String,
    pub certificate: Option<TruncationCertificate>,
    /// The exact truncated product.
    pub product: Rat,
}

impl CertifiedValue {
    /// `1 - ∏_{p<=A} rho_n(p)`.
    pub fn deficit(&self) -> Rat {
        Rat::one() - &self.product
    }

    pub fn deficit_scientific(&self, sig: u32) -> String {
        scientific(&self.deficit(), sig, Rounding::Nearest)
    }
}

impl Serialize for CertifiedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson::new(self.n, self.certificate.as_ref(), Some(&self.value)).serialize(s)
    }
}

/// [`rho_global_with`] using the default cutoff bound and tail parameters.
pub fn rho_global(n: usize, digits: u32) -> Result<CertifiedValue> {
    rho_global_with(n, digits, DEFAULT_A_MAX, TailBoundParams::default())
}

/// The density of everywhere locally soluble cubic forms in `n + 1`
/// variables, to `digits` decimal places.
pub fn rho_global_with(
    n: usize,
    digits: u32,
    a_max: u64,
    params: TailBoundParams,
) -> Result<CertifiedValue> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the Euler product is only meaningful for n >= 2, got n = {n}"
        )));
    }
    if n >= ALWAYS_SOLUBLE_FROM {
        return Ok(CertifiedValue {
            n,
            value: "1".into(),
            certificate: None,
            product: Rat::one(),
        });
    }
    let cert = plan_truncation_with(n, digits, a_max, params)?;
    let product = truncated_product(n, cert.a)?;
    Ok(CertifiedValue {
        n,
        value: fixed(&product, digits, Rounding::Nearest),
        certificate: Some(cert),
        product,
    })
}

/// Outcome of checking `gamma p^delta g(p) <= h(p)` over primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoteCheck {
    pub n: usize,
    pub prime_limit: u64,
    pub primes_checked: usize,
    pub gamma: u64,
    pub delta: u64,
    /// The first prime where the inequality fails.
    pub witness: Option<u64>,
}

impl AsymptoteCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// The first prime in `primes` with `g(p)/h(p) > 1/(gamma p^delta)`.
pub fn first_asymptote_violation(
    g: &ZPoly,
    h: &ZPoly,
    gamma: u64,
    delta: u64,
    primes: &[u64],
) -> Option<u64> {
    primes.par_iter().copied().find_first(|&p| {
        let x = BigInt::from(p);
        let hv = h.eval_int(&x);
        let lhs = g.eval_int(&x) * gamma * x.pow(delta as u32);
        hv.is_zero() || (hv.is_positive() && lhs > hv) || (hv.is_negative() && lhs < hv)
    })
}

/// Checks `1 - rho_n(p) <= 1/(gamma_n p^delta_n)` at every prime up to
/// `prime_limit`, after confirming the leading terms of the reduced fraction.
pub fn verify_asymptote_inequality(n: usize, prime_limit: u64) -> Result<AsymptoteCheck> {
    let AsympParams { gamma, delta } = asymp_params(n)?;
    let deficit = &crate::exactalg::RatFunc::one() - &rho_local(n)?;
    let primes = primes_up_to(prime_limit);
    let witness = first_asymptote_violation(deficit.numer(), deficit.denom(), gamma, delta, &primes);
    Ok(AsymptoteCheck {
        n,
        prime_limit,
        primes_checked: primes.len(),
        gamma,
        delta,
        witness,
    })
}
