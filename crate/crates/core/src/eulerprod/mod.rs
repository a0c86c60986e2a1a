//! Certified evaluation of `∏_p rho_n(p)`.
//!
//! The product over all primes is approximated by its truncation at a prime
//! cutoff `A`. The tail is controlled through an exact rational upper bound
//! `B` on `ζ_{>A}(delta_n)` (Euler-Maclaurin with Bernoulli corrections), and
//! `|rho - ∏_{p<=A} rho_n(p)| <= 1 - B^{-1/gamma_n}`. All arithmetic is exact
//! except the final root, which is bounded from the safe side.

mod bernoulli;
mod decimal;
mod primes;
mod truncation;
mod zeta;

pub use bernoulli::bernoulli;
pub use decimal::{fixed, floor_log10, scientific, Rounding};
pub use primes::primes_up_to;
pub use truncation::{
    asymp_params, first_asymptote_violation, plan_truncation, plan_truncation_with, rho_global,
    rho_global_with, truncated_product, truncation_error_bound, verify_asymptote_inequality,
    AsympParams, AsymptoteCheck, CertifiedValue, TruncationCertificate, DEFAULT_A_MAX,
    DEFAULT_SWEEP_LIMIT,
};
pub use zeta::{em_remainder, zeta_tail_upper, zeta_upper, TailBoundParams};

/// Published `(n, A, D)`: truncating at `A` is accurate to `10^{-D}`.
pub const REFERENCE_TRUNCATIONS: [(usize, u64, u32); 14] = [
    (2, 61, 5),
    (2, 12919, 10),
    (3, 11, 10),
    (3, 503, 26),
    (4, 5, 16),
    (4, 179, 50),
    (5, 3, 21),
    (5, 17, 53),
    (6, 3, 38),
    (6, 19, 100),
    (7, 3, 62),
    (7, 7, 110),
    (8, 3, 97),
    (8, 5, 141),
];

/// Published `1 - ∏_{p<=A} rho_n(p)` at the first cutoff of each `n`.
pub const REFERENCE_DEFICITS: [(usize, u64, &str); 7] = [
    (2, 61, "2.74e-2"),
    (3, 11, "7.328e-5"),
    (4, 5, "5.022e-9"),
    (5, 3, "1.343e-15"),
    (6, 3, "3.502e-26"),
    (7, 3, "5.152e-42"),
    (8, 3, "6.222e-64"),
];

/// Published global densities: `rho_3` to six places, and `1 - rho_n`
/// for `n >= 4`.
pub const REFERENCE_DENSITIES: [(usize, &str); 6] = [
    (3, "0.999927"),
    (4, "5.022e-9"),
    (5, "1.343e-15"),
    (6, "3.502e-26"),
    (7, "5.152e-42"),
    (8, "6.222e-64"),
];
