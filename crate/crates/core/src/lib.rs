//! Local and global densities of cubic hypersurfaces with a p-adic point.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactalg`]: exact integers, rationals, polynomials and the field Q(t).
//! - [`fforacle`]: brute-force enumeration of cubic forms over small prime
//!   fields, used as ground truth for the factorization probabilities, plus a
//!   Monte Carlo p-adic check for binary cubics.
//! - [`localdensity`]: the closed-form factorization probabilities, the
//!   64-unknown linear system of lifting probabilities over Q(t), its staged
//!   solution, and the reference polynomials `g_n / h_n`.
//! - [`eulerprod`]: Bernoulli numbers, Euler-Maclaurin bounds on zeta tails and
//!   certified truncations of the Euler product over primes.
//! - [`cli`]: the `cubicdens` command-line front end.

pub mod cli;
pub mod error;
pub mod eulerprod;
pub mod exactalg;
pub mod fforacle;
pub mod localdensity;

pub use error::{Error, Result};
pub use exactalg::{PolyQ, Rat, RatFunc};
