//! Exact arithmetic: rationals, polynomials over Z and Q, and the rational
//! function field Q(t).

mod modgcd;
mod polyq;
mod ratfunc;
mod zpoly;

pub use modgcd::{gcd as zpoly_gcd, gcd_with_cofactors};
pub use polyq::PolyQ;
pub use ratfunc::RatFunc;
pub use zpoly::ZPoly;

pub(crate) use modgcd::is_prime_u64;

use crate::error::Result;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Normal form of `num / den`.
pub fn ratfunc_normalize(num: &PolyQ, den: &PolyQ) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

pub fn ratfunc_eval(f: &RatFunc, x: &Rat) -> Result<Rat> {
    f.eval(x)
}
