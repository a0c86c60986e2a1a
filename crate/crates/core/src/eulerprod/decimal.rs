//! Decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactalg::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    Up,
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

/// `round(x * 10^k)` for `x >= 0`, halves rounded up.
fn scaled(x: &Rat, k: i64, mode: Rounding) -> BigInt {
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    if k >= 0 {
        n *= pow10(k as u32);
    } else {
        d *= pow10((-k) as u32);
    }
    let (q, r) = n.div_rem(&d);
    let bump = match mode {
        Rounding::Up => !r.is_zero(),
        Rounding::Nearest => r * 2 >= d,
    };
    if bump {
        q + 1
    } else {
        q
    }
}

/// `floor(log10 x)` for `x > 0`.
pub fn floor_log10(x: &Rat) -> i64 {
    let est = ((x.numer().bits() as f64 - x.denom().bits() as f64) * std::f64::consts::LOG10_2)
        .floor() as i64;
    let mut e = est - 1;
    loop {
        let next = e + 1;
        let p = if next >= 0 {
            Rat::from_integer(pow10(next as u32))
        } else {
            Rat::new(1.into(), pow10((-next) as u32))
        };
        if &p > x {
            return e;
        }
        e = next;
    }
}

/// `x` with `places` digits after the point.
pub fn fixed(x: &Rat, places: u32, mode: Rounding) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let v = scaled(&x.abs(), places as i64, mode).to_string();
    if places == 0 {
        return format!("{sign}{v}");
    }
    let p = places as usize;
    let v = if v.len() <= p { format!("{}{v}", "0".repeat(p + 1 - v.len())) } else { v };
    let (int, frac) = v.split_at(v.len() - p);
    format!("{sign}{int}.{frac}")
}

/// `x >= 0` in scientific notation with `sig` significant digits, e.g.
/// `5.022e-9`.
pub fn scientific(x: &Rat, sig: u32, mode: Rounding) -> String {
    assert!(sig >= 1 && !x.is_negative());
    if x.is_zero() {
        return "0".into();
    }
    let mut e = floor_log10(x);
    let mut m = scaled(x, sig as i64 - 1 - e, mode);
    if m >= pow10(sig) {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{head}e{e}")
    } else {
        format!("{head}.{tail}e{e}")
    }
}
