//! Monte Carlo estimate of the density of binary cubic forms over Z_p with a
//! zero in P^1(Q_p).

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::check_prime;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Solubility {
    Soluble,
    Insoluble,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolubilityEstimate {
    pub p: u32,
    pub precision: u32,
    pub samples: u64,
    pub soluble: u64,
    pub insoluble: u64,
    pub undecided: u64,
}

impl SolubilityEstimate {
    pub fn soluble_fraction(&self) -> f64 {
        self.soluble as f64 / self.samples as f64
    }

    pub fn undecided_fraction(&self) -> f64 {
        self.undecided as f64 / self.samples as f64
    }
}

/// Largest `v` with `p^v | c`, for nonzero `c`.
fn valuation(c: &BigInt, p: &BigInt) -> u32 {
    let mut v = 0;
    let mut c = c.clone();
    loop {
        let (q, r) = c.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        c = q;
        v += 1;
    }
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative(poly: &[BigInt]) -> Vec<BigInt> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Coefficients of `P(r + p x)`.
fn shift_scale(poly: &[BigInt], r: &BigInt, p: &BigInt) -> Vec<BigInt> {
    // Taylor shift by r, then scale x by p.
    let mut c = poly.to_vec();
    let d = c.len();
    for i in 0..d {
        for j in (i..d - 1).rev() {
            let t = &c[j + 1] * r;
            c[j] += t;
        }
    }
    let mut pk = BigInt::one();
    for ck in c.iter_mut() {
        *ck *= &pk;
        pk *= p;
    }
    c
}

/// Whether the integer polynomial `poly` (ascending coefficients) has a root
/// in Z_p, spending at most `budget` units of p-adic valuation.
fn root_in_zp(poly: &[BigInt], p: &BigInt, budget: i64) -> Solubility {
    let Some(v) = poly
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| valuation(c, p))
        .min()
    else {
        return Solubility::Soluble;
    };
    let budget = budget - v as i64;
    if budget < 0 {
        return Solubility::Undecided;
    }
    let pv = num_traits::pow(p.clone(), v as usize);
    let poly: Vec<BigInt> = poly.iter().map(|c| c / &pv).collect();
    let dp = derivative(&poly);
    let pu = p.to_u64_digits().1.first().copied().unwrap_or(0);
    let mut undecided = false;
    for r in 0..pu {
        let r = BigInt::from(r);
        let val = eval(&poly, &r);
        if val.is_zero() {
            return Solubility::Soluble;
        }
        if !val.mod_floor(p).is_zero() {
            continue;
        }
        if !eval(&dp, &r).mod_floor(p).is_zero() {
            return Solubility::Soluble;
        }
        match root_in_zp(&shift_scale(&poly, &r, p), p, budget) {
            Solubility::Soluble => return Solubility::Soluble,
            Solubility::Undecided => undecided = true,
            Solubility::Insoluble => {}
        }
    }
    if undecided {
        Solubility::Undecided
    } else {
        Solubility::Insoluble
    }
}

/// Decides whether `a x^3 + b x^2 y + c x y^2 + d y^3` has a zero in
/// P^1(Q_p), treating the integer coefficients as exact. Gives up once the
/// recursion has consumed more than `precision` powers of p.
pub fn decide_binary_cubic(coeffs: &[BigInt; 4], p: u32, precision: u32) -> Solubility {
    let pb = BigInt::from(p);
    let [a, b, c, d] = coeffs;
    if coeffs.iter().all(|x| x.is_zero()) {
        return Solubility::Soluble;
    }
    // Chart [x : 1], x in Z_p.
    let affine = vec![d.clone(), c.clone(), b.clone(), a.clone()];
    let first = root_in_zp(&affine, &pb, precision as i64);
    if first == Solubility::Soluble {
        return first;
    }
    // Chart [1 : p z], z in Z_p.
    let mut pk = BigInt::one();
    let other: Vec<BigInt> = [a, b, c, d]
        .iter()
        .map(|x| {
            let t = *x * &pk;
            pk *= &pb;
            t
        })
        .collect();
    let second = root_in_zp(&other, &pb, precision as i64);
    match (first, second) {
        (_, Solubility::Soluble) => Solubility::Soluble,
        (Solubility::Insoluble, Solubility::Insoluble) => Solubility::Insoluble,
        _ => Solubility::Undecided,
    }
}

/// Samples `samples` binary cubics with coefficients uniform in `Z / p^K` and
/// classifies each with [`decide_binary_cubic`]. Sample `i` draws from its
/// own ChaCha stream, so the result does not depend on thread scheduling.
pub fn padic_binary_cubic_sample(
    p: u32,
    samples: u64,
    precision: u32,
    seed: u64,
) -> Result<SolubilityEstimate> {
    check_prime(p, u32::MAX)?;
    if precision < 10 {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least 10, got {precision}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let modulus = num_traits::pow(BigInt::from(p), precision as usize);
    let outcomes: Vec<Solubility> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let coeffs: [BigInt; 4] =
                std::array::from_fn(|_| rng.gen_bigint_range(&BigInt::zero(), &modulus));
            decide_binary_cubic(&coeffs, p, precision)
        })
        .collect();
    let count = |s| outcomes.iter().filter(|&&o| o == s).count() as u64;
    Ok(SolubilityEstimate {
        p,
        precision,
        samples,
        soluble: count(Solubility::Soluble),
        insoluble: count(Solubility::Insoluble),
        undecided: count(Solubility::Undecided),
    })
}
