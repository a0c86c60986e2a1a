//! Multi-modular gcd in Z[t].
//!
//! Computes monic gcds modulo word-sized primes, lifts by Chinese remaindering
//! until the image stabilizes, then confirms the candidate by exact trial
//! division. The trial division doubles as the source of the cofactors.

use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};

use super::ZPoly;

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `i`-th largest prime below 2^62.
fn modulus(i: usize) -> u64 {
    let mut primes = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    let mut cand = primes.last().copied().unwrap_or((1u64 << 62) + 1);
    while primes.len() <= i {
        cand -= 2;
        while !is_prime_u64(cand) {
            cand -= 2;
        }
        primes.push(cand);
    }
    primes[i]
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let mut r: u128 = 0;
    for limb in c.magnitude().iter_u64_digits().rev() {
        r = ((r << 64) | limb as u128) % p as u128;
    }
    let r = r as u64;
    if c.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn reduce_poly(a: &ZPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.coeffs().iter().map(|c| reduce(c, p)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo `b` over F_p, in place; `b` must be nonzero.
fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let q = mul_mod(a[top], inv, p);
        if q != 0 {
            let shift = top - db;
            for (j, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                let x = &mut a[shift + j];
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Monic gcd over F_p.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Combines `h` (mod `m`, symmetric residues) with `r` (mod `p`) into residues
/// modulo `m * p`, again symmetric.
fn crt_combine(h: &mut [BigInt], m: &BigInt, r: &[u64], p: u64) {
    let m_mod_p = reduce(m, p);
    let m_inv = inv_mod(m_mod_p, p);
    let mp = m * BigInt::from(p);
    let half = &mp >> 1;
    for (hc, &rc) in h.iter_mut().zip(r) {
        let hp = reduce(hc, p);
        let diff = if rc >= hp { rc - hp } else { rc + p - hp };
        let k = mul_mod(diff, m_inv, p);
        if k != 0 {
            *hc += m * BigInt::from(k);
        }
        if *hc > half {
            *hc -= &mp;
        } else if *hc < -&half {
            *hc += &mp;
        }
    }
}

/// Gcd of two primitive polynomials with positive leading coefficients, with
/// cofactors: returns `(g, a / g, b / g)`, `g` primitive with positive
/// leading coefficient.
fn gcd_primitive(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da == 0 || db == 0 {
        return (ZPoly::one(), a.clone(), b.clone());
    }
    if a == b {
        return (a.clone(), ZPoly::one(), ZPoly::one());
    }
    let ell = num_integer::Integer::gcd(a.lc().unwrap(), b.lc().unwrap());
    let mut bound = da.min(db);
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut prev: Option<Vec<BigInt>> = None;
    for i in 0.. {
        let p = modulus(i);
        let ap = reduce_poly(a, p);
        let bp = reduce_poly(b, p);
        if ap.len() != da + 1 || bp.len() != db + 1 {
            continue;
        }
        let mut g = gcd_mod(ap, bp, p);
        let dg = g.len() - 1;
        if dg == 0 {
            return (ZPoly::one(), a.clone(), b.clone());
        }
        if dg > bound {
            continue;
        }
        let ell_p = reduce(&ell, p);
        for c in g.iter_mut() {
            *c = mul_mod(*c, ell_p, p);
        }
        if dg < bound || acc.is_none() {
            bound = dg;
            let half = p / 2;
            let h = g
                .iter()
                .map(|&c| {
                    if c > half {
                        BigInt::from(c) - BigInt::from(p)
                    } else {
                        BigInt::from(c)
                    }
                })
                .collect();
            acc = Some((h, BigInt::from(p)));
            prev = None;
            continue;
        }
        let (h, m) = acc.as_mut().unwrap();
        crt_combine(h, m, &g, p);
        *m *= BigInt::from(p);
        if prev.as_ref() == Some(h) {
            let (_, cand) = ZPoly::from_coeffs(h.clone()).primitive_split();
            if let (Some(qa), Some(qb)) = (a.div_exact(&cand), b.div_exact(&cand)) {
                return (cand, qa, qb);
            }
        }
        prev = Some(h.clone());
    }
    unreachable!()
}

/// Gcd in Z[t] with cofactors. The gcd is normalized to a positive leading
/// coefficient and includes the gcd of the contents; `gcd(0, 0) = 0`.
pub fn gcd_with_cofactors(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    if a.is_zero() {
        if b.is_zero() {
            return (ZPoly::zero(), ZPoly::zero(), ZPoly::zero());
        }
        let (c, pp) = b.primitive_split();
        let s = if c.is_negative() { -BigInt::one() } else { BigInt::one() };
        return (pp.scale(&c.abs()), ZPoly::zero(), ZPoly::constant(s));
    }
    if b.is_zero() {
        let (g, qb, qa) = gcd_with_cofactors(b, a);
        return (g, qa, qb);
    }
    let (ca, pa) = a.primitive_split();
    let (cb, pb) = b.primitive_split();
    let cg = num_integer::Integer::gcd(&ca, &cb);
    let (g, qa, qb) = gcd_primitive(&pa, &pb);
    let qa = if qa.is_zero() { qa } else { qa.scale(&(&ca / &cg)) };
    let qb = if qb.is_zero() { qb } else { qb.scale(&(&cb / &cg)) };
    (g.scale(&cg), qa, qb)
}

pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    gcd_with_cofactors(a, b).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn small_prime_checks() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime_u64(modulus(0)));
        assert!(modulus(1) < modulus(0));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (t - 1)(t + 2) and (t - 1)(2t + 3)
        let a = p(&[-1, 0, 1]) * p(&[2, 1]);
        let b = p(&[-1, 1]) * p(&[3, 2]);
        let (g, qa, qb) = gcd_with_cofactors(&a, &b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&g * &qa, a);
        assert_eq!(&g * &qb, b);
    }

    #[test]
    fn gcd_includes_content() {
        let (g, qa, qb) = gcd_with_cofactors(&p(&[6, 6]), &p(&[-4, -4]));
        assert_eq!(g, p(&[2, 2]));
        assert_eq!(qa, p(&[3]));
        assert_eq!(qb, p(&[-2]));
    }

    #[test]
    fn coprime_and_zero_cases() {
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
        assert_eq!(gcd(&ZPoly::zero(), &p(&[-3, -6])), p(&[3, 6]));
    }

    #[test]
    fn large_coefficient_gcd() {
        // gcd with coefficients much larger than one word
        let big = ZPoly::from_coeffs(vec![
            BigInt::from(3).pow(90u32) + 7,
            -BigInt::from(5).pow(70u32),
            BigInt::from(11).pow(40u32),
        ]);
        let x = p(&[1, 0, 0, 5, -2]);
        let y = p(&[-7, 1, 3]);
        let (g, _, _) = gcd_with_cofactors(&(&big * &x), &(&big * &y));
        assert_eq!(g, big.primitive_split().1);
    }
}
