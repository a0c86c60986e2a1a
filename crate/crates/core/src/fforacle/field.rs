//! Prime fields and the cubic extension F_{p^3}.

use crate::error::{Error, Result};
use crate::exactalg::is_prime_u64;

/// Largest prime accepted by [`build_field_tower`] unless a bound is given.
pub const DEFAULT_PRIME_BOUND: u32 = 13;

/// Hard ceiling: field elements are stored as bytes.
pub const MAX_PRIME: u32 = 251;

pub(crate) fn check_prime(p: u32, bound: u32) -> Result<()> {
    if !is_prime_u64(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let bound = bound.min(MAX_PRIME);
    if p > bound {
        return Err(Error::InvalidArgument(format!(
            "prime {p} exceeds the configured bound {bound}"
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u32;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// An element `c0 + c1 x + c2 x^2` of F_p[x] / (modulus).
pub type Elem = [u32; 3];

/// F_{p^3} presented as F_p[x] modulo a monic irreducible cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    p: u32,
    /// `(a, b, c)` for the modulus `x^3 + a x^2 + b x + c`.
    modulus: [u32; 3],
    /// Images of `1, x, x^2` under Frobenius.
    frob: [Elem; 3],
}

/// Builds F_{p^3} using the lexicographically smallest irreducible monic cubic.
pub fn build_field_tower(p: u32) -> Result<FieldTower> {
    FieldTower::with_bound(p, DEFAULT_PRIME_BOUND)
}

impl FieldTower {
    pub fn with_bound(p: u32, bound: u32) -> Result<Self> {
        check_prime(p, bound)?;
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let has_root =
                        (0..p).any(|r| (r * r % p * r + a * r % p * r + b * r + c).is_multiple_of(p));
                    if !has_root {
                        return Ok(Self::from_modulus(p, [a, b, c]));
                    }
                }
            }
        }
        Err(Error::Defect(format!("no irreducible cubic over F_{p}")))
    }

    fn from_modulus(p: u32, modulus: [u32; 3]) -> Self {
        let mut f = FieldTower {
            p,
            modulus,
            frob: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        };
        let xp = f.pow([0, 1, 0], p as u64);
        let x2p = f.mul(xp, xp);
        f.frob = [[1, 0, 0], xp, x2p];
        f
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coefficients of the modulus in ascending order, leading 1 included.
    pub fn modulus(&self) -> [u32; 4] {
        let [a, b, c] = self.modulus;
        [c, b, a, 1]
    }

    pub fn zero(&self) -> Elem {
        [0, 0, 0]
    }

    pub fn one(&self) -> Elem {
        [1, 0, 0]
    }

    pub fn from_base(&self, a: u32) -> Elem {
        [a % self.p, 0, 0]
    }

    pub fn is_base(&self, e: &Elem) -> bool {
        e[1] == 0 && e[2] == 0
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        [(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2]) % p]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let mut c = [0u32; 5];
        for i in 0..3 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..3 {
                c[i + j] = (c[i + j] + a[i] * b[j]) % p;
            }
        }
        let [ma, mb, mc] = self.modulus;
        // x^3 = -(a x^2 + b x + c)
        for k in (3..5).rev() {
            let t = c[k];
            if t == 0 {
                continue;
            }
            c[k] = 0;
            c[k - 1] = (c[k - 1] + (p - ma) * t) % p;
            c[k - 2] = (c[k - 2] + (p - mb) * t) % p;
            c[k - 3] = (c[k - 3] + (p - mc) * t) % p;
        }
        [c[0], c[1], c[2]]
    }

    pub fn pow(&self, mut b: Elem, mut e: u64) -> Elem {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// `e ↦ e^p`, applied as a linear map over F_p.
    pub fn frobenius(&self, e: Elem) -> Elem {
        let p = self.p;
        let mut out = [0u32; 3];
        for (i, &ei) in e.iter().enumerate() {
            for (o, &f) in out.iter_mut().zip(&self.frob[i]) {
                *o = (*o + ei * f) % p;
            }
        }
        out
    }

    /// `N(e) = e · e^p · e^{p^2}`, which lies in F_p.
    pub fn norm(&self, e: Elem) -> u32 {
        let s = self.frobenius(e);
        let n = self.mul(self.mul(e, s), self.frobenius(s));
        debug_assert!(self.is_base(&n));
        n[0]
    }

    pub fn inv(&self, e: Elem) -> Elem {
        let q = (self.p as u64).pow(3);
        self.pow(e, q - 2)
    }

    /// All `p^3` elements in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let p = self.p;
        (0..p * p * p).map(move |k| [k % p, (k / p) % p, k / (p * p)])
    }
}

/// Rank over F_p of a list of vectors of equal length.
pub(crate) fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_multiple_of(p)) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod_p(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..cols {
                    m[r][c] = (m[r][c] + (p - f) * m[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f8_modulus() {
        let f = build_field_tower(2).unwrap();
        assert_eq!(f.modulus(), [1, 1, 0, 1]);
    }

    #[test]
    fn f27_modulus_has_no_root() {
        let f = build_field_tower(3).unwrap();
        let [c, b, a, _] = f.modulus();
        assert!((0..3).all(|r| (r * r * r + a * r * r + b * r + c) % 3 != 0));
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(build_field_tower(4).unwrap_err(), Error::NotPrime(4));
        assert!(build_field_tower(17).is_err());
        assert!(FieldTower::with_bound(17, 17).is_ok());
    }

    #[test]
    fn frobenius_has_order_three() {
        for p in [2, 3, 5, 7, 11, 13] {
            let f = build_field_tower(p).unwrap();
            let mut moved = false;
            for e in f.elements() {
                let s = f.frobenius(e);
                assert_eq!(s, f.pow(e, p as u64));
                assert_eq!(f.frobenius(f.frobenius(s)), e);
                moved |= s != e;
            }
            assert!(moved);
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_right_order() {
        let f = build_field_tower(5).unwrap();
        for e in f.elements().filter(|e| *e != [0, 0, 0]) {
            assert_eq!(f.pow(e, 124), f.one());
            assert_eq!(f.mul(e, f.inv(e)), f.one());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, 4]], 5), 2);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[], 3), 0);
    }
}
