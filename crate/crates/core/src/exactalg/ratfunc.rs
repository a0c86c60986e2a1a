//! The rational function field Q(t) in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modgcd::gcd_with_cofactors;
use super::{PolyQ, Rat, ZPoly};
use crate::error::{Error, Result};

/// An element `num / den` of Q(t).
///
/// Normal form: `num` and `den` have integer coefficients and no common
/// factor in Z[t] (so they are coprime in Q[t] and their contents are
/// coprime), and `den` has a positive leading coefficient. Zero is `0 / 1`.
/// Two values are equal exactly when their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc {
            num: ZPoly::constant(BigInt::from(c)),
            den: ZPoly::one(),
        }
    }

    pub fn from_rat(c: &Rat) -> Self {
        RatFunc {
            num: ZPoly::constant(c.numer().clone()),
            den: ZPoly::constant(c.denom().clone()),
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_zpoly(ZPoly::t_pow(1))
    }

    pub fn from_zpoly(p: ZPoly) -> Self {
        RatFunc {
            num: p,
            den: ZPoly::one(),
        }
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        let m = ZPoly::t_pow(k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_zpoly(m)
        } else {
            RatFunc {
                num: ZPoly::one(),
                den: m,
            }
        }
    }

    /// `1 / t^k` for `k >= 0`.
    pub fn inv_t_pow(k: u64) -> Self {
        Self::t_pow(-(k as i64))
    }

    /// Normal form of `num / den` over Q.
    pub fn new(num: &PolyQ, den: &PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dn, zn) = num.to_zpoly();
        let (dd, zd) = den.to_zpoly();
        // num/den = (zn/dn) / (zd/dd) = (zn*dd) / (zd*dn)
        Self::from_zpolys(zn.scale(&dd), zd.scale(&dn))
    }

    /// Normal form of `num / den` with integer polynomials.
    pub fn from_zpolys(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (_, n, d) = gcd_with_cofactors(&num, &den);
        Self::fix_sign(n, d)
    }

    fn fix_sign(num: ZPoly, den: ZPoly) -> Self {
        if den.lc().is_some_and(|c| c.is_negative()) {
            RatFunc {
                num: -num,
                den: -den,
            }
        } else {
            RatFunc { num, den }
        }
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    pub fn numer_q(&self) -> PolyQ {
        PolyQ::from(&self.num)
    }

    pub fn denom_q(&self) -> PolyQ {
        PolyQ::from(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Total degree `deg(num) + deg(den)`, used as a size measure.
    pub fn size(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// Whether the stored pair satisfies the normal-form invariants, checked
    /// with Euclid over Q[t] rather than the modular gcd.
    pub fn is_normalized(&self) -> bool {
        let Some(lc) = self.den.lc() else { return false };
        if !lc.is_positive() {
            return false;
        }
        if self.num.is_zero() {
            return self.den.is_one();
        }
        self.numer_q().gcd(&self.denom_q()).degree() == Some(0)
            && self.num.content().gcd(&self.den.content()).is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fix_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Evaluates at a rational point; fails at a pole.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval_rat(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval_rat(x) / d)
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn add_impl(&self, rhs: &RatFunc, negate: bool) -> RatFunc {
        let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.is_zero() {
            return RatFunc {
                num: rnum,
                den: rhs.den.clone(),
            };
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rnum, self.den.clone());
        }
        // With g = gcd(b, d), a/b + c/d = (a d' + c b') / (b' d' g) and only
        // gcd(numerator, g) can be nontrivial.
        let (g, b1, d1) = gcd_with_cofactors(&self.den, &rhs.den);
        let num = &(&self.num * &d1) + &(&rnum * &b1);
        if num.is_zero() {
            return Self::zero();
        }
        if g.is_one() {
            return Self::fix_sign(num, &b1 * &d1);
        }
        let (_, num, g1) = gcd_with_cofactors(&num, &g);
        Self::fix_sign(num, &(&b1 * &d1) * &g1)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

/// Serialized as `{"num": [...], "den": [...]}` with ascending coefficients.
impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", &self.numer_q())?;
        st.serialize_field("den", &self.denom_q())?;
        st.end()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let (_, a, d) = gcd_with_cofactors(&self.num, &rhs.den);
        let (_, c, b) = gcd_with_cofactors(&rhs.num, &self.den);
        RatFunc::fix_sign(&a * &c, &b * &d)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] to get an error.
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero in Q(t)")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> PolyQ {
        PolyQ::from_i64s(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(&q(n), &q(d)).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.numer_q(), q(&[1, 1]));
        assert_eq!(f.denom_q(), q(&[1]));
    }

    #[test]
    fn normalize_zero() {
        let f = rf(&[0], &[0, 7]);
        assert_eq!(f, RatFunc::zero());
        assert_eq!(f.denom_q(), q(&[1]));
    }

    #[test]
    fn normalize_sign_and_content() {
        let f = rf(&[2, 2], &[-4]);
        assert_eq!(f.numer_q(), q(&[-1, -1]));
        assert_eq!(f.denom_q(), q(&[2]));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        let err = RatFunc::new(&q(&[1]), &PolyQ::zero()).unwrap_err();
        assert_eq!(err.to_string(), "division by zero in Q(t)");
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        let half = Rat::new(1.into(), 2.into());
        let num = PolyQ::from_coeffs(vec![half.clone(), half]);
        let f = RatFunc::new(&num, &q(&[0, 3])).unwrap();
        assert_eq!(f, rf(&[1, 1], &[0, 6]));
        assert!(f.is_normalized());
    }

    #[test]
    fn partial_fraction_identity() {
        let s = rf(&[1], &[-1, 1]) + rf(&[1], &[1, 1]);
        assert_eq!(s, rf(&[0, 2], &[-1, 0, 1]));
    }

    #[test]
    fn zero_absorbs() {
        let a = rf(&[3, 0, 1], &[5, 1]);
        assert_eq!(&a * &RatFunc::zero(), RatFunc::zero());
    }

    #[test]
    fn quotient_cancels() {
        let a = rf(&[0, 0, 0, 1], &[-1, 1]);
        let b = rf(&[0, 1], &[-1, 1]);
        assert_eq!(&a / &b, rf(&[0, 0, 1], &[1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(RatFunc::one().checked_div(&RatFunc::zero()).is_err());
        assert!(RatFunc::zero().recip().is_err());
    }

    #[test]
    fn eval_binary_cubic_density_at_two() {
        // 1 - (t^2+1)^2 / (3 (t^4+t^3+t^2+t+1)) at t = 2
        let g = rf(&[1, 0, 2, 0, 1], &[3, 3, 3, 3, 3]);
        let rho = &RatFunc::one() - &g;
        let v = rho.eval(&Rat::from_integer(2.into())).unwrap();
        assert_eq!(v, Rat::new(68.into(), 93.into()));
    }

    #[test]
    fn eval_at_zero_and_pole() {
        let f = rf(&[0, 1], &[-1, 1]);
        assert_eq!(f.eval(&Rat::zero()).unwrap(), Rat::zero());
        let err = f.eval(&Rat::one()).unwrap_err();
        assert!(err.to_string().contains('1'));
    }

    #[test]
    fn negative_powers_of_t() {
        let f = RatFunc::t_pow(-3);
        assert_eq!(f.denom_q(), q(&[0, 0, 0, 1]));
        assert_eq!(&f * &RatFunc::t_pow(3), RatFunc::one());
    }
}
