//! Reference values of `1 - rho_n = g_n / h_n` for `1 <= n <= 8`, kept in
//! their factored form and expanded on load.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactalg::{PolyQ, RatFunc, ZPoly};

/// `(n, g_n, h_n)` as factored expressions in `p`.
const FACTORED: [(usize, &str, &str); 8] = [
    (
        1,
        r"(p^2 + 1)^2",
        r"3(p^4 + p^3 + p^2 + p + 1)",
    ),
    (
        2,
        r"p^9 - p^8 + p^6 - p^4 + p^3 + p^2 - 2p + 1",
        r"3(p^6 + p^3 + 1)(p^4 + 1)(p^2 + 1)",
    ),
    (
        3,
        r"\left(3 p^{26} + p^{24} + p^{23} + 4 p^{22} - 3 p^{21} + 3 p^{20} + 2 p^{19} + 2 p^{18} - p^{17} + p^{14} + p^{13} - 2 p^{12} + 3 p^{11} + 3 p^{7}\right) \left(p^{2} + 1\right) \left(p + 1\right)^{2} \left(p - 1\right)^{4}",
        r"9 \left(p^{13} - 1\right) \left(p^{7} + 1\right) \left(p^{7} - 1\right) \left(p^{6} + 1\right) \left(p^{5} - 1\right) \left(p^{3} + 1\right) \left(p^{3} - 1\right)",
    ),
    (
        4,
        r"\left(p^{46} + 3 p^{41} + p^{40} - p^{39} + p^{37} + p^{36} + p^{35} - 3 p^{34} + 3 p^{27} - p^{26} + p^{25} + p^{19}\right) \left(p^{2} + 1\right) \left(p + 1\right)^{2} \left(p - 1\right)^{4}",
        r"9 \left(p^{19} - 1\right) \left(p^{17} - 1\right) \left(p^{10} + 1\right) \left(p^{9} + 1\right) \left(p^{9} - 1\right) \left(p^{7} - 1\right) \left(p^{5} + 1\right)",
    ),
    (
        5,
        r"\left(3 p^{91} - 3 p^{90} + 3 p^{88} + 3 p^{85} - 3 p^{84} + 3 p^{82} - 3 p^{81} + 3 p^{79} + 3 p^{78} + 3 p^{76} - 3 p^{75} + 3 p^{73} - 2 p^{72} + p^{71} + 4 p^{70} - 3 p^{69} + 3 p^{67} - 3 p^{66} + 3 p^{64} - 3 p^{62} + 3 p^{61} + 3 p^{59} + 3 p^{58} - 3 p^{56} + 3 p^{55} - 3 p^{53} + 3 p^{52} + 3 p^{49} - 3 p^{47} + 3 p^{46} - 3 p^{44} + 3 p^{43} - 3 p^{41} + 3 p^{40} - 3 p^{38} + 3 p^{37}\right) \left(p^{5} - 1\right) \left(p^{2} + 1\right) \left(p + 1\right)^{2} \left(p - 1\right)^{4}",
        r"27 \left(p^{27} - 1\right) \left(p^{25} - 1\right) \left(p^{23} - 1\right) \left(p^{14} + 1\right) \left(p^{13} + 1\right) \left(p^{13} - 1\right) \left(p^{12} + 1\right) \left(p^{7} + 1\right) \left(p^{7} - 1\right) \left(p^{6} + 1\right)",
    ),
    (
        6,
        r"\left(3 p^{105} + p^{97} + p^{96} + p^{95} - 3 p^{93} + 3 p^{81}\right) \left(p + 1\right)^{2} \left(p - 1\right)^{7}",
        r"27 \left(p^{31} - 1\right) \left(p^{24} - p^{23} + p^{19} - p^{18} + p^{17} - p^{16} + p^{14} - p^{13} + p^{12} - p^{11} + p^{10} - p^{8} + p^{7} - p^{6} + p^{5} - p + 1\right) \left(p^{20} - p^{19} + p^{17} - p^{16} + p^{14} - p^{13} + p^{11} - p^{10} + p^{9} - p^{7} + p^{6} - p^{4} + p^{3} - p + 1\right) \left(p^{17} + 1\right) \left(p^{17} - 1\right) \left(p^{16} + 1\right) \left(p^{11} - 1\right) \left(p^{8} + p^{7} - p^{5} - p^{4} - p^{3} + p + 1\right) \left(p^{8} - p^{7} + p^{5} - p^{4} + p^{3} - p + 1\right) \left(p^{8} + 1\right) \left(p^{6} + 1\right) \left(p^{5} + 1\right) \left(p^{5} - 1\right) \left(p^{4} + 1\right) \left(p^{3} + 1\right) \left(p^{3} - 1\right)^{3}",
    ),
    (
        7,
        r"\left(p^{4} + 1\right) \left(p^{2} + 1\right)^{2} \left(p + 1\right)^{4} \left(p - 1\right)^{9} p^{141}",
        r"27 \left(p^{43} - 1\right) \left(p^{41} - 1\right) \left(p^{24} - p^{23} + p^{21} - p^{20} + p^{18} - p^{17} + p^{15} - p^{14} + p^{12} - p^{10} + p^{9} - p^{7} + p^{6} - p^{4} + p^{3} - p + 1\right) \left(p^{22} + 1\right) \left(p^{20} + 1\right) \left(p^{19} + 1\right) \left(p^{19} - 1\right) \left(p^{13} - 1\right) \left(p^{12} + p^{11} - p^{9} - p^{8} + p^{6} - p^{4} - p^{3} + p + 1\right) \left(p^{12} - p^{11} + p^{9} - p^{8} + p^{6} - p^{4} + p^{3} - p + 1\right) \left(p^{11} + 1\right) \left(p^{11} - 1\right) \left(p^{10} + 1\right) \left(p^{8} - p^{7} + p^{5} - p^{4} + p^{3} - p + 1\right) \left(p^{7} + 1\right) \left(p^{5} + 1\right) \left(p^{5} - 1\right) \left(p^{3} - 1\right)^{3}",
    ),
    (
        8,
        r"\left(p^{9} - 1\right) \left(p^{7} - 1\right) \left(p^{4} + 1\right) \left(p^{2} + 1\right)^{2} \left(p + 1\right)^{3} \left(p - 1\right)^{9} p^{219}",
        r"27 \left(p^{53} - 1\right) \left(p^{49} - 1\right) \left(p^{47} - 1\right)\left(p^{40} - p^{39} + p^{35} - p^{34} + p^{30} - p^{28} + p^{25} - p^{23} + p^{20} - p^{17} + p^{15} - p^{12} + p^{10} - p^{6} + p^{5} - p + 1\right) \left(p^{32} - p^{31} + p^{29} - p^{28} + p^{26} - p^{25} + p^{23} - p^{22} + p^{20} - p^{19} + p^{17} - p^{16} + p^{15} - p^{13} + p^{12} - p^{10} + p^{9} - p^{7} + p^{6} - p^{4} + p^{3} - p + 1\right) \left(p^{27} + 1\right) \left(p^{27} - 1\right) \left(p^{26} + 1\right) \left(p^{25} + 1\right) \left(p^{25} - 1\right) \left(p^{24} + 1\right) \left(p^{17} - 1\right) \left(p^{13} + 1\right) \left(p^{13} - 1\right) \left(p^{12} + 1\right) \left(p^{11} - 1\right) \left(p^{6} + 1\right) \left(p^{3} - 1\right)^{3}",
    ),
];

/// `g_n` and `h_n` for one `n`, expanded. The fraction is not necessarily in
/// lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRecord {
    pub n: usize,
    pub g: PolyQ,
    pub h: PolyQ,
}

impl GoldenRecord {
    /// `g / h` in normal form.
    pub fn ratio(&self) -> RatFunc {
        RatFunc::new(&self.g, &self.h).expect("h is nonzero")
    }

    /// The factored source text of `g_n` and `h_n`.
    pub fn factored(&self) -> (&'static str, &'static str) {
        let (_, g, h) = FACTORED[self.n - 1];
        (g, h)
    }
}

/// The record for `n`, or an error outside `1..=8`.
pub fn golden_record(n: usize) -> Result<&'static GoldenRecord> {
    static RECORDS: OnceLock<Vec<GoldenRecord>> = OnceLock::new();
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "reference polynomials exist for 1 <= n <= 8, not n = {n}"
        )));
    }
    let recs = RECORDS.get_or_init(|| {
        FACTORED
            .iter()
            .map(|&(n, g, h)| GoldenRecord {
                n,
                g: PolyQ::from(parse_poly(g).expect("valid reference expression")),
                h: PolyQ::from(parse_poly(h).expect("valid reference expression")),
            })
            .collect()
    });
    Ok(&recs[n - 1])
}

/// Whether `1 - rho` equals `g / h` as elements of Q(t), by cross
/// multiplication.
pub fn matches_record(one_minus_rho: &RatFunc, rec: &GoldenRecord) -> bool {
    let lhs = &one_minus_rho.numer_q() * &rec.h;
    let rhs = &rec.g * &one_minus_rho.denom_q();
    lhs == rhs
}

/// Parses an integer polynomial in one variable written as sums and products
/// of parenthesised factors, e.g. `9 \left(p^{13} - 1\right) (p^2 + 1)^2`.
/// Juxtaposition is multiplication; `\left` and `\right` are ignored.
pub fn parse_poly(src: &str) -> Result<ZPoly> {
    let cleaned = src.replace("\\left", " ").replace("\\right", " ");
    let mut p = Parser {
        s: cleaned.as_bytes(),
        i: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::InvalidArgument(format!("{what} at byte {} of polynomial expression", self.i))
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<ZPoly> {
        let mut acc = ZPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -1
            }
            Some(b'+') => {
                self.i += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.i += 1;
        }
    }

    fn term(&mut self) -> Result<ZPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == b'(' || c == b'p' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<ZPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.i += 1;
        let braced = self.peek() == Some(b'{');
        if braced {
            self.i += 1;
        }
        let e = self
            .number()?
            .to_usize()
            .ok_or_else(|| self.err("exponent too large"))?;
        if braced {
            if self.peek() != Some(b'}') {
                return Err(self.err("expected '}'"));
            }
            self.i += 1;
        }
        let mut r = ZPoly::one();
        for _ in 0..e {
            r = &r * &base;
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<ZPoly> {
        match self.peek() {
            Some(b'p') => {
                self.i += 1;
                Ok(ZPoly::t_pow(1))
            }
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(ZPoly::constant(self.number()?)),
            _ => Err(self.err("expected a factor")),
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.i]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::exactalg::Rat;

    fn at(p: &PolyQ, x: i64) -> Rat {
        p.eval(&Rat::from_integer(x.into()))
    }

    #[test]
    fn parser_handles_powers_and_juxtaposition() {
        let f = parse_poly("3(p^2 + 1)^2 - 2 p^{3}").unwrap();
        assert_eq!(f, ZPoly::from_i64s(&[3, 0, 6, -2, 3]));
        let g = parse_poly(r"\left(p - 1\right)^{2} p").unwrap();
        assert_eq!(g, ZPoly::from_i64s(&[0, 1, -2, 1]));
        assert!(parse_poly("(p + 1").is_err());
        assert!(parse_poly("p +").is_err());
    }

    #[test]
    fn binary_record() {
        let r = golden_record(1).unwrap();
        assert_eq!(r.g, PolyQ::from_i64s(&[1, 0, 2, 0, 1]));
        assert_eq!(r.h, PolyQ::from_i64s(&[3, 3, 3, 3, 3]));
    }

    #[test]
    fn ternary_record_at_two() {
        let r = golden_record(2).unwrap();
        assert_eq!(at(&r.g, 2), Rat::from_integer(313.into()));
        assert_eq!(at(&r.h, 2), Rat::from_integer(18615.into()));
    }

    #[test]
    fn denominators_do_not_vanish_at_primes() {
        let primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
        for n in 1..=8 {
            let r = golden_record(n).unwrap();
            assert!(primes.iter().all(|&p| !at(&r.h, p).is_zero()));
        }
    }

    #[test]
    fn out_of_range() {
        assert!(golden_record(0).is_err());
        assert!(golden_record(9).is_err());
    }
}
