//! Probabilities that a random nonzero cubic form over F_q has factorization
//! type 0, 1, 2 or 3, optionally conditioned on the point, line or plane
//! condition, as rational functions of q.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{PolyQ, RatFunc};
use crate::fforacle::binom;

/// `xi[i]` is the probability of type `i`; the entries sum to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiTable {
    pub n: usize,
    pub condition: Option<usize>,
    pub values: [RatFunc; 4],
}

impl XiTable {
    pub fn get(&self, i: usize) -> &RatFunc {
        &self.values[i]
    }
}

fn poly(terms: &[(i64, usize)]) -> PolyQ {
    let deg = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let mut c = vec![0i64; deg + 1];
    for &(a, e) in terms {
        c[e] += a;
    }
    PolyQ::from_i64s(&c)
}

fn frac(num: PolyQ, den: PolyQ) -> RatFunc {
    RatFunc::new(&num, &den).expect("nonzero denominator")
}

/// `t^e - 1`.
fn tm1(e: usize) -> PolyQ {
    poly(&[(1, e), (-1, 0)])
}

/// One variable: every nonzero form `a x_0^3` is a triple hyperplane.
fn base_case() -> [RatFunc; 4] {
    [RatFunc::zero(), RatFunc::one(), RatFunc::zero(), RatFunc::zero()]
}

pub fn xi_table(n: usize, condition: Option<usize>) -> Result<XiTable> {
    if let Some(j) = condition {
        if !(1..=3).contains(&j) || j > n + 1 {
            return Err(Error::InvalidArgument(format!(
                "condition ({j}) needs at least {j} variables, have {}",
                n + 1
            )));
        }
    }
    let values = if n == 0 {
        base_case()
    } else {
        let c = binom(n as u64 + 3, 3) as usize;
        let [x1, x2, x3] = match condition {
            None => unconditioned(n, c),
            Some(1) => point_condition(n, c),
            Some(2) => line_condition(n, c),
            Some(_) => plane_condition(n, c),
        };
        let x0 = &(&(&RatFunc::one() - &x1) - &x2) - &x3;
        [x0, x1, x2, x3]
    };
    Ok(XiTable {
        n,
        condition,
        values,
    })
}

fn unconditioned(n: usize, c: usize) -> [RatFunc; 3] {
    let den = tm1(c);
    let x1 = frac(tm1(n + 1), den.clone());
    let x2 = frac(
        poly(&[(1, 2 * n + 2), (-1, n + 2), (-1, n + 1), (1, 1)]),
        &den * &PolyQ::from_i64s(&[3]),
    );
    let x3 = frac(
        poly(&[
            (1, 3 * n + 3),
            (-1, 2 * n + 3),
            (-1, 2 * n + 4),
            (-1, 2 * n + 2),
            (1, n + 4),
            (1, n + 2),
            (1, n + 3),
            (-1, 3),
        ]),
        &den * &PolyQ::from_i64s(&[3, 3, 3]),
    );
    [x1, x2, x3]
}

fn point_condition(n: usize, c: usize) -> [RatFunc; 3] {
    let d1 = poly(&[(1, c - n - 1)]);
    let x1 = frac(PolyQ::one(), d1.clone());
    let x2 = frac(
        &PolyQ::from_i64s(&[1, 1]) * &tm1(n),
        &d1 * &PolyQ::from_i64s(&[3]),
    );
    let x3 = frac(
        poly(&[(1, 2 * n - 1), (-1, n - 1), (-1, n), (1, 0)]),
        poly(&[(3, c - n - 2)]),
    );
    [x1, x2, x3]
}

fn line_condition(n: usize, c: usize) -> [RatFunc; 3] {
    let d = poly(&[(1, c - 2 * n - 2)]);
    [
        RatFunc::zero(),
        frac(PolyQ::one(), d.clone()),
        frac(tm1(n - 1), d),
    ]
}

fn plane_condition(n: usize, c: usize) -> [RatFunc; 3] {
    [
        RatFunc::zero(),
        RatFunc::zero(),
        frac(PolyQ::one(), poly(&[(1, c - 3 * n - 4)])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;

    fn at(f: &RatFunc, t: i64) -> Rat {
        f.eval(&Rat::from_integer(t.into())).unwrap()
    }

    #[test]
    fn base_cases() {
        let x = xi_table(0, None).unwrap();
        assert!(x.values[1].is_one());
        let x = xi_table(0, Some(1)).unwrap();
        assert!(x.values[1].is_one());
        assert!(x.values[2].is_zero());
        assert!(xi_table(0, Some(2)).is_err());
    }

    #[test]
    fn binary_forms_have_no_type_three() {
        assert!(xi_table(1, None).unwrap().values[3].is_zero());
        assert!(xi_table(1, Some(1)).unwrap().values[3].is_zero());
    }

    #[test]
    fn ternary_type_three_at_two() {
        let x = xi_table(2, None).unwrap();
        assert_eq!(at(&x.values[3], 2), Rat::new(8.into(), 1023.into()));
    }

    #[test]
    fn binary_type_zero() {
        // p(2p+1) / (3(p^2+1))
        let x = xi_table(1, None).unwrap();
        let want = RatFunc::new(&PolyQ::from_i64s(&[0, 1, 2]), &PolyQ::from_i64s(&[3, 0, 3])).unwrap();
        assert_eq!(x.values[0], want);
    }

    #[test]
    fn rows_sum_to_one() {
        for n in 0..=12 {
            for cond in [None, Some(1), Some(2), Some(3)] {
                let Ok(x) = xi_table(n, cond) else { continue };
                let s = x.values.iter().fold(RatFunc::zero(), |a, v| &a + v);
                assert!(s.is_one(), "n = {n}, condition {cond:?}");
            }
        }
    }

    #[test]
    fn conditioned_types_below_condition_vanish() {
        for n in 1..=6 {
            for j in 2..=3.min(n + 1) {
                let x = xi_table(n, Some(j)).unwrap();
                for i in 1..j {
                    assert!(x.values[i].is_zero());
                }
            }
        }
    }
}
