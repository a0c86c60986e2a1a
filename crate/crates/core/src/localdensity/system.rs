//! The linear relations among the lifting probabilities.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::unknowns::{Stage, UnknownId};
use super::xi::{xi_table, XiTable};
use crate::error::{Error, Result};
use crate::exactalg::RatFunc;
use crate::fforacle::binom;

/// `subject = constant + Σ coeffs[u] · u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub subject: UnknownId,
    pub stage: Stage,
    pub constant: RatFunc,
    pub coeffs: BTreeMap<UnknownId, RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub n: usize,
    pub rows: Vec<Row>,
    pub forced_zeros: BTreeSet<UnknownId>,
}

impl LinearSystem {
    pub fn row(&self, u: UnknownId) -> Option<&Row> {
        self.rows.iter().find(|r| r.subject == u)
    }

    pub fn live(&self) -> impl Iterator<Item = UnknownId> + '_ {
        self.rows.iter().map(|r| r.subject)
    }
}

/// Whether `u` has a defining relation for forms in `n + 1` variables.
pub fn is_defined(n: usize, u: UnknownId) -> bool {
    use UnknownId::*;
    let n = n as i64;
    match u {
        Rho => true,
        RhoCond(j) => j as i64 <= n + 1,
        Sigma(i) | SigmaPrime(i) => i as i64 <= n,
        SigmaCond(i, k) => i as i64 <= n && k as i64 <= n - i as i64 + 1,
        Tau(i, j) | TauPrime(i, j) => (i + j) as i64 <= n,
        Theta(i, j, k) => (i + j + k) as i64 <= n,
    }
}

/// Unknowns that vanish because every solution would be divisible by p.
pub fn is_structural_zero(n: usize, u: UnknownId) -> bool {
    use UnknownId::*;
    match u {
        Sigma(i) => i as usize == n + 1,
        Tau(i, j) => (i + j) as usize == n + 1,
        Theta(i, j, k) => (i + j + k) as usize == n + 1,
        _ => false,
    }
}

fn c2(m: usize) -> u64 {
    binom(m as u64, 2)
}

fn c3(m: usize) -> u64 {
    binom(m as u64, 3)
}

/// `1 / t^e`.
fn inv(e: u64) -> RatFunc {
    RatFunc::inv_t_pow(e)
}

/// `1 - 1 / t^e`.
fn om(e: u64) -> RatFunc {
    &RatFunc::one() - &inv(e)
}

struct Builder {
    n: usize,
    xi: HashMap<(usize, Option<usize>), XiTable>,
}

struct RowDraft {
    subject: UnknownId,
    constant: RatFunc,
    coeffs: BTreeMap<UnknownId, RatFunc>,
}

impl RowDraft {
    fn new(subject: UnknownId, constant: RatFunc) -> Self {
        RowDraft {
            subject,
            constant,
            coeffs: BTreeMap::new(),
        }
    }

    fn term(&mut self, n: usize, c: RatFunc, u: UnknownId) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if is_defined(n, u) {
            let e = self.coeffs.entry(u).or_insert_with(RatFunc::zero);
            *e = &*e + &c;
            if e.is_zero() {
                self.coeffs.remove(&u);
            }
            return Ok(());
        }
        if is_structural_zero(n, u) {
            return Ok(());
        }
        Err(Error::Defect(format!(
            "row for {} references {u}, which has no relation for n = {n}",
            self.subject
        )))
    }
}

impl Builder {
    fn xi(&mut self, m: usize, cond: Option<usize>) -> Result<[RatFunc; 4]> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.xi.entry((m, cond)) {
            e.insert(xi_table(m, cond)?);
        }
        Ok(self.xi[&(m, cond)].values.clone())
    }

    fn row(&mut self, u: UnknownId) -> Result<RowDraft> {
        use UnknownId::*;
        let n = self.n;
        let idx = |x: u8| x as usize;
        let draft = match u {
            Rho => {
                let x = self.xi(n, None)?;
                let mut d = RowDraft::new(u, x[0].clone());
                for i in 1..=3u8 {
                    d.term(n, x[idx(i)].clone(), Sigma(i))?;
                }
                d
            }
            RhoCond(j) => {
                let x = self.xi(n, Some(idx(j)))?;
                let mut d = RowDraft::new(u, x[0].clone());
                for i in 1..=3u8 {
                    d.term(n, x[idx(i)].clone(), Sigma(i))?;
                }
                d
            }
            Sigma(i) => {
                let m = n - idx(i);
                let b = c3(m + 3);
                let x = self.xi(m, None)?;
                let mut d = RowDraft::new(u, &om(b) * &x[0]);
                for j in 1..=3u8 {
                    d.term(n, &om(b) * &x[idx(j)], Tau(i, j))?;
                }
                d.term(n, inv(b), SigmaPrime(i))?;
                d
            }
            SigmaCond(i, k) => {
                let x = self.xi(n - idx(i), Some(idx(k)))?;
                let mut d = RowDraft::new(u, x[0].clone());
                for j in 1..=3u8 {
                    d.term(n, x[idx(j)].clone(), Tau(i, j))?;
                }
                d
            }
            SigmaPrime(i) => {
                let m = n - idx(i);
                let a = i as u64 * c2(m + 2);
                let b = c3(m + 3);
                let x = self.xi(m, None)?;
                let ab = &inv(a) * &om(b);
                let mut d = RowDraft::new(u, &om(a) + &(&ab * &x[0]));
                for j in 1..=3u8 {
                    d.term(n, &ab * &x[idx(j)], SigmaCond(j, i))?;
                }
                d.term(n, inv(a + b), RhoCond(i))?;
                d
            }
            Tau(i, j) => {
                let m = n - idx(i) - idx(j);
                let a = i as u64 * c2(m + 2);
                let b = c3(m + 3);
                let x = self.xi(m, None)?;
                let ab = &inv(a) * &om(b);
                let mut d = RowDraft::new(u, &om(a) + &(&ab * &x[0]));
                for k in 1..=3u8 {
                    d.term(n, &ab * &x[idx(k)], Theta(i, j, k))?;
                }
                d.term(n, inv(a + b), TauPrime(i, j))?;
                d
            }
            TauPrime(i, j) => {
                let m = n - idx(i) - idx(j);
                let c = (i as u64) * (j as u64) * (m as u64 + 1) + j as u64 * c2(m + 2);
                let x = self.xi(n - idx(j), Some(idx(i)))?;
                let mut d = RowDraft::new(u, &om(c) + &(&inv(c) * &x[0]));
                for k in 1..=3u8 {
                    d.term(n, &inv(c) * &x[idx(k)], SigmaCond(k, j))?;
                }
                d
            }
            Theta(i, j, k) => {
                let m = n - idx(i) - idx(j) - idx(k);
                let c = (i as u64) * (j as u64) * (m as u64 + 1) + j as u64 * c2(m + 2);
                let x = self.xi(n - idx(j) - idx(k), Some(idx(i)))?;
                let mut d = RowDraft::new(u, &om(c) + &(&inv(c) * &x[0]));
                for l in 1..=3u8 {
                    d.term(n, &inv(c) * &x[idx(l)], Theta(j, k, l))?;
                }
                d
            }
        };
        Ok(draft)
    }
}

/// Assembles one defining row per live unknown; every other unknown is
/// recorded as forced to zero.
pub fn build_system(n: usize) -> Result<LinearSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("the system needs n >= 1".into()));
    }
    let mut b = Builder {
        n,
        xi: HashMap::new(),
    };
    let mut rows = Vec::new();
    let mut forced_zeros = BTreeSet::new();
    for u in UnknownId::all() {
        if !is_defined(n, u) {
            forced_zeros.insert(u);
            continue;
        }
        let d = b.row(u)?;
        rows.push(Row {
            subject: d.subject,
            stage: u.stage(),
            constant: d.constant,
            coeffs: d.coeffs,
        });
    }
    Ok(LinearSystem {
        n,
        rows,
        forced_zeros,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use UnknownId::*;

    #[test]
    fn every_unknown_accounted_for_once() {
        for n in 1..=10 {
            let sys = build_system(n).unwrap();
            let live: BTreeSet<_> = sys.live().collect();
            assert_eq!(live.len(), sys.rows.len());
            assert!(live.is_disjoint(&sys.forced_zeros));
            assert_eq!(live.len() + sys.forced_zeros.len(), 64);
            for r in &sys.rows {
                assert!(r.coeffs.keys().all(|u| !sys.forced_zeros.contains(u)));
            }
        }
    }

    #[test]
    fn forced_zeros_for_ternary_forms() {
        let sys = build_system(2).unwrap();
        let z = &sys.forced_zeros;
        assert!(z.contains(&Sigma(3)));
        assert!(z.contains(&Tau(1, 2)) && z.contains(&Tau(2, 1)));
        assert!(!z.contains(&Tau(1, 1)));
        assert!((1..=3).all(|i| (1..=3).all(|j| (1..=3).all(|k| z.contains(&Theta(i, j, k))))));
    }

    #[test]
    fn binary_forms_system() {
        let sys = build_system(1).unwrap();
        let live: Vec<_> = sys.live().collect();
        assert_eq!(live, vec![Rho, RhoCond(1), RhoCond(2), Sigma(1), SigmaPrime(1), SigmaCond(1, 1)]);
        // sigma^(1)_1 = tau_11 = 0
        let r = sys.row(SigmaCond(1, 1)).unwrap();
        assert!(r.constant.is_zero() && r.coeffs.is_empty());
        // sigma'_1 = 1 - 1/t + rho^(1) / t^2
        let r = sys.row(SigmaPrime(1)).unwrap();
        assert_eq!(r.constant, &RatFunc::one() - &RatFunc::t_pow(-1));
        assert_eq!(r.coeffs[&RhoCond(1)], RatFunc::t_pow(-2));
        assert_eq!(r.coeffs.len(), 2);
    }

    #[test]
    fn nothing_forced_from_nine_variables_up() {
        assert!(build_system(9).unwrap().forced_zeros.is_empty());
    }

    #[test]
    fn zero_rejected() {
        assert!(build_system(0).is_err());
    }
}
