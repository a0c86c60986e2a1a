//! Staged exact elimination over Q(t).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::system::LinearSystem;
use super::unknowns::{Stage, UnknownId};
use crate::error::{Error, Result};
use crate::exactalg::RatFunc;

/// Solved lifting probabilities; forced zeros are included with value 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbabilityTable {
    pub n: usize,
    pub solution: BTreeMap<UnknownId, RatFunc>,
}

impl ProbabilityTable {
    pub fn get(&self, u: UnknownId) -> &RatFunc {
        &self.solution[&u]
    }

    pub fn rho(&self) -> &RatFunc {
        self.get(UnknownId::Rho)
    }
}

type SparseRow = BTreeMap<usize, RatFunc>;

/// Solves `Σ_c a[r][c] x_c = b[r]` by Gauss-Jordan elimination. Each pivot is
/// the entry of least total degree among unpivoted rows, ties broken by
/// column and then row index.
fn gauss_jordan(mut rows: Vec<(SparseRow, RatFunc)>, stage: Stage) -> Result<Vec<RatFunc>> {
    let m = rows.len();
    let mut row_col = vec![usize::MAX; m];
    for _ in 0..m {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(r, _)| row_col[*r] == usize::MAX)
            .flat_map(|(r, (a, _))| a.iter().map(move |(&c, v)| (v.size(), c, r)))
            .min();
        let Some((_, c, r)) = best else {
            return Err(Error::Singular(format!("{stage:?}")));
        };
        row_col[r] = c;
        let piv = rows[r].0[&c].recip()?;
        let (a, b) = &mut rows[r];
        for (&cc, v) in a.iter_mut() {
            *v = if cc == c { RatFunc::one() } else { &*v * &piv };
        }
        *b = &*b * &piv;
        let prow = rows[r].clone();
        rows.par_iter_mut().enumerate().for_each(|(k, (a, b))| {
            if k == r {
                return;
            }
            let Some(f) = a.remove(&c) else { return };
            for (&cc, v) in &prow.0 {
                if cc == c {
                    continue;
                }
                let e = a.entry(cc).or_insert_with(RatFunc::zero);
                *e = &*e - &(&f * v);
                if e.is_zero() {
                    a.remove(&cc);
                }
            }
            *b = &*b - &(&f * &prow.1);
        });
    }
    let mut x = vec![RatFunc::zero(); m];
    for (r, (a, b)) in rows.into_iter().enumerate() {
        if a.len() != 1 {
            return Err(Error::Defect(format!("{stage:?} row {r} not reduced")));
        }
        x[row_col[r]] = b;
    }
    Ok(x)
}

/// Solves the theta rows, then the middle rows, then the final rows,
/// substituting earlier stages as constants.
pub fn solve_staged(sys: &LinearSystem) -> Result<ProbabilityTable> {
    let mut solution: BTreeMap<UnknownId, RatFunc> = sys
        .forced_zeros
        .iter()
        .map(|&u| (u, RatFunc::zero()))
        .collect();
    for stage in [Stage::Theta, Stage::Middle, Stage::Final] {
        let rows: Vec<_> = sys.rows.iter().filter(|r| r.stage == stage).collect();
        if rows.is_empty() {
            continue;
        }
        let cols: Vec<UnknownId> = rows.iter().map(|r| r.subject).collect();
        let col_of = |u: &UnknownId| cols.iter().position(|c| c == u);
        let mut mat = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut a = SparseRow::new();
            a.insert(col_of(&row.subject).unwrap(), RatFunc::one());
            let mut b = row.constant.clone();
            for (u, c) in &row.coeffs {
                if let Some(k) = col_of(u) {
                    let e = a.entry(k).or_insert_with(RatFunc::zero);
                    *e = &*e - c;
                    if e.is_zero() {
                        a.remove(&k);
                    }
                } else if let Some(v) = solution.get(u) {
                    b = &b + &(c * v);
                } else {
                    return Err(Error::Defect(format!(
                        "{} row uses {u} before its stage is solved",
                        row.subject
                    )));
                }
            }
            mat.push((a, b));
        }
        let x = gauss_jordan(mat, stage)?;
        solution.extend(cols.into_iter().zip(x));
    }
    Ok(ProbabilityTable {
        n: sys.n,
        solution,
    })
}

/// `subject − constant − Σ coeff · value` for every row; all zero for a
/// correct solution.
pub fn residuals(sys: &LinearSystem, table: &ProbabilityTable) -> Vec<(UnknownId, RatFunc)> {
    sys.rows
        .par_iter()
        .map(|row| {
            let rhs = row
                .coeffs
                .iter()
                .fold(row.constant.clone(), |acc, (u, c)| &acc + &(c * table.get(*u)));
            (row.subject, table.get(row.subject) - &rhs)
        })
        .collect()
}
