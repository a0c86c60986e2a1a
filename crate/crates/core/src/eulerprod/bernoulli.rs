use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::Rat;

static TABLE: Mutex<Vec<Rat>> = Mutex::new(Vec::new());

/// Bernoulli number `B_k` for even `k` (with `B_1 = -1/2` convention in the
/// recurrence `Σ_{j<=m} C(m+1, j) B_j = 0`).
pub fn bernoulli(k: usize) -> Result<Rat> {
    if k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "bernoulli({k}): only even indices are supported"
        )));
    }
    let mut table = TABLE.lock().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(Rat::one());
    }
    while table.len() <= k {
        let m = table.len();
        let mut binom = BigInt::one();
        let mut acc = Rat::zero();
        for (j, b) in table.iter().enumerate() {
            acc += b * Rat::from_integer(binom.clone());
            binom = binom * (m + 1 - j) / (j + 1);
        }
        table.push(-acc / Rat::from_integer(BigInt::from(m + 1)));
    }
    Ok(table[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0).unwrap(), r(1, 1));
        assert_eq!(bernoulli(2).unwrap(), r(1, 6));
        assert_eq!(bernoulli(4).unwrap(), r(-1, 30));
        assert_eq!(bernoulli(10).unwrap(), r(5, 66));
        assert_eq!(bernoulli(12).unwrap(), r(-691, 2730));
        assert_eq!(bernoulli(20).unwrap(), r(-174611, 330));
    }

    #[test]
    fn odd_rejected() {
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(1).is_err());
    }
}
