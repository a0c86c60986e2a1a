//! Names of the 64 lifting probabilities.

use std::fmt;

use serde::{Serialize, Serializer};

/// One lifting probability. Indices range over `1..=3`.
///
/// The derived order (variant order, then indices) is the tie-break order
/// used when choosing pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnknownId {
    Rho,
    RhoCond(u8),
    Sigma(u8),
    SigmaPrime(u8),
    /// `SigmaCond(i, k)`: type `i`, condition `(k)` after the first step.
    SigmaCond(u8, u8),
    Tau(u8, u8),
    TauPrime(u8, u8),
    Theta(u8, u8, u8),
}

/// Which elimination stage a row belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Theta,
    Middle,
    Final,
}

impl UnknownId {
    /// All 64 ids in order.
    pub fn all() -> Vec<UnknownId> {
        use UnknownId::*;
        let r = 1..=3u8;
        let mut v = vec![Rho];
        v.extend(r.clone().map(RhoCond));
        v.extend(r.clone().map(Sigma));
        v.extend(r.clone().map(SigmaPrime));
        for i in r.clone() {
            v.extend(r.clone().map(|k| SigmaCond(i, k)));
        }
        for i in r.clone() {
            v.extend(r.clone().map(|j| Tau(i, j)));
        }
        for i in r.clone() {
            v.extend(r.clone().map(|j| TauPrime(i, j)));
        }
        for i in r.clone() {
            for j in r.clone() {
                v.extend(r.clone().map(|k| Theta(i, j, k)));
            }
        }
        v
    }

    pub fn stage(&self) -> Stage {
        use UnknownId::*;
        match self {
            Theta(..) => Stage::Theta,
            SigmaCond(..) | Tau(..) | TauPrime(..) => Stage::Middle,
            Rho | RhoCond(_) | Sigma(_) | SigmaPrime(_) => Stage::Final,
        }
    }
}

impl fmt::Display for UnknownId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use UnknownId::*;
        match *self {
            Rho => write!(f, "rho"),
            RhoCond(j) => write!(f, "rho^({j})"),
            Sigma(i) => write!(f, "sigma_{i}"),
            SigmaPrime(i) => write!(f, "sigma'_{i}"),
            SigmaCond(i, k) => write!(f, "sigma^({k})_{i}"),
            Tau(i, j) => write!(f, "tau_{i}{j}"),
            TauPrime(i, j) => write!(f, "tau'_{i}{j}"),
            Theta(i, j, k) => write!(f, "theta_{i}{j}{k}"),
        }
    }
}

impl Serialize for UnknownId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn sixty_four_distinct_ids() {
        let all = UnknownId::all();
        assert_eq!(all.len(), 64);
        let set: BTreeSet<_> = all.iter().copied().collect();
        assert_eq!(set.len(), 64);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn stage_sizes() {
        let all = UnknownId::all();
        let count = |s| all.iter().filter(|u| u.stage() == s).count();
        assert_eq!(count(Stage::Theta), 27);
        assert_eq!(count(Stage::Middle), 27);
        assert_eq!(count(Stage::Final), 10);
    }

    #[test]
    fn display_names() {
        assert_eq!(UnknownId::SigmaCond(2, 1).to_string(), "sigma^(1)_2");
        assert_eq!(UnknownId::Theta(1, 2, 3).to_string(), "theta_123");
    }
}
