//! On-disk cache of solved densities, one JSON file per `n`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{PolyQ, RatFunc};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "CUBIC_DENSITY_CACHE";

/// `1 - rho_n = g / h` in lowest terms, with the leading-term asymptotics
/// `g / h ~ 1 / (gamma p^delta)` when they exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: usize,
    pub g: PolyQ,
    pub h: PolyQ,
    pub gamma: Option<u64>,
    pub delta: Option<u64>,
}

impl CacheRecord {
    pub fn from_rho(n: usize, rho: &RatFunc) -> Self {
        let q = &RatFunc::one() - rho;
        let (gamma, delta) = match super::leading_asymptotics(&q) {
            Ok((g, d)) => (Some(g), Some(d)),
            Err(_) => (None, None),
        };
        CacheRecord {
            n,
            g: q.numer_q(),
            h: q.denom_q(),
            gamma,
            delta,
        }
    }

    pub fn rho(&self) -> Result<RatFunc> {
        let q = RatFunc::new(&self.g, &self.h)
            .map_err(|e| Error::Cache(format!("record for n = {}: {e}", self.n)))?;
        Ok(&RatFunc::one() - &q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityCache {
    dir: PathBuf,
}

impl DensityCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DensityCache { dir: dir.into() }
    }

    /// The directory named by [`CACHE_ENV`], if set and nonempty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("rho_n{n}.json"))
    }

    /// The stored record for `n`, `None` if absent or unreadable.
    pub fn load(&self, n: usize) -> Option<CacheRecord> {
        let text = std::fs::read_to_string(self.path(n)).ok()?;
        let rec: CacheRecord = serde_json::from_str(&text).ok()?;
        (rec.n == n && !rec.h.is_zero()).then_some(rec)
    }

    pub fn store(&self, rec: &CacheRecord) -> Result<()> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let path = self.path(rec.n);
        let text = serde_json::to_string(rec).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        std::fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let rho = RatFunc::new(
            &PolyQ::from_i64s(&[2, 3, 1, 3, 2]),
            &PolyQ::from_i64s(&[3, 3, 3, 3, 3]),
        )
        .unwrap();
        let rec = CacheRecord::from_rho(1, &rho);
        let s = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            s,
            r#"{"n":1,"g":[1,0,2,0,1],"h":[3,3,3,3,3],"gamma":3,"delta":0}"#
        );
        let back: CacheRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back.rho().unwrap(), rho);
    }

    #[test]
    fn store_and_load() {
        let dir = std::env::temp_dir().join(format!("cubic-density-cache-test-{}", std::process::id()));
        let cache = DensityCache::new(&dir);
        assert!(cache.load(3).is_none());
        let rec = CacheRecord::from_rho(3, &RatFunc::one());
        cache.store(&rec).unwrap();
        assert_eq!(cache.load(3), Some(rec));
        std::fs::write(cache.path(4), "not json").unwrap();
        assert!(cache.load(4).is_none());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
