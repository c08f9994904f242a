//! On-disk cache of class ledgers, one JSON file per class and format
//! version. Files of other versions are never read.

use std::fs;
use std::path::{Path, PathBuf};

use crate::engine::SweepOptions;
use crate::enumeration::{refine_chain_with, ClassLedger, LEDGER_FORMAT_VERSION};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct LedgerCache {
    dir: PathBuf,
}

impl LedgerCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Self {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize, m: usize) -> PathBuf {
        self.dir
            .join(format!("ledger-n{n}-m{m}-v{LEDGER_FORMAT_VERSION}.json"))
    }

    /// The cached ledger, or `None` when absent, unreadable or stale.
    pub fn load(&self, n: usize, m: usize) -> Option<ClassLedger> {
        let text = fs::read_to_string(self.path(n, m)).ok()?;
        let ledger: ClassLedger = serde_json::from_str(&text).ok()?;
        (ledger.n == n && ledger.m == m).then_some(ledger)
    }

    pub fn store(&self, ledger: &ClassLedger) -> Result<()> {
        let path = self.path(ledger.n, ledger.m);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, ledger.to_json())?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn ledger(&self, n: usize, m: usize, opts: &SweepOptions) -> Result<ClassLedger> {
        if let Some(ledger) = self.load(n, m) {
            return Ok(ledger);
        }
        let ledger = refine_chain_with(n, m, opts)?;
        self.store(&ledger)?;
        Ok(ledger)
    }
}

/// Through the cache when one is given.
pub fn ledger_for(
    n: usize,
    m: usize,
    cache: Option<&LedgerCache>,
    opts: &SweepOptions,
) -> Result<ClassLedger> {
    match cache {
        Some(c) => c.ledger(n, m, opts),
        None => refine_chain_with(n, m, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stores_and_ignores_stale() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LedgerCache::new(dir.path()).unwrap();
        assert!(cache.load(4, 5).is_none());
        let built = cache.ledger(4, 5, &SweepOptions::default()).unwrap();
        assert!(cache.path(4, 5).exists());
        assert_eq!(cache.load(4, 5).unwrap(), built);

        let stale = dir
            .path()
            .join(format!("ledger-n4-m4-v{}.json", LEDGER_FORMAT_VERSION + 1));
        fs::write(&stale, "{}").unwrap();
        fs::write(cache.path(4, 4), "not json").unwrap();
        assert!(cache.load(4, 4).is_none());
        assert_eq!(
            cache
                .ledger(4, 4, &SweepOptions::default())
                .unwrap()
                .entries
                .len(),
            6
        );
        assert_eq!(fs::read_to_string(stale).unwrap(), "{}");
    }
}
