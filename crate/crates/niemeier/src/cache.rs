//! Line-delimited disk cache of theta coefficients, keyed by
//! (form name, degree, index matrix). Corrupt or unversioned lines are
//! ignored and recomputed; writes go through a temp file and an atomic
//! rename so a crashed run never leaves a truncated cache behind.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num::BigInt;

use crate::error::{Error, Result};
use crate::fourier::{FourierExpansion, IndexMatrix};

/// Bumped whenever the line format or coefficient semantics change;
/// caches with a different version header are ignored wholesale.
pub const SCHEMA_VERSION: u32 = 1;

fn header() -> String {
    format!("# niemeier coefficient cache v{SCHEMA_VERSION}")
}

/// In-memory mirror of one cache file.
pub struct CoeffCache {
    path: PathBuf,
    entries: BTreeMap<(String, u8, [i64; 6]), BigInt>,
    dirty: bool,
}

impl CoeffCache {
    /// Open (or create on first flush) the cache file inside `dir`.
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join(format!("coefficients-v{SCHEMA_VERSION}.txt"));
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(&path)?;
            let mut lines = text.lines();
            if lines.next() == Some(header().as_str()) {
                for line in lines {
                    if let Some(entry) = parse_line(line) {
                        entries.insert(entry.0, entry.1);
                    }
                }
            }
        }
        Ok(CoeffCache { path, entries, dirty: false })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reassemble an expansion if every index of `box_` is cached.
    pub fn expansion(
        &self,
        name: &str,
        degree: u8,
        weight: i64,
        box_: &[IndexMatrix],
    ) -> Option<FourierExpansion> {
        let mut entries = Vec::with_capacity(box_.len());
        for t in box_ {
            let key = (name.to_string(), degree, t.encode6());
            let v = self.entries.get(&key)?;
            entries.push((*t, crate::exactmath::Rational::from(v.clone())));
        }
        Some(FourierExpansion::from_entries(degree, weight, entries))
    }

    /// Record every integral coefficient of `f`; non-integral values are
    /// never cached.
    pub fn insert_expansion(&mut self, name: &str, f: &FourierExpansion) {
        for (t, v) in f.entries() {
            if v.is_integer() {
                let key = (name.to_string(), f.degree(), t.encode6());
                if self.entries.insert(key, v.to_integer()) != Some(v.to_integer()) {
                    self.dirty = true;
                }
            }
        }
    }

    /// Write the cache back via temp-file-then-rename; a no-op when
    /// nothing changed since the last flush.
    pub fn flush(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let tmp = self.path.with_extension("txt.tmp");
        {
            let mut out = std::fs::File::create(&tmp)?;
            writeln!(out, "{}", header())?;
            for ((name, degree, e), v) in &self.entries {
                writeln!(
                    out,
                    "{name} {degree} {},{},{},{},{},{} {v}",
                    e[0], e[1], e[2], e[3], e[4], e[5]
                )?;
            }
            out.sync_all()?;
        }
        std::fs::rename(&tmp, &self.path)
            .map_err(|e| Error::Cache(format!("atomic rename failed: {e}")))?;
        self.dirty = false;
        Ok(())
    }
}

fn parse_line(line: &str) -> Option<((String, u8, [i64; 6]), BigInt)> {
    let mut parts = line.split_whitespace();
    let name = parts.next()?.to_string();
    let degree: u8 = parts.next()?.parse().ok()?;
    if !(1..=3).contains(&degree) {
        return None;
    }
    let mut e = [0i64; 6];
    let coords: Vec<&str> = parts.next()?.split(',').collect();
    if coords.len() != 6 {
        return None;
    }
    for (slot, c) in e.iter_mut().zip(coords) {
        *slot = c.parse().ok()?;
    }
    let value = BigInt::from_str(parts.next()?).ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(((name, degree, e), value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn sample() -> FourierExpansion {
        FourierExpansion::from_entries(
            2,
            12,
            [
                (IndexMatrix::d2(0, 0, 0), int(1)),
                (IndexMatrix::d2(1, 1, 1), int(27600)),
                (IndexMatrix::d2(2, -1, 1), int(-42)),
            ],
        )
    }

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let f = sample();
        let box_: Vec<IndexMatrix> = f.covered().copied().collect();
        {
            let mut cache = CoeffCache::open(dir.path()).unwrap();
            assert!(cache.expansion("delta", 2, 12, &box_).is_none());
            cache.insert_expansion("delta", &f);
            cache.flush().unwrap();
        }
        let cache = CoeffCache::open(dir.path()).unwrap();
        assert_eq!(cache.len(), 3);
        let g = cache.expansion("delta", 2, 12, &box_).unwrap();
        for t in &box_ {
            assert_eq!(g.get(t).unwrap(), f.get(t).unwrap());
        }
        // A partial box hit is not served.
        let bigger = [box_[0], IndexMatrix::d2(5, 0, 5)];
        assert!(cache.expansion("delta", 2, 12, &bigger).is_none());
    }

    #[test]
    fn corrupt_lines_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(format!("coefficients-v{SCHEMA_VERSION}.txt"));
        std::fs::write(
            &path,
            format!(
                "{}\nalpha 3 1,1,1,1,1,1 4177536\nnot a line\nalpha 9 1,1,1,1,1,1 2\nalpha 3 1,1,1 5\nalpha 3 0,0,0,0,0,0 16777216 extra\n",
                header()
            ),
        )
        .unwrap();
        let cache = CoeffCache::open(dir.path()).unwrap();
        assert_eq!(cache.len(), 1);
        let t = IndexMatrix::d3(1, 1, 1, 1, 1, 1);
        let got = cache.expansion("alpha", 3, 12, &[t]).unwrap();
        assert_eq!(*got.get(&t).unwrap(), int(4177536));
    }

    #[test]
    fn wrong_schema_version_is_discarded() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(format!("coefficients-v{SCHEMA_VERSION}.txt"));
        std::fs::write(&path, "# niemeier coefficient cache v0\nalpha 3 1,1,1,1,1,1 7\n")
            .unwrap();
        let cache = CoeffCache::open(dir.path()).unwrap();
        assert!(cache.is_empty());
    }
}
