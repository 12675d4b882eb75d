//! Plain-text cache of generating-tuple counts, one `group_id k count` line
//! per entry.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use wreathgen_core::BigCount;

#[derive(Debug, Default)]
pub struct EulerianCache {
    path: Option<PathBuf>,
    entries: BTreeMap<(String, usize), BigCount>,
    dirty: bool,
}

impl EulerianCache {
    /// An empty cache that is never written.
    pub fn in_memory() -> Self {
        EulerianCache::default()
    }

    /// Loads `path` if it exists. Malformed lines are an error.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache = EulerianCache {
            path: Some(path.to_path_buf()),
            ..EulerianCache::default()
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parsed = parse_line(line).ok_or_else(|| {
                io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("{}:{}: expected 'group_id k count'", path.display(), i + 1),
                )
            })?;
            cache.entries.insert((parsed.0, parsed.1), parsed.2);
        }
        Ok(cache)
    }

    pub fn get(&self, group: &str, k: usize) -> Option<&BigCount> {
        self.entries.get(&(group.to_string(), k))
    }

    pub fn insert(&mut self, group: &str, k: usize, count: BigCount) {
        self.entries.insert((group.to_string(), k), count);
        self.dirty = true;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes the cache back if it changed and has a path.
    pub fn save(&mut self) -> io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        let mut text = String::new();
        for ((group, k), count) in &self.entries {
            text.push_str(&format!("{group} {k} {count}\n"));
        }
        fs::write(path, text)?;
        self.dirty = false;
        Ok(())
    }
}

/// Group ids may not contain whitespace, so the line splits into three fields.
fn parse_line(line: &str) -> Option<(String, usize, BigCount)> {
    let mut fields = line.split_whitespace();
    let group = fields.next()?.to_string();
    let k = fields.next()?.parse().ok()?;
    let count = BigCount::parse_decimal(fields.next()?)?;
    fields.next().is_none().then_some((group, k, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("eulerian.txt");
        let mut cache = EulerianCache::open(&path).unwrap();
        assert!(cache.is_empty());
        cache.insert("A5", 2, BigCount::from(2280u64));
        cache.save().unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "A5 2 2280\n");
        let again = EulerianCache::open(&path).unwrap();
        assert_eq!(again.get("A5", 2), Some(&BigCount::from(2280u64)));
    }

    #[test]
    fn malformed_line_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        fs::write(&path, "A5 two 2280\n").unwrap();
        assert!(EulerianCache::open(&path).is_err());
    }
}
