//! Versioned JSON reports and the on-disk classification cache.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Bumped whenever a serialized report or witness changes shape.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the cache location.
pub const CACHE_ENV: &str = "PETRIE_CACHE_DIR";

/// `explicit`, else `$PETRIE_CACHE_DIR`, else `$XDG_CACHE_HOME/petrie`, else `~/.cache/petrie`.
pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(dir) = explicit {
        return dir.to_path_buf();
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(xdg).join("petrie");
    }
    std::env::var_os("HOME").map_or_else(|| PathBuf::from(".petrie-cache"), |h| PathBuf::from(h).join(".cache").join("petrie"))
}

/// Reads a cached value, treating missing, unreadable or stale-version files as absent.
pub fn load_cached<T: DeserializeOwned>(path: &Path) -> Option<T> {
    let text = fs::read_to_string(path).ok()?;
    let value: Value = serde_json::from_str(&text).ok()?;
    if value.get("schema_version")?.as_u64()? != u64::from(SCHEMA_VERSION) {
        return None;
    }
    serde_json::from_value(value).ok()
}

/// Writes pretty JSON atomically (temp file + rename).
pub fn store<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidSpec(format!("{}: {e}", path.display()));
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io)?;
    }
    let tmp = path.with_extension("json.tmp");
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    fs::write(&tmp, text + "\n").map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn stale_versions_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("a.json");
        let stale = dir.path().join("b.json");
        store(&good, &json!({"schema_version": SCHEMA_VERSION, "x": 1})).unwrap();
        store(&stale, &json!({"schema_version": 0, "x": 1})).unwrap();
        assert_eq!(load_cached::<Value>(&good).unwrap()["x"], 1);
        assert!(load_cached::<Value>(&stale).is_none());
        assert!(load_cached::<Value>(&dir.path().join("missing.json")).is_none());
    }
}
