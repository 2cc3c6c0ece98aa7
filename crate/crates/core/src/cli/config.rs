//! Flat `key=value` configuration files.

use std::collections::BTreeMap;

/// Keys a configuration file may set.
pub const KNOWN_KEYS: &[&str] = &[
    "a", "b", "r1", "r2", "family", "grid-n", "tol", "seed", "format", "out", "suite", "domain", "density",
];

/// Parses `key=value` lines. Blank lines and lines starting with `#` are
/// skipped; later assignments win.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut values = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got {line:?}", n + 1))?;
        let key = key.trim().replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(format!("config line {}: unknown key {key:?}", n + 1));
        }
        values.insert(key, value.trim().to_string());
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_overrides() {
        let cfg = parse_config("# run\na = 2\n\ngrid_n=64\na=3\n").unwrap();
        assert_eq!(cfg["a"], "3");
        assert_eq!(cfg["grid-n"], "64");
    }

    #[test]
    fn rejects_junk() {
        assert!(parse_config("a 2").is_err());
        assert!(parse_config("colour=red").is_err());
    }
}
