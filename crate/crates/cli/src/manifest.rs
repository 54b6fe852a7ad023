//! Flat `key = value` run manifests. `[section]` headers and `#`/`;`
//! comments are ignored; later keys overwrite earlier ones.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Default, Clone)]
pub struct Manifest {
    values: BTreeMap<String, String>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') || line.starts_with('[') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("manifest line {}: expected `key = value`", no + 1)))?;
            let key = key.trim().replace('_', "-");
            if key.is_empty() {
                return Err(CliError::usage(format!("manifest line {}: empty key", no + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?;
        Self::parse(&text)
    }

    /// Flag value if given, otherwise the manifest entry.
    pub fn pick(&self, flag: Option<&String>, key: &str) -> Option<String> {
        flag.cloned().or_else(|| self.values.get(key).cloned())
    }

    pub fn flag(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.values.get(key).map(|v| v.to_ascii_lowercase()) {
            None => Ok(false),
            Some(v) if matches!(v.as_str(), "true" | "yes" | "1" | "on") => Ok(true),
            Some(v) if matches!(v.as_str(), "false" | "no" | "0" | "off") => Ok(false),
            Some(v) => Err(CliError::usage(format!("manifest key `{key}`: expected a boolean, got `{v}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_pairs() {
        let m = Manifest::parse("# run\n[solve]\nmethod = als\nmu=auto\n; note\nfull_scale = yes\n").unwrap();
        assert_eq!(m.pick(None, "method").as_deref(), Some("als"));
        assert_eq!(m.pick(Some(&"ils".to_string()), "method").as_deref(), Some("ils"));
        assert!(m.flag(false, "full-scale").unwrap());
        assert!(!m.flag(false, "desk-scale").unwrap());
        assert!(Manifest::parse("method als").is_err());
        assert!(Manifest::parse("full-scale = maybe").unwrap().flag(false, "full-scale").is_err());
    }
}
