use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use thiserror::Error;

const DEFAULT_ENTRIES: &str = include_str!("../../data/abbreviations.json");

#[derive(Debug, Error)]
pub enum DictionaryError {
    #[error("cannot read abbreviation dictionary {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed abbreviation dictionary: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("abbreviation `{short}` is not shorter than its expansion `{long}`")]
    NotShorter { short: String, long: String },
}

/// Short form -> long forms, all lowercase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbbreviationDictionary {
    entries: BTreeMap<String, BTreeSet<String>>,
}

impl Default for AbbreviationDictionary {
    fn default() -> Self {
        Self::from_json(DEFAULT_ENTRIES).expect("built-in abbreviation dictionary is valid")
    }
}

impl AbbreviationDictionary {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    /// Parses a `{"short": ["long", ...]}` object.
    pub fn from_json(text: &str) -> Result<Self, DictionaryError> {
        let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(text)?;
        let mut dict = Self::empty();
        for (short, longs) in raw {
            for long in longs {
                dict.insert(&short, &long)?;
            }
        }
        Ok(dict)
    }

    /// Built-in entries extended with the entries of a user file.
    pub fn with_user_file(path: &Path) -> Result<Self, DictionaryError> {
        let text = std::fs::read_to_string(path).map_err(|source| DictionaryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut dict = Self::default();
        dict.merge(Self::from_json(&text)?);
        Ok(dict)
    }

    pub fn insert(&mut self, short: &str, long: &str) -> Result<(), DictionaryError> {
        let short = short.to_lowercase();
        let long = long.to_lowercase();
        if short.chars().count() >= long.chars().count() {
            return Err(DictionaryError::NotShorter { short, long });
        }
        self.entries.entry(short).or_default().insert(long);
        Ok(())
    }

    pub fn merge(&mut self, other: Self) {
        for (short, longs) in other.entries {
            self.entries.entry(short).or_default().extend(longs);
        }
    }

    /// Expects lowercase arguments.
    pub fn maps(&self, short: &str, long: &str) -> bool {
        self.entries.get(short).is_some_and(|l| l.contains(long))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_covers_listing_terms() {
        let dict = AbbreviationDictionary::default();
        assert!(dict.len() >= 50);
        assert!(dict.maps("log", "logger"));
        assert!(dict.maps("conn", "connection"));
        assert!(dict.maps("cust", "customer"));
    }

    #[test]
    fn rejects_non_shortening_entries() {
        let err = AbbreviationDictionary::from_json(r#"{"logger": ["log"]}"#).unwrap_err();
        assert!(matches!(err, DictionaryError::NotShorter { .. }));
    }

    #[test]
    fn malformed_file_is_an_error() {
        assert!(matches!(
            AbbreviationDictionary::from_json("{\"a\": 3}"),
            Err(DictionaryError::Malformed(_))
        ));
    }

    #[test]
    fn user_file_extends_builtin() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dict.json");
        std::fs::write(&path, r#"{"Wrtr": ["WRITER"]}"#).unwrap();
        let dict = AbbreviationDictionary::with_user_file(&path).unwrap();
        assert!(dict.maps("wrtr", "writer"));
        assert!(dict.maps("log", "logger"));
    }
}
