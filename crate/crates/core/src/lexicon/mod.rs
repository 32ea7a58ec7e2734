//! Soft-word splitting and the lexical predicates used by the taxonomy
//! detectors (abbreviation, acronym, plural, numeric suffix, temporary affix).

mod dictionary;

pub use dictionary::{AbbreviationDictionary, DictionaryError};

use serde::{Deserialize, Serialize};

/// The soft-word decomposition of an identifier name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameTokenization {
    pub original: String,
    pub tokens: Vec<String>,
    /// Underscores or dollar signs were present.
    pub had_separators: bool,
}

impl NameTokenization {
    pub fn first(&self) -> Option<&str> {
        self.tokens.first().map(String::as_str)
    }

    pub fn last(&self) -> Option<&str> {
        self.tokens.last().map(String::as_str)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CharClass {
    Upper,
    Lower,
    Digit,
}

fn class_of(c: char) -> CharClass {
    if c.is_ascii_digit() {
        CharClass::Digit
    } else if c.is_uppercase() {
        CharClass::Upper
    } else {
        CharClass::Lower
    }
}

fn is_separator(c: char) -> bool {
    c == '_' || c == '$'
}

/// Splits an identifier into lowercase soft words.
///
/// Boundaries: `_` and `$` separators, lower-to-upper camel transitions, the
/// last capital of an upper-case run followed by a lowercase letter
/// (`HTTPServer` -> `http`, `server`), and letter/digit transitions.
///
/// A name made only of separators yields no tokens.
pub fn split_name(name: &str) -> NameTokenization {
    let mut tokens = Vec::new();
    let had_separators = name.chars().any(is_separator);

    if name.is_ascii() {
        for chunk in name.split(is_separator).filter(|c| !c.is_empty()) {
            split_ascii(chunk.as_bytes(), &mut tokens);
        }
        return NameTokenization {
            original: name.to_string(),
            tokens,
            had_separators,
        };
    }

    for chunk in name.split(is_separator).filter(|c| !c.is_empty()) {
        let chars: Vec<char> = chunk.chars().collect();
        let mut start = 0;
        for i in 1..chars.len() {
            let prev = class_of(chars[i - 1]);
            let cur = class_of(chars[i]);
            let boundary = match (prev, cur) {
                (CharClass::Digit, CharClass::Digit) => false,
                (CharClass::Digit, _) | (_, CharClass::Digit) => true,
                (CharClass::Lower, CharClass::Upper) => true,
                (CharClass::Upper, CharClass::Upper) => chars
                    .get(i + 1)
                    .is_some_and(|&next| class_of(next) == CharClass::Lower),
                _ => false,
            };
            if boundary {
                tokens.push(lower(&chars[start..i]));
                start = i;
            }
        }
        tokens.push(lower(&chars[start..]));
    }

    NameTokenization {
        original: name.to_string(),
        tokens,
        had_separators,
    }
}

/// Same boundaries as the general path, over ASCII bytes.
fn split_ascii(chunk: &[u8], tokens: &mut Vec<String>) {
    let class = |b: u8| {
        if b.is_ascii_digit() {
            CharClass::Digit
        } else if b.is_ascii_uppercase() {
            CharClass::Upper
        } else {
            CharClass::Lower
        }
    };
    let mut start = 0;
    for i in 1..chunk.len() {
        let boundary = match (class(chunk[i - 1]), class(chunk[i])) {
            (CharClass::Digit, CharClass::Digit) => false,
            (CharClass::Digit, _) | (_, CharClass::Digit) => true,
            (CharClass::Lower, CharClass::Upper) => true,
            (CharClass::Upper, CharClass::Upper) => {
                chunk.get(i + 1).is_some_and(|&next| class(next) == CharClass::Lower)
            }
            _ => false,
        };
        if boundary {
            tokens.push(ascii_lower(&chunk[start..i]));
            start = i;
        }
    }
    tokens.push(ascii_lower(&chunk[start..]));
}

fn ascii_lower(bytes: &[u8]) -> String {
    bytes.iter().map(|b| char::from(b.to_ascii_lowercase())).collect()
}

fn lower(chars: &[char]) -> String {
    let mut out = String::with_capacity(chars.len());
    for &c in chars {
        if c.is_ascii() {
            out.push(c.to_ascii_lowercase());
        } else {
            out.extend(c.to_lowercase());
        }
    }
    out
}

/// Lowercased name with `_` and `$` removed.
pub fn normalize_name(name: &str) -> String {
    if name.is_ascii() {
        return name
            .bytes()
            .filter(|&b| b != b'_' && b != b'$')
            .map(|b| char::from(b.to_ascii_lowercase()))
            .collect();
    }
    name.chars()
        .filter(|&c| !is_separator(c))
        .flat_map(char::to_lowercase)
        .collect()
}

/// Ratio limits for the non-dictionary abbreviation rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbbreviationRatios {
    /// Maximum `short/long` length ratio for the strict-prefix rule.
    pub prefix: f64,
    /// Maximum `short/long` length ratio for the subsequence rule.
    pub subsequence: f64,
}

impl Default for AbbreviationRatios {
    fn default() -> Self {
        Self {
            prefix: 0.75,
            subsequence: 0.6,
        }
    }
}

/// Whether `short` is a shortened form of `long`.
///
/// True when the dictionary maps `short` to `long`, when `short` is a strict
/// prefix of `long` within the prefix ratio, or when `short` is a subsequence
/// of `long` starting with the same letter within the subsequence ratio.
/// Case-insensitive and directional.
pub fn is_abbreviation_of(
    short: &str,
    long: &str,
    dict: &AbbreviationDictionary,
    ratios: AbbreviationRatios,
) -> bool {
    let short = short.to_lowercase();
    let long = long.to_lowercase();
    if short.is_empty() || long.is_empty() || short == long {
        return false;
    }
    if dict.maps(&short, &long) {
        return true;
    }
    let short_len = short.chars().count();
    let long_len = long.chars().count();
    if short_len >= long_len {
        return false;
    }
    let ratio = short_len as f64 / long_len as f64;
    if long.starts_with(&short) && ratio <= ratios.prefix {
        return true;
    }
    short.chars().next() == long.chars().next()
        && ratio <= ratios.subsequence
        && is_subsequence(&short, &long)
}

fn is_subsequence(needle: &str, haystack: &str) -> bool {
    let mut hay = haystack.chars();
    needle.chars().all(|c| hay.any(|h| h == c))
}

/// Whether `name` spells the initials of a phrase of at least two words.
pub fn is_acronym_of(name: &str, phrase_tokens: &[String]) -> bool {
    if phrase_tokens.len() < 2 {
        return false;
    }
    let initials: String = phrase_tokens
        .iter()
        .filter_map(|t| t.chars().next())
        .flat_map(char::to_lowercase)
        .collect();
    name.to_lowercase() == initials
}

/// Splits a trailing run of decimal digits (and one `_` before it) off a
/// name. The stem is never empty; names without such a suffix come back
/// unchanged with no number.
pub fn strip_numeric_suffix(name: &str) -> (String, Option<u64>) {
    let digits_start = name
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map(|(i, _)| i);
    let Some(start) = digits_start else {
        return (name.to_string(), None);
    };
    let Ok(number) = name[start..].parse::<u64>() else {
        return (name.to_string(), None);
    };
    let stem = name[..start].strip_suffix('_').unwrap_or(&name[..start]);
    if stem.is_empty() {
        return (name.to_string(), None);
    }
    (stem.to_string(), Some(number))
}

/// Whether `plural` is `singular` with its final soft word pluralized by
/// one of: append `s`, append `es`, or `y` -> `ies`. All earlier soft words
/// must match.
pub fn is_plural_of(singular: &str, plural: &str) -> bool {
    let s = split_name(singular).tokens;
    let p = split_name(plural).tokens;
    if s.is_empty() || s.len() != p.len() {
        return false;
    }
    let n = s.len() - 1;
    if s[..n] != p[..n] {
        return false;
    }
    let (base, pl) = (&s[n], &p[n]);
    if !base.chars().next().is_some_and(char::is_alphabetic) {
        return false;
    }
    if let Some(stem) = pl.strip_suffix("ies") {
        if base.strip_suffix('y') == Some(stem) {
            return true;
        }
    }
    if let Some(stem) = pl.strip_suffix("es") {
        if stem == base {
            return true;
        }
    }
    pl.strip_suffix('s') == Some(base.as_str())
}

const TEMPORARY_MARKERS: [&str; 3] = ["tmp", "temp", "temporary"];

/// Detects a `tmp`/`temp`/`temporary` soft word. Returns the name with the
/// first such word removed, re-joined in camel case (empty when nothing else
/// remains).
pub fn has_temporary_affix(name: &str) -> (bool, String) {
    let tokens = split_name(name).tokens;
    let Some(pos) = tokens
        .iter()
        .position(|t| TEMPORARY_MARKERS.contains(&t.as_str()))
    else {
        return (false, name.to_string());
    };
    let rest: Vec<&str> = tokens
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, t)| t.as_str())
        .collect();
    (true, join_camel(&rest))
}

/// Joins lowercase soft words as lower camel case.
pub fn join_camel(tokens: &[&str]) -> String {
    let mut out = String::new();
    for (i, token) in tokens.iter().enumerate() {
        if i == 0 {
            out.push_str(token);
            continue;
        }
        let mut chars = token.chars();
        if let Some(first) = chars.next() {
            out.extend(first.to_uppercase());
            out.push_str(chars.as_str());
        }
    }
    out
}
