//! Group-level detection for numerically distinguished names.

use std::collections::BTreeMap;

use crate::extract::IdentifierRecord;
use crate::lexicon::strip_numeric_suffix;

use super::{CategoryLabel, Confidence, TaxonomyCategory};

/// A record whose numeric suffix equals its initializer literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueEncoding {
    pub stem: String,
    pub value: u64,
}

pub fn detect_value_encoded(record: &IdentifierRecord) -> Option<ValueEncoding> {
    let (stem, number) = strip_numeric_suffix(&record.name);
    let number = number?;
    let literal = parse_int_literal(record.initializer_literal.as_deref()?)?;
    (literal == number).then_some(ValueEncoding { stem, value: number })
}

/// Sequential numbering over a scope group sharing a stem. Fires when at
/// least two distinct numbers occur, all members share one declared type
/// (or none has a type), and no member is value-encoded.
pub fn detect_sequential_numeric(group: &[&IdentifierRecord]) -> Option<Confidence> {
    let mut numbers = Vec::with_capacity(group.len());
    for record in group {
        numbers.push(strip_numeric_suffix(&record.name).1?);
        if detect_value_encoded(record).is_some() {
            return None;
        }
    }
    numbers.sort_unstable();
    numbers.dedup();
    if numbers.len() < 2 {
        return None;
    }
    let first = group[0].declared_type.as_deref().map(squash);
    if group.iter().any(|r| r.declared_type.as_deref().map(squash) != first) {
        return None;
    }
    Some(if first.is_some() {
        Confidence::High
    } else {
        Confidence::Medium
    })
}

/// Parses a Java integer literal (or a quoted decimal string).
pub fn parse_int_literal(text: &str) -> Option<u64> {
    let text = text.trim();
    if let Some(inner) = text.strip_prefix('"').and_then(|t| t.strip_suffix('"')) {
        return inner.trim().parse().ok();
    }
    let cleaned: String = text.chars().filter(|&c| c != '_').collect();
    let cleaned = cleaned
        .strip_suffix(['l', 'L'])
        .unwrap_or(&cleaned)
        .to_string();
    if let Some(hex) = cleaned.strip_prefix("0x").or_else(|| cleaned.strip_prefix("0X")) {
        return u64::from_str_radix(hex, 16).ok();
    }
    if let Some(bin) = cleaned.strip_prefix("0b").or_else(|| cleaned.strip_prefix("0B")) {
        return u64::from_str_radix(bin, 2).ok();
    }
    if cleaned.len() > 1 && cleaned.starts_with('0') {
        return u64::from_str_radix(&cleaned[1..], 8).ok();
    }
    cleaned.parse().ok()
}

fn squash(ty: &str) -> String {
    ty.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Pairwise labels for every numeric group in the inventory, keyed by
/// canonical record indices.
pub(super) fn group_labels(records: &[IdentifierRecord]) -> BTreeMap<(usize, usize), Vec<CategoryLabel>> {
    type ScopeKey<'a> = (&'a str, Option<&'a str>, Option<&'a str>, String);
    let mut groups: BTreeMap<ScopeKey, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        if let (stem, Some(_)) = strip_numeric_suffix(&r.name) {
            let key = (
                r.file_path.as_str(),
                r.enclosing_class.as_deref(),
                r.enclosing_method.as_deref(),
                stem,
            );
            groups.entry(key).or_default().push(i);
        }
    }

    let mut out: BTreeMap<(usize, usize), Vec<CategoryLabel>> = BTreeMap::new();
    for ((.., stem), members) in groups {
        if members.len() < 2 {
            continue;
        }
        let (encoded, plain): (Vec<usize>, Vec<usize>) = members
            .into_iter()
            .partition(|&i| detect_value_encoded(&records[i]).is_some());

        if encoded.len() >= 2 {
            let rationale = format!("value_encoded: `{stem}` suffixes equal their initializers");
            emit_group(records, &encoded, TaxonomyCategory::NumericValueEncoded, Confidence::High, &rationale, &mut out);
        }
        if plain.len() >= 2 {
            let group: Vec<&IdentifierRecord> = plain.iter().map(|&i| &records[i]).collect();
            if let Some(confidence) = detect_sequential_numeric(&group) {
                let rationale = format!("sequential: `{stem}` numbered {} times", plain.len());
                emit_group(records, &plain, TaxonomyCategory::NumericSequential, confidence, &rationale, &mut out);
            }
        }
    }
    out
}

fn emit_group(
    records: &[IdentifierRecord],
    members: &[usize],
    category: TaxonomyCategory,
    confidence: Confidence,
    rationale: &str,
    out: &mut BTreeMap<(usize, usize), Vec<CategoryLabel>>,
) {
    let ids: Vec<String> = members.iter().map(|&i| records[i].record_id.clone()).collect();
    for (a, &l) in members.iter().enumerate() {
        for &r in &members[a + 1..] {
            let mut label = CategoryLabel::new(&records[l], &records[r], category, confidence, rationale.to_string());
            label.group = Some(ids.clone());
            out.entry((l, r)).or_default().push(label);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{Declaration, IdentifierKind};

    fn field(name: &str, ty: Option<&str>, literal: Option<&str>) -> IdentifierRecord {
        IdentifierRecord::from_declaration(
            "p",
            "A.java",
            Declaration {
                name: name.into(),
                kind: IdentifierKind::Field,
                declared_type: ty.map(Into::into),
                enclosing_class: Some("A".into()),
                enclosing_method: None,
                line: 1,
                column: name.len() as u32,
                initializer_literal: literal.map(Into::into),
                source_expression: literal.map(Into::into),
            },
        )
    }

    #[test]
    fn literal_forms() {
        assert_eq!(parse_int_literal("2"), Some(2));
        assert_eq!(parse_int_literal("1_000L"), Some(1000));
        assert_eq!(parse_int_literal("0x1F"), Some(31));
        assert_eq!(parse_int_literal("0b101"), Some(5));
        assert_eq!(parse_int_literal("010"), Some(8));
        assert_eq!(parse_int_literal("\"3\""), Some(3));
        assert_eq!(parse_int_literal("2.0"), None);
        assert_eq!(parse_int_literal("'a'"), None);
    }

    #[test]
    fn value_encoded_rule() {
        assert!(detect_value_encoded(&field("COUNT_2", Some("int"), Some("2"))).is_some());
        assert!(detect_value_encoded(&field("COUNT_2", Some("int"), Some("5"))).is_none());
        assert!(detect_value_encoded(&field("total", Some("int"), Some("2"))).is_none());
    }

    #[test]
    fn sequential_rule() {
        let c1 = field("cust1", Some("Customer"), None);
        let c2 = field("cust2", Some("Customer"), None);
        let c3 = field("cust3", Some("Customer"), None);
        assert_eq!(detect_sequential_numeric(&[&c1, &c2, &c3]), Some(Confidence::High));
        assert_eq!(detect_sequential_numeric(&[&c1]), None);
        let other = field("cust4", Some("Order"), None);
        assert_eq!(detect_sequential_numeric(&[&c1, &other]), None);
        let dup = field("cust_1", Some("Customer"), None);
        assert_eq!(detect_sequential_numeric(&[&c1, &dup]), None);
        let encoded = field("COUNT_2", Some("int"), Some("2"));
        let free = field("COUNT_3", Some("int"), Some("7"));
        assert_eq!(detect_sequential_numeric(&[&encoded, &free]), None);
    }

    #[test]
    fn mismatched_literal_falls_back_to_sequential() {
        let records = vec![
            field("COUNT_2", Some("int"), Some("5")),
            field("COUNT_3", Some("int"), Some("9")),
        ];
        let labels = group_labels(&records);
        let only = &labels[&(0, 1)];
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].category, TaxonomyCategory::NumericSequential);
    }
}
