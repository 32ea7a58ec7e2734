//! Candidate pair generation and per-pair features.
//!
//! Comparing every identifier with every other is quadratic, so pairs are
//! only proposed inside blocks:
//!
//! * identical normalized names,
//! * a shared first or final soft word,
//! * the same enclosing method (capped),
//! * variables of the same erased type in the same class (capped).
//!
//! Name and token blocks larger than [`PairConfig::max_block_size`] are
//! restricted to pairs within one file.

mod registry;
mod types;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::extract::{IdentifierInventory, IdentifierRecord};
use crate::lexicon::{normalize_name, split_name, strip_numeric_suffix};

pub use registry::{RegistryError, RegistryFile, TypeRegistry};
pub use types::TypeExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopeRelation {
    SameMethod,
    SameClass,
    SameFile,
    CrossFile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeRelation {
    Identical,
    /// Left is a subtype of right.
    Subtype,
    Supertype,
    /// Left is a container whose element type is right.
    CollectionOf,
    ElementOf,
    Unrelated,
    Unknown,
}

impl TypeRelation {
    pub fn inverse(self) -> Self {
        match self {
            TypeRelation::Subtype => TypeRelation::Supertype,
            TypeRelation::Supertype => TypeRelation::Subtype,
            TypeRelation::CollectionOf => TypeRelation::ElementOf,
            TypeRelation::ElementOf => TypeRelation::CollectionOf,
            other => other,
        }
    }

    pub fn is_hierarchical(self) -> bool {
        matches!(self, TypeRelation::Subtype | TypeRelation::Supertype)
    }
}

/// Two inventory records (by canonical index and id) with their features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidatePair {
    #[serde(skip)]
    pub left_index: usize,
    #[serde(skip)]
    pub right_index: usize,
    pub left: String,
    pub right: String,
    pub scope_relation: ScopeRelation,
    pub lexical_similarity: f64,
    pub type_relation: TypeRelation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shared_stem: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PairConfig {
    /// Cap on identifiers considered per enclosing method (and per
    /// class/type group).
    pub max_method_identifiers: usize,
    /// Name or token blocks above this size only pair within a file.
    pub max_block_size: usize,
}

impl Default for PairConfig {
    fn default() -> Self {
        Self {
            max_method_identifiers: 200,
            max_block_size: 1000,
        }
    }
}

/// `1 - levenshtein / longer_length` over normalized names.
pub fn lexical_similarity(name_a: &str, name_b: &str) -> f64 {
    normalized_similarity(&normalize_name(name_a), &normalize_name(name_b))
}

fn normalized_similarity(a: &str, b: &str) -> f64 {
    if a == b {
        return 1.0;
    }
    let longest = a.chars().count().max(b.chars().count());
    1.0 - strsim::levenshtein(a, b) as f64 / longest as f64
}

pub fn scope_relation(a: &IdentifierRecord, b: &IdentifierRecord) -> ScopeRelation {
    if a.file_path != b.file_path {
        return ScopeRelation::CrossFile;
    }
    if a.enclosing_class != b.enclosing_class {
        return ScopeRelation::SameFile;
    }
    match (&a.enclosing_method, &b.enclosing_method) {
        (Some(ma), Some(mb)) if ma == mb => ScopeRelation::SameMethod,
        _ => ScopeRelation::SameClass,
    }
}

/// Relation between two declared types as seen through the registry.
pub fn type_relation(
    type_a: Option<&str>,
    type_b: Option<&str>,
    registry: &TypeRegistry,
) -> TypeRelation {
    let (a, b) = (type_a.map(ParsedType::new), type_b.map(ParsedType::new));
    parsed_relation(a.as_ref(), b.as_ref(), registry)
}

fn parsed_relation(a: Option<&ParsedType>, b: Option<&ParsedType>, registry: &TypeRegistry) -> TypeRelation {
    let (Some(a), Some(b)) = (a, b) else {
        return TypeRelation::Unknown;
    };
    if a.squashed == b.squashed {
        return TypeRelation::Identical;
    }
    match (&a.expr, &b.expr) {
        (Some(ta), Some(tb)) => relation(ta, tb, registry),
        _ => TypeRelation::Unknown,
    }
}

fn squash(t: &str) -> String {
    t.chars().filter(|c| !c.is_whitespace()).collect()
}

fn relation(a: &TypeExpr, b: &TypeExpr, reg: &TypeRegistry) -> TypeRelation {
    if a == b {
        return TypeRelation::Identical;
    }
    if reg.element_of(a).as_ref() == Some(b) {
        return TypeRelation::CollectionOf;
    }
    if reg.element_of(b).as_ref() == Some(a) {
        return TypeRelation::ElementOf;
    }
    let fallback = if reg.knows(a) && reg.knows(b) {
        TypeRelation::Unrelated
    } else {
        TypeRelation::Unknown
    };
    if a.dims != b.dims {
        return fallback;
    }
    if a.dims > 0 {
        return flatten_nested(relation(&a.without_dims(), &b.without_dims(), reg));
    }
    if a.base == b.base {
        if reg.is_collection(&a.base) && !a.args.is_empty() && !b.args.is_empty() {
            return match (a.first_arg(), b.first_arg()) {
                (Some(ea), Some(eb)) => flatten_nested(relation(ea, eb, reg)),
                _ => TypeRelation::Unknown,
            };
        }
        // same raw type, different arguments
        return TypeRelation::Identical;
    }
    if reg.is_subtype(&a.base, &b.base) {
        return TypeRelation::Subtype;
    }
    if reg.is_subtype(&b.base, &a.base) {
        return TypeRelation::Supertype;
    }
    fallback
}

/// A container relation between element types does not carry over to the
/// enclosing arrays or collections.
fn flatten_nested(rel: TypeRelation) -> TypeRelation {
    match rel {
        TypeRelation::CollectionOf | TypeRelation::ElementOf => TypeRelation::Unrelated,
        other => other,
    }
}

/// Common stem when one name numbers or extends the other.
fn shared_stem(a: &IdentifierRecord, b: &IdentifierRecord) -> Option<String> {
    shared_stem_normalized(a, b, &normalize_name(&a.name), &normalize_name(&b.name))
}

fn shared_stem_normalized(a: &IdentifierRecord, b: &IdentifierRecord, na: &str, nb: &str) -> Option<String> {
    let (stem_a, num_a) = strip_numeric_suffix(&a.name);
    let (stem_b, num_b) = strip_numeric_suffix(&b.name);
    if num_a.is_some() && num_b.is_some() && normalize_name(&stem_a) == normalize_name(&stem_b) {
        return Some(stem_a);
    }
    // Extending by whole words also extends the letters.
    let (x, y) = if na.len() <= nb.len() { (na, nb) } else { (nb, na) };
    if x.len() == y.len() || !(y.starts_with(x) || y.ends_with(x)) {
        return None;
    }
    let ta = split_name(&a.name).tokens;
    let tb = split_name(&b.name).tokens;
    let (short, long) = if ta.len() <= tb.len() { (&ta, &tb) } else { (&tb, &ta) };
    if short.is_empty() || short.len() == long.len() {
        return None;
    }
    let prefix = long[..short.len()] == short[..];
    let suffix = long[long.len() - short.len()..] == short[..];
    (prefix || suffix).then(|| short.concat())
}

struct RecordKeys {
    normalized: String,
    first: Option<String>,
    last: Option<String>,
}

fn record_keys(record: &IdentifierRecord) -> RecordKeys {
    let tokens = split_name(&record.name).tokens;
    let wordy = |t: &&String| !t.chars().all(|c| c.is_ascii_digit());
    RecordKeys {
        normalized: normalize_name(&record.name),
        first: tokens.first().filter(wordy).cloned(),
        last: tokens.last().filter(wordy).cloned(),
    }
}

/// Proposes candidate pairs for an inventory and computes their features.
/// Output is sorted by (left, right) canonical index and independent of
/// thread scheduling.
pub fn generate_candidate_pairs(
    inventory: &IdentifierInventory,
    config: &PairConfig,
    registry: &TypeRegistry,
) -> Vec<CandidatePair> {
    let records = &inventory.records;
    let cache = FeatureCache::new(records);
    candidate_index_pairs(inventory, config)
        .into_par_iter()
        .map(|(l, r)| cache.features(records, l as usize, r as usize, registry))
        .collect()
}

/// Normalized names and parsed types, computed once per record instead of
/// once per pair.
pub struct FeatureCache {
    normalized: Vec<String>,
    types: Vec<Option<ParsedType>>,
}

struct ParsedType {
    squashed: String,
    expr: Option<TypeExpr>,
}

impl ParsedType {
    fn new(text: &str) -> Self {
        Self {
            squashed: squash(text),
            expr: TypeExpr::parse(text),
        }
    }
}

impl FeatureCache {
    pub fn new(records: &[IdentifierRecord]) -> Self {
        Self {
            normalized: records.par_iter().map(|r| normalize_name(&r.name)).collect(),
            types: records
                .par_iter()
                .map(|r| r.declared_type.as_deref().map(ParsedType::new))
                .collect(),
        }
    }

    /// Same result as [`pair_features`] for records the cache was built from.
    pub fn features(
        &self,
        records: &[IdentifierRecord],
        left: usize,
        right: usize,
        registry: &TypeRegistry,
    ) -> CandidatePair {
        let (a, b) = (&records[left], &records[right]);
        let (na, nb) = (&self.normalized[left], &self.normalized[right]);
        CandidatePair {
            left_index: left,
            right_index: right,
            left: a.record_id.clone(),
            right: b.record_id.clone(),
            scope_relation: scope_relation(a, b),
            lexical_similarity: normalized_similarity(na, nb),
            type_relation: parsed_relation(self.types[left].as_ref(), self.types[right].as_ref(), registry),
            shared_stem: shared_stem_normalized(a, b, na, nb),
        }
    }
}

/// The canonical index pairs [`generate_candidate_pairs`] would emit,
/// sorted and without features.
pub fn candidate_index_pairs(inventory: &IdentifierInventory, config: &PairConfig) -> Vec<(u32, u32)> {
    let mut raw = candidate_indices(&inventory.records, config);
    raw.par_sort_unstable();
    raw.dedup();
    raw
}

/// Features for a single pair; `left < right` by canonical order.
pub fn pair_features(
    records: &[IdentifierRecord],
    left: usize,
    right: usize,
    registry: &TypeRegistry,
) -> CandidatePair {
    let (a, b) = (&records[left], &records[right]);
    CandidatePair {
        left_index: left,
        right_index: right,
        left: a.record_id.clone(),
        right: b.record_id.clone(),
        scope_relation: scope_relation(a, b),
        lexical_similarity: lexical_similarity(&a.name, &b.name),
        type_relation: type_relation(a.declared_type.as_deref(), b.declared_type.as_deref(), registry),
        shared_stem: shared_stem(a, b),
    }
}

fn candidate_indices(records: &[IdentifierRecord], config: &PairConfig) -> Vec<(u32, u32)> {
    let keys: Vec<RecordKeys> = records.par_iter().map(record_keys).collect();

    let mut by_name: HashMap<&str, Vec<u32>> = HashMap::new();
    let mut by_token: HashMap<(bool, &str), Vec<u32>> = HashMap::new();
    let mut by_method: HashMap<(&str, Option<&str>, &str), Vec<u32>> = HashMap::new();
    let mut by_class_type: HashMap<(&str, Option<&str>, String), Vec<u32>> = HashMap::new();

    for (i, (rec, k)) in records.iter().zip(&keys).enumerate() {
        let i = i as u32;
        by_name.entry(k.normalized.as_str()).or_default().push(i);
        if let Some(first) = &k.first {
            by_token.entry((true, first.as_str())).or_default().push(i);
        }
        if let Some(last) = &k.last {
            by_token.entry((false, last.as_str())).or_default().push(i);
        }
        if let Some(method) = rec.enclosing_method.as_deref() {
            by_method
                .entry((rec.file_path.as_str(), rec.enclosing_class.as_deref(), method))
                .or_default()
                .push(i);
        }
        if rec.kind.is_variable() {
            if let Some(ty) = rec.declared_type.as_deref().and_then(TypeExpr::parse) {
                by_class_type
                    .entry((rec.file_path.as_str(), rec.enclosing_class.as_deref(), ty.base))
                    .or_default()
                    .push(i);
            }
        }
    }

    let mut pairs = Vec::new();
    let open_blocks = by_name
        .into_iter()
        .map(|(k, v)| (format!("name `{k}`"), v))
        .chain(by_token.into_iter().map(|((first, t), v)| {
            let pos = if first { "first" } else { "final" };
            (format!("{pos} token `{t}`"), v)
        }));
    for (label, members) in open_blocks {
        if members.len() > config.max_block_size {
            log::warn!(
                "{label}: block of {} identifiers exceeds {}; pairing within files only",
                members.len(),
                config.max_block_size
            );
            let mut by_file: HashMap<&str, Vec<u32>> = HashMap::new();
            for &m in &members {
                by_file.entry(records[m as usize].file_path.as_str()).or_default().push(m);
            }
            for group in by_file.values() {
                all_pairs(group, &mut pairs);
            }
        } else {
            all_pairs(&members, &mut pairs);
        }
    }

    let capped_blocks = by_method
        .into_iter()
        .map(|((file, _, method), v)| (format!("{file}: method `{method}`"), v))
        .chain(
            by_class_type
                .into_iter()
                .map(|((file, _, ty), v)| (format!("{file}: variables of type `{ty}`"), v)),
        );
    for (label, mut members) in capped_blocks {
        if members.len() > config.max_method_identifiers {
            log::warn!(
                "{label}: {} identifiers, truncating to {}",
                members.len(),
                config.max_method_identifiers
            );
            members.truncate(config.max_method_identifiers);
        }
        all_pairs(&members, &mut pairs);
    }
    pairs
}

/// Members are in ascending index order, so each pair comes out as
/// `(lower, higher)`.
fn all_pairs(members: &[u32], out: &mut Vec<(u32, u32)>) {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            out.push((a.min(b), a.max(b)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{Declaration, IdentifierKind};

    fn record(name: &str, ty: Option<&str>, file: &str, class: &str, method: Option<&str>) -> IdentifierRecord {
        let kind = if method.is_some() {
            IdentifierKind::LocalVariable
        } else {
            IdentifierKind::Field
        };
        IdentifierRecord::from_declaration(
            "t",
            file,
            Declaration {
                name: name.into(),
                kind,
                declared_type: ty.map(String::from),
                enclosing_class: Some(class.into()),
                enclosing_method: method.map(String::from),
                line: 1,
                column: 1 + name.len() as u32,
                initializer_literal: None,
                source_expression: None,
            },
        )
    }

    #[test]
    fn lexical_similarity_examples() {
        assert_eq!(lexical_similarity("writer", "writer"), 1.0);
        assert!((lexical_similarity("agentName", "agentNames") - 0.9).abs() < 1e-12);
        assert_eq!(lexical_similarity("db", "conn"), 0.0);
        assert_eq!(lexical_similarity("COUNT_2", "count2"), 1.0);
        assert_eq!(lexical_similarity("$", "_"), 1.0);
    }

    #[test]
    fn type_relation_examples() {
        let reg = TypeRegistry::default();
        let rel = |a: &str, b: &str| type_relation(Some(a), Some(b), &reg);
        assert_eq!(rel("HttpServletRequest", "ServletRequest"), TypeRelation::Subtype);
        assert_eq!(rel("ServletRequest", "HttpServletRequest"), TypeRelation::Supertype);
        assert_eq!(rel("String", "String"), TypeRelation::Identical);
        assert_eq!(rel("LinkedHashSet<String>", "String"), TypeRelation::CollectionOf);
        assert_eq!(rel("String", "LinkedHashSet<String>"), TypeRelation::ElementOf);
        assert_eq!(rel("byte[]", "byte"), TypeRelation::CollectionOf);
        assert_eq!(rel("byte[]", "StringBuffer"), TypeRelation::Unrelated);
        assert_eq!(rel("OutputStreamWriter", "FastString"), TypeRelation::Unknown);
        assert_eq!(rel("String", "Integer"), TypeRelation::Unrelated);
        assert_eq!(rel("List<String>", "List<Integer>"), TypeRelation::Unrelated);
        assert_eq!(rel("List<HttpServletRequest>", "List<ServletRequest>"), TypeRelation::Subtype);
        assert_eq!(rel("java.util.List<String>", "List<String>"), TypeRelation::Identical);
        assert_eq!(
            rel("Class<? extends AbstractThymeleafView>", "Class<? extends ThymeleafReactiveView>"),
            TypeRelation::Identical
        );
        assert_eq!(type_relation(None, Some("String"), &reg), TypeRelation::Unknown);
        assert_eq!(rel("Foo", "Bar"), TypeRelation::Unknown);
    }

    #[test]
    fn scope_relation_levels() {
        let a = record("x", None, "A.java", "A", Some("run"));
        let b = record("y", None, "A.java", "A", Some("run"));
        let c = record("z", None, "A.java", "A", Some("stop"));
        let d = record("w", None, "A.java", "B", Some("run"));
        let e = record("v", None, "B.java", "A", Some("run"));
        let f1 = record("f1", None, "A.java", "A", None);
        let f2 = record("f2", None, "A.java", "A", None);
        assert_eq!(scope_relation(&a, &b), ScopeRelation::SameMethod);
        assert_eq!(scope_relation(&a, &c), ScopeRelation::SameClass);
        assert_eq!(scope_relation(&a, &d), ScopeRelation::SameFile);
        assert_eq!(scope_relation(&a, &e), ScopeRelation::CrossFile);
        assert_eq!(scope_relation(&f1, &f2), ScopeRelation::SameClass);
    }

    #[test]
    fn single_identifier_has_no_pairs() {
        let inv = IdentifierInventory::new("t", vec![record("x", None, "A.java", "A", Some("m"))]);
        assert!(generate_candidate_pairs(&inv, &PairConfig::default(), &TypeRegistry::default()).is_empty());
    }

    #[test]
    fn blocks_cover_name_token_method_and_type() {
        let inv = IdentifierInventory::new(
            "t",
            vec![
                record("agentName", Some("String"), "A.java", "A", Some("m")),
                record("agentNames", Some("Set<String>"), "A.java", "A", Some("m2")),
                record("writer", Some("Writer"), "B.java", "B", Some("x")),
                record("writer", Some("Writer"), "C.java", "C", Some("y")),
                record("db", Some("DBConnection"), "D.java", "D", Some("p")),
                record("conn", Some("DBConnection"), "D.java", "D", Some("q")),
                record("alpha", None, "E.java", "E", Some("r")),
                record("omega", None, "E.java", "E", Some("r")),
            ],
        );
        let pairs = generate_candidate_pairs(&inv, &PairConfig::default(), &TypeRegistry::default());
        let names: Vec<(String, String)> = pairs
            .iter()
            .map(|p| {
                (
                    inv.records[p.left_index].name.clone(),
                    inv.records[p.right_index].name.clone(),
                )
            })
            .collect();
        let has = |a: &str, b: &str| {
            names.iter().any(|(l, r)| (l == a && r == b) || (l == b && r == a))
        };
        assert!(has("agentName", "agentNames"));
        assert!(has("writer", "writer"));
        assert!(has("db", "conn"));
        assert!(has("alpha", "omega"));
        assert_eq!(pairs.len(), 4);
        for p in &pairs {
            assert!(p.left_index < p.right_index);
        }
    }

    #[test]
    fn oversized_name_block_pairs_within_files() {
        let mut records = Vec::new();
        for f in 0..3 {
            for l in 0..2 {
                let mut r = record("e", None, &format!("F{f}.java"), &format!("F{f}"), None);
                r.line = l + 1;
                r.record_id = crate::extract::record_id("t", &r.file_path, r.line, r.column, "e");
                records.push(r);
            }
        }
        let inv = IdentifierInventory::new("t", records);
        let config = PairConfig {
            max_block_size: 4,
            ..PairConfig::default()
        };
        let pairs = generate_candidate_pairs(&inv, &config, &TypeRegistry::default());
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|p| p.scope_relation != ScopeRelation::CrossFile));
        let all = generate_candidate_pairs(&inv, &PairConfig::default(), &TypeRegistry::default());
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn shared_stems() {
        let a = record("cust1", None, "A.java", "A", Some("m"));
        let b = record("cust2", None, "A.java", "A", Some("m"));
        assert_eq!(shared_stem(&a, &b).as_deref(), Some("cust"));
        let c = record("input", None, "A.java", "A", Some("m"));
        let d = record("scannedInput", None, "A.java", "A", Some("m"));
        assert_eq!(shared_stem(&c, &d).as_deref(), Some("input"));
        assert_eq!(shared_stem(&a, &c), None);
    }
}
