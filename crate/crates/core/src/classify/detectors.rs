//! Pairwise taxonomy detectors. Each returns a label when its rule fires.

use std::collections::BTreeSet;

use crate::extract::{IdentifierKind, IdentifierRecord};
use crate::lexicon::{
    has_temporary_affix, is_abbreviation_of, is_acronym_of, is_plural_of, normalize_name,
    split_name,
};
use crate::pairing::{CandidatePair, ScopeRelation, TypeExpr, TypeRelation};

use super::{CategoryLabel, ClassifyContext, Confidence, TaxonomyCategory};

type Label = Option<CategoryLabel>;

fn label(
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    category: TaxonomyCategory,
    confidence: Confidence,
    rationale: String,
) -> Label {
    Some(CategoryLabel::new(left, right, category, confidence, rationale))
}

pub fn detect_cardinality(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    ctx: &ClassifyContext,
) -> Label {
    // A plural adds one or two letters.
    if left.name.is_ascii() && right.name.is_ascii() {
        let diff = word_len(&left.name).abs_diff(word_len(&right.name));
        if diff == 0 || diff > 2 {
            return None;
        }
    }
    let plural = is_plural_of(&left.name, &right.name) || is_plural_of(&right.name, &left.name);
    if !plural {
        return None;
    }
    let element_relation = matches!(
        pair.type_relation,
        TypeRelation::CollectionOf | TypeRelation::ElementOf
    );
    let container = [left, right].iter().any(|r| {
        r.declared_type
            .as_deref()
            .and_then(TypeExpr::parse)
            .is_some_and(|t| ctx.registry.is_container(&t))
    });
    let (confidence, why) = if element_relation {
        (Confidence::High, "plural name, types are container and element")
    } else if container {
        (Confidence::High, "plural name, container type")
    } else {
        (Confidence::Medium, "plural name only")
    };
    label(left, right, TaxonomyCategory::TypeCardinality, confidence, why.to_string())
}

pub fn detect_polymorphic(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    ctx: &ClassifyContext,
) -> Label {
    if pair.lexical_similarity < ctx.config.polymorphic_threshold
        || !pair.type_relation.is_hierarchical()
    {
        return None;
    }
    let (sub, sup) = match pair.type_relation {
        TypeRelation::Subtype => (left, right),
        _ => (right, left),
    };
    let rationale = format!(
        "similar names, {} extends {}",
        sub.declared_type.as_deref().unwrap_or("?"),
        sup.declared_type.as_deref().unwrap_or("?")
    );
    label(left, right, TaxonomyCategory::TypePolymorphic, Confidence::High, rationale)
}

pub fn detect_temporary(
    _pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
) -> Label {
    let marked = |r: &IdentifierRecord| {
        let n = normalize_name(&r.name);
        n.contains("tmp") || n.contains("temp")
    };
    if !marked(left) && !marked(right) {
        return None;
    }
    let (left_tmp, left_rest) = has_temporary_affix(&left.name);
    let (right_tmp, right_rest) = has_temporary_affix(&right.name);
    let (rest, other) = match (left_tmp, right_tmp) {
        (true, false) => (left_rest, right),
        (false, true) => (right_rest, left),
        _ => return None,
    };
    if rest.is_empty() || normalize_name(&rest) != normalize_name(&other.name) {
        return None;
    }
    label(
        left,
        right,
        TaxonomyCategory::DerivTemporary,
        Confidence::High,
        format!("temporary affix on `{}`", other.name),
    )
}

pub fn detect_type_descriptive(
    _pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
) -> Label {
    let (longer, extra) = extra_token(left, right)?;
    let type_tokens = type_tokens(longer.declared_type.as_deref()?);
    if !type_tokens.contains(&extra) {
        return None;
    }
    label(
        left,
        right,
        TaxonomyCategory::DerivTypeDescriptive,
        Confidence::High,
        format!("extra token `{extra}` names the declared type"),
    )
}

/// Runs after temporary and type-descriptive have been ruled out.
pub fn detect_transformation(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
) -> Label {
    if pair.scope_relation != ScopeRelation::SameMethod {
        return None;
    }
    if detect_temporary(pair, left, right).is_some()
        || detect_type_descriptive(pair, left, right).is_some()
    {
        return None;
    }
    let (_, extra) = extra_token(left, right)?;
    if !extra.chars().any(char::is_alphabetic) {
        return None;
    }
    label(
        left,
        right,
        TaxonomyCategory::DerivTransformation,
        Confidence::Medium,
        format!("derived with `{extra}` in the same method"),
    )
}

/// When the other record names a declared type in full, its soft words are
/// the type's words, so the name check covers the declared-type case too.
pub fn detect_acronym(
    _pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
) -> Label {
    for (short, long) in [(left, right), (right, left)] {
        // Initials never include separators and need at least two words.
        if short.name.chars().count() < 2 || short.name.contains(['_', '$']) {
            continue;
        }
        let first = |r: &IdentifierRecord| r.name.chars().find(|c| !matches!(c, '_' | '$'));
        if short.name.is_ascii() && long.name.is_ascii() {
            let (a, b) = (first(short).unwrap_or_default(), first(long).unwrap_or_default());
            if !a.eq_ignore_ascii_case(&b) {
                continue;
            }
        }
        if is_acronym_of(&short.name, &split_name(&long.name).tokens) {
            return label(
                left,
                right,
                TaxonomyCategory::ConciseAcronym,
                Confidence::Medium,
                format!("initials of `{}`", long.name),
            );
        }
    }
    None
}

pub fn detect_abbreviated(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    ctx: &ClassifyContext,
) -> Label {
    if !matches!(
        pair.type_relation,
        TypeRelation::Identical | TypeRelation::Subtype | TypeRelation::Supertype | TypeRelation::Unknown
    ) || !same_kind_family(left, right)
    {
        return None;
    }
    let (short, long) = abbreviation_between(left, right, ctx)?;
    let confidence = if pair.type_relation == TypeRelation::Identical {
        Confidence::High
    } else {
        Confidence::Medium
    };
    label(
        left,
        right,
        TaxonomyCategory::ConciseAbbreviated,
        confidence,
        format!("`{short}` abbreviates `{long}`"),
    )
}

pub fn detect_single_char(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
) -> Label {
    if left.name.chars().count() != 1 || left.name != right.name {
        return None;
    }
    if !matches!(pair.type_relation, TypeRelation::Unrelated | TypeRelation::Unknown) {
        return None;
    }
    if is_loop_index(left) && is_loop_index(right) {
        return None;
    }
    label(
        left,
        right,
        TaxonomyCategory::ConciseSingleChar,
        Confidence::Medium,
        "same single-character name, different types".to_string(),
    )
}

pub fn detect_standardized_repetitive(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
) -> Label {
    if pair.lexical_similarity < 1.0 || pair.scope_relation == ScopeRelation::SameMethod
    {
        return None;
    }
    let confidence = match pair.type_relation {
        TypeRelation::Identical if same_type_text(left, right) => Confidence::High,
        TypeRelation::Identical | TypeRelation::Subtype | TypeRelation::Supertype => Confidence::Medium,
        _ => return None,
    };
    if contexts_disjoint(pair, left, right) {
        return None;
    }
    label(
        left,
        right,
        TaxonomyCategory::StandardizedRepetitive,
        confidence,
        format!("name reused across {}", scope_words(pair.scope_relation)),
    )
}

pub fn detect_colliding(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    ctx: &ClassifyContext,
) -> Label {
    if pair.lexical_similarity < ctx.config.colliding_threshold {
        return None;
    }
    let disjoint = contexts_disjoint(pair, left, right);
    let both_typed = left.declared_type.is_some() && right.declared_type.is_some();
    let (confidence, why) = match pair.type_relation {
        TypeRelation::Unrelated => (Confidence::High, "unrelated types"),
        TypeRelation::Unknown if disjoint && both_typed => {
            (Confidence::High, "different unregistered types, disjoint contexts")
        }
        TypeRelation::Unknown if disjoint => (Confidence::Medium, "disjoint contexts"),
        _ if disjoint => (Confidence::Low, "disjoint contexts despite compatible types"),
        _ => return None,
    };
    label(left, right, TaxonomyCategory::Colliding, confidence, why.to_string())
}

pub fn detect_inconsistent_semantic(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    ctx: &ClassifyContext,
) -> Label {
    if !left.kind.is_variable() || !right.kind.is_variable() {
        return None;
    }
    if pair.lexical_similarity >= ctx.config.inconsistent_threshold
        || pair.type_relation != TypeRelation::Identical
        || left.declared_type.is_none()
        || right.declared_type.is_none()
        || !matches!(pair.scope_relation, ScopeRelation::SameClass | ScopeRelation::SameFile)
    {
        return None;
    }
    if abbreviation_between(left, right, ctx).is_some() {
        return None;
    }
    label(
        left,
        right,
        TaxonomyCategory::InconsistentSemantic,
        Confidence::Low,
        format!(
            "different names for one `{}` role",
            left.declared_type.as_deref().unwrap_or_default()
        ),
    )
}

/// Returns `(short, long)` when one name abbreviates the other, comparing
/// whole normalized names and, where the names line up, final soft words.
pub(super) fn abbreviation_between(
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    ctx: &ClassifyContext,
) -> Option<(String, String)> {
    let test = |a: &str, b: &str| -> Option<(String, String)> {
        if !a.chars().any(char::is_alphabetic) || !b.chars().any(char::is_alphabetic) {
            return None;
        }
        let ratios = ctx.config.abbreviation;
        if is_abbreviation_of(a, b, ctx.dictionary, ratios) {
            Some((a.to_string(), b.to_string()))
        } else if is_abbreviation_of(b, a, ctx.dictionary, ratios) {
            Some((b.to_string(), a.to_string()))
        } else {
            None
        }
    };
    let (ln, rn) = (normalize_name(&left.name), normalize_name(&right.name));
    if ln == rn {
        return None;
    }
    if let Some(found) = test(&ln, &rn) {
        return Some(found);
    }
    let lt = split_name(&left.name).tokens;
    let rt = split_name(&right.name).tokens;
    let (Some(l_last), Some(r_last)) = (lt.last(), rt.last()) else {
        return None;
    };
    let aligned = (lt.len() == rt.len() && lt[..lt.len() - 1] == rt[..rt.len() - 1])
        || lt.len() == 1
        || rt.len() == 1;
    if aligned {
        test(l_last, r_last)
    } else {
        None
    }
}

/// When one name is the other plus a single leading or trailing soft word,
/// returns the longer record and that word.
fn extra_token<'a>(
    left: &'a IdentifierRecord,
    right: &'a IdentifierRecord,
) -> Option<(&'a IdentifierRecord, String)> {
    // The shorter name's letters must open or close the longer one's.
    let (ln, rn) = (normalize_name(&left.name), normalize_name(&right.name));
    let (short, long) = if ln.len() <= rn.len() { (&ln, &rn) } else { (&rn, &ln) };
    if short.len() == long.len() || !(long.starts_with(short.as_str()) || long.ends_with(short.as_str())) {
        return None;
    }
    let lt = split_name(&left.name).tokens;
    let rt = split_name(&right.name).tokens;
    let check = |short: &[String], long: &[String]| -> Option<String> {
        if short.is_empty() || long.len() != short.len() + 1 {
            return None;
        }
        if long[1..] == *short {
            Some(long[0].clone())
        } else if long[..short.len()] == *short {
            Some(long[short.len()].clone())
        } else {
            None
        }
    };
    check(&lt, &rt)
        .map(|t| (right, t))
        .or_else(|| check(&rt, &lt).map(|t| (left, t)))
}

/// Soft words of every identifier in a type's text.
fn type_tokens(ty: &str) -> BTreeSet<String> {
    identifier_words(ty)
        .flat_map(|w| split_name(w).tokens)
        .collect()
}

fn identifier_words(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '$'))
        .filter(|w| w.chars().next().is_some_and(|c| !c.is_ascii_digit()))
}

/// Variables (fields, parameters, locals) compare with each other; other
/// kinds only with their own kind.
fn same_kind_family(left: &IdentifierRecord, right: &IdentifierRecord) -> bool {
    left.kind == right.kind || (left.kind.is_variable() && right.kind.is_variable())
}

/// Name length without `_` and `$`.
fn word_len(name: &str) -> usize {
    name.chars().filter(|&c| c != '_' && c != '$').count()
}

fn scope_words(scope: ScopeRelation) -> &'static str {
    match scope {
        ScopeRelation::SameMethod => "one method",
        ScopeRelation::SameClass => "methods of one class",
        ScopeRelation::SameFile => "classes of one file",
        ScopeRelation::CrossFile => "files",
    }
}

fn same_type_text(left: &IdentifierRecord, right: &IdentifierRecord) -> bool {
    let squash = |t: &Option<String>| {
        t.as_deref()
            .map(|s| s.chars().filter(|c| !c.is_whitespace()).collect::<String>())
    };
    squash(&left.declared_type) == squash(&right.declared_type)
}

const INTEGER_TYPES: &[&str] = &["int", "long", "short", "byte", "Integer", "Long", "Short", "Byte"];

fn is_loop_index(r: &IdentifierRecord) -> bool {
    r.kind == IdentifierKind::LocalVariable
        && matches!(r.name.as_str(), "i" | "j" | "k")
        && r.declared_type.as_deref().is_some_and(|t| INTEGER_TYPES.contains(&t.trim()))
}

const JAVA_WORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "false", "final", "finally",
    "float", "for", "if", "implements", "import", "instanceof", "int", "interface", "long", "new",
    "null", "package", "private", "protected", "public", "return", "short", "static", "super",
    "switch", "this", "throw", "true", "try", "var", "void", "while",
];

/// Soft words describing where a record gets its value: identifiers in the
/// captured initializer or iterable, plus the enclosing method name when the
/// two records live in different methods. Keywords, numbers, string
/// contents and the record's own name words are dropped.
pub(super) fn context_tokens(record: &IdentifierRecord, with_method: bool) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    if let Some(expr) = &record.source_expression {
        for word in identifier_words(&strip_string_literals(expr)) {
            out.extend(split_name(word).tokens);
        }
    }
    if with_method {
        if let Some(method) = record.enclosing_method.as_deref().filter(|m| !m.starts_with('<')) {
            out.extend(split_name(method).tokens);
        }
    }
    let own: BTreeSet<String> = split_name(&record.name).tokens.into_iter().collect();
    out.retain(|t| {
        !own.contains(t)
            && !JAVA_WORDS.contains(&t.as_str())
            && !t.chars().all(|c| c.is_ascii_digit())
    });
    out
}

/// Contexts are only compared when both records captured a value
/// expression; otherwise there is nothing to tell them apart.
pub(super) fn contexts_disjoint(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
) -> bool {
    if left.source_expression.is_none() || right.source_expression.is_none() {
        return false;
    }
    let with_method = pair.scope_relation != ScopeRelation::SameMethod;
    let a = context_tokens(left, with_method);
    let b = context_tokens(right, with_method);
    !a.is_empty() && !b.is_empty() && a.is_disjoint(&b)
}

fn strip_string_literals(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut quote: Option<char> = None;
    let mut escaped = false;
    for c in text.chars() {
        match quote {
            Some(q) => {
                if escaped {
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == q {
                    quote = None;
                    out.push(' ');
                }
            }
            None if c == '"' || c == '\'' => quote = Some(c),
            None => out.push(c),
        }
    }
    out
}
