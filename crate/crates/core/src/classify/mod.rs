//! Taxonomy classification of candidate pairs.
//!
//! Numeric groups are labeled in a pre-pass over the inventory; every
//! candidate pair then runs through the pairwise detectors in precedence
//! order. The first label a pair receives is its primary label.

mod category;
mod detectors;
mod numeric;

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::extract::{IdentifierInventory, IdentifierRecord};
use crate::jsonl::JsonlError;
use crate::lexicon::{AbbreviationDictionary, AbbreviationRatios};
use crate::pairing::{candidate_index_pairs, CandidatePair, FeatureCache, PairConfig, TypeRegistry};

pub use category::{Confidence, ParentCategory, TaxonomyCategory};
pub use detectors::{
    detect_abbreviated, detect_acronym, detect_cardinality, detect_colliding,
    detect_inconsistent_semantic, detect_polymorphic, detect_single_char,
    detect_standardized_repetitive, detect_temporary, detect_transformation,
    detect_type_descriptive,
};
pub use numeric::{detect_sequential_numeric, detect_value_encoded, parse_int_literal, ValueEncoding};

/// One category assignment for a pair of identifiers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryLabel {
    pub left_id: String,
    pub right_id: String,
    pub left_name: String,
    pub right_name: String,
    /// All member ids when the label comes from a numeric group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<String>>,
    pub category: TaxonomyCategory,
    pub confidence: Confidence,
    pub rationale: String,
    pub needs_review: bool,
    /// First label of its pair in precedence order.
    #[serde(default)]
    pub primary: bool,
}

impl CategoryLabel {
    pub fn new(
        left: &IdentifierRecord,
        right: &IdentifierRecord,
        category: TaxonomyCategory,
        confidence: Confidence,
        rationale: String,
    ) -> Self {
        Self {
            left_id: left.record_id.clone(),
            right_id: right.record_id.clone(),
            left_name: left.name.clone(),
            right_name: right.name.clone(),
            group: None,
            category,
            confidence,
            rationale,
            needs_review: confidence == Confidence::Low,
            primary: false,
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.confidence == Confidence::Low && !self.needs_review {
            return Err("low-confidence label must be flagged needs_review".into());
        }
        if self.left_id == self.right_id {
            return Err(format!("label pairs record {} with itself", self.left_id));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    /// Minimum lexical similarity for colliding names.
    pub colliding_threshold: f64,
    /// Minimum lexical similarity for polymorphic names.
    pub polymorphic_threshold: f64,
    /// Names at or above this similarity are never inconsistent-semantic.
    pub inconsistent_threshold: f64,
    pub abbreviation: AbbreviationRatios,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            colliding_threshold: 0.85,
            polymorphic_threshold: 0.85,
            inconsistent_threshold: 0.5,
            abbreviation: AbbreviationRatios::default(),
        }
    }
}

/// Everything the detectors consult besides the pair itself.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyContext<'a> {
    pub config: &'a ClassifyConfig,
    pub dictionary: &'a AbbreviationDictionary,
    pub registry: &'a TypeRegistry,
}

/// Runs the pairwise detectors in precedence order and returns every label
/// that fired. Numeric categories are group-level and come from
/// [`classify_inventory`].
pub fn classify_pair(
    pair: &CandidatePair,
    left: &IdentifierRecord,
    right: &IdentifierRecord,
    ctx: &ClassifyContext,
) -> Vec<CategoryLabel> {
    [
        detect_cardinality(pair, left, right, ctx),
        detect_polymorphic(pair, left, right, ctx),
        detect_temporary(pair, left, right),
        detect_type_descriptive(pair, left, right),
        detect_transformation(pair, left, right),
        detect_acronym(pair, left, right),
        detect_abbreviated(pair, left, right, ctx),
        detect_single_char(pair, left, right),
        detect_standardized_repetitive(pair, left, right),
        detect_colliding(pair, left, right, ctx),
        detect_inconsistent_semantic(pair, left, right, ctx),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Labels for a whole inventory: numeric group labels merged with the
/// pairwise labels of `pairs`, ordered by (left, right) record order and
/// then precedence, with the first label of each pair marked primary.
pub fn classify_inventory(
    inventory: &IdentifierInventory,
    pairs: &[CandidatePair],
    ctx: &ClassifyContext,
) -> Vec<CategoryLabel> {
    let records = &inventory.records;
    let pairwise = pairs
        .par_iter()
        .map(|p| {
            let labels = classify_pair(p, &records[p.left_index], &records[p.right_index], ctx);
            ((p.left_index, p.right_index), labels)
        })
        .filter(|(_, labels)| !labels.is_empty())
        .collect();
    merge(records, pairwise)
}

/// Same labels as [`classify_inventory`] over [`generate_candidate_pairs`],
/// computing each pair's features on the fly instead of holding every pair
/// in memory.
///
/// [`generate_candidate_pairs`]: crate::pairing::generate_candidate_pairs
pub fn classify_candidates(
    inventory: &IdentifierInventory,
    pair_config: &PairConfig,
    ctx: &ClassifyContext,
) -> Vec<CategoryLabel> {
    let records = &inventory.records;
    let cache = FeatureCache::new(records);
    let indices = candidate_index_pairs(inventory, pair_config);
    log::info!("{} candidate pairs", indices.len());
    let pairwise = indices
        .into_par_iter()
        .map(|(l, r)| {
            let (l, r) = (l as usize, r as usize);
            let pair = cache.features(records, l, r, ctx.registry);
            ((l, r), classify_pair(&pair, &records[l], &records[r], ctx))
        })
        .filter(|(_, labels)| !labels.is_empty())
        .collect();
    merge(records, pairwise)
}

fn merge(records: &[IdentifierRecord], pairwise: Vec<((usize, usize), Vec<CategoryLabel>)>) -> Vec<CategoryLabel> {
    let mut by_pair = numeric::group_labels(records);
    for (key, labels) in pairwise {
        by_pair.entry(key).or_default().extend(labels);
    }
    finish(by_pair)
}

fn finish(by_pair: BTreeMap<(usize, usize), Vec<CategoryLabel>>) -> Vec<CategoryLabel> {
    let mut out = Vec::new();
    for (_, mut labels) in by_pair {
        labels.sort_by_key(|l| l.category.precedence_rank());
        labels.dedup_by_key(|l| l.category);
        if let Some(first) = labels.first_mut() {
            first.primary = true;
        }
        out.extend(labels);
    }
    out
}

pub fn write_labels<W: Write>(labels: &[CategoryLabel], out: W) -> std::io::Result<()> {
    crate::jsonl::write_lines(labels, out)
}

pub fn read_labels<R: BufRead>(input: R) -> Result<Vec<CategoryLabel>, JsonlError> {
    let labels: Vec<CategoryLabel> = crate::jsonl::read_lines(input)?;
    for (i, label) in labels.iter().enumerate() {
        label.validate().map_err(|message| JsonlError::Invalid {
            line: i + 1,
            message,
        })?;
    }
    Ok(labels)
}
