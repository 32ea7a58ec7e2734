//! Per-project summaries of classified pairs and their rendered reports.

mod render;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{CategoryLabel, TaxonomyCategory};
use crate::extract::IdentifierInventory;

pub use render::{emit_report, labels_csv, labels_path, render, summary_csv, ReportFormat, RenderedReport};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("label {index} references unknown record {id}")]
    DanglingReference { index: usize, id: String },
    #[error("unsupported confidence level {0} (expected 0.90, 0.95 or 0.99)")]
    UnsupportedConfidence(f64),
    #[error("margin of error must lie in (0, 1), got {0}")]
    InvalidMargin(f64),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryCount {
    pub count: usize,
    /// Percent of all counted labels.
    pub share: f64,
}

/// Table-1 shaped summary for one project.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectSummary {
    pub project: String,
    pub total_identifiers: usize,
    pub analyzed_identifiers: usize,
    /// Distinct identifiers taking part in at least one labeled pair.
    pub similar_identifier_count: usize,
    /// `similar_identifier_count / analyzed_identifiers` in percent, two
    /// decimals, half-up.
    pub similar_pct: f64,
    /// Primary labels counted, one per pair.
    pub label_count: usize,
    pub category_counts: BTreeMap<TaxonomyCategory, CategoryCount>,
    pub top_categories: Vec<TaxonomyCategory>,
    pub needs_review_count: usize,
}

/// Folds primary labels into a summary. With `sample`, only those record
/// ids count as analyzed and only labels with both ends in the sample are
/// counted.
pub fn summarize(
    inventory: &IdentifierInventory,
    labels: &[CategoryLabel],
    sample: Option<&BTreeSet<String>>,
) -> Result<ProjectSummary, ReportError> {
    let known: HashMap<&str, ()> = inventory
        .records
        .iter()
        .map(|r| (r.record_id.as_str(), ()))
        .collect();
    for (index, label) in labels.iter().enumerate() {
        for id in [&label.left_id, &label.right_id]
            .into_iter()
            .chain(label.group.iter().flatten())
        {
            if !known.contains_key(id.as_str()) {
                return Err(ReportError::DanglingReference {
                    index,
                    id: id.clone(),
                });
            }
        }
    }

    let counted: Vec<&CategoryLabel> = labels
        .iter()
        .filter(|l| l.primary && in_sample(l, sample))
        .collect();

    let mut similar = BTreeSet::new();
    let mut counts: BTreeMap<TaxonomyCategory, usize> =
        TaxonomyCategory::ALL.iter().map(|&c| (c, 0)).collect();
    for label in &counted {
        similar.insert(label.left_id.as_str());
        similar.insert(label.right_id.as_str());
        *counts.entry(label.category).or_default() += 1;
    }
    let label_count = counted.len();
    let category_counts = counts
        .iter()
        .map(|(&c, &count)| {
            let share = if label_count == 0 {
                0.0
            } else {
                count as f64 * 100.0 / label_count as f64
            };
            (c, CategoryCount { count, share })
        })
        .collect();

    let mut ranked: Vec<(TaxonomyCategory, usize)> =
        counts.into_iter().filter(|&(_, n)| n > 0).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let analyzed = sample.map_or(inventory.len(), BTreeSet::len);
    let similar_count = similar.len();
    Ok(ProjectSummary {
        project: inventory.project.clone(),
        total_identifiers: inventory.len(),
        analyzed_identifiers: analyzed,
        similar_identifier_count: similar_count,
        similar_pct: format_percent(similar_count as u64, analyzed as u64, 2)
            .parse()
            .expect("format_percent emits a number"),
        label_count,
        category_counts,
        top_categories: ranked.into_iter().take(3).map(|(c, _)| c).collect(),
        needs_review_count: counted.iter().filter(|l| l.needs_review).count(),
    })
}

fn in_sample(label: &CategoryLabel, sample: Option<&BTreeSet<String>>) -> bool {
    sample.is_none_or(|s| s.contains(&label.left_id) && s.contains(&label.right_id))
}

/// Labels whose two records both belong to the sample.
pub fn restrict_labels(labels: &[CategoryLabel], sample: &BTreeSet<String>) -> Vec<CategoryLabel> {
    labels
        .iter()
        .filter(|l| in_sample(l, Some(sample)))
        .cloned()
        .collect()
}

/// Uniform random sample of record ids, sized by [`required_sample_size`].
pub fn draw_sample(
    inventory: &IdentifierInventory,
    confidence: f64,
    margin: f64,
    seed: u64,
) -> Result<BTreeSet<String>, ReportError> {
    let size = required_sample_size(inventory.len(), confidence, margin)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(rand::seq::index::sample(&mut rng, inventory.len(), size)
        .into_iter()
        .map(|i| inventory.records[i].record_id.clone())
        .collect())
}

/// Two-sided z score for the supported confidence levels.
fn z_score(confidence: f64) -> Option<f64> {
    [(0.90, 1.645), (0.95, 1.96), (0.99, 2.576)]
        .into_iter()
        .find(|(c, _)| (c - confidence).abs() < 1e-9)
        .map(|(_, z)| z)
}

/// Cochran's sample size for a proportion (p = 0.5) with finite-population
/// correction, rounded up. An empty population needs no sample.
pub fn required_sample_size(population: usize, confidence: f64, margin: f64) -> Result<usize, ReportError> {
    let z = z_score(confidence).ok_or(ReportError::UnsupportedConfidence(confidence))?;
    if !(margin > 0.0 && margin < 1.0) {
        return Err(ReportError::InvalidMargin(margin));
    }
    if population == 0 {
        return Ok(0);
    }
    let n0 = z * z * 0.25 / (margin * margin);
    let n = n0 / (1.0 + (n0 - 1.0) / population as f64);
    Ok(((n - 1e-9).ceil() as usize).clamp(1, population))
}

/// `count / total` as a percentage with `decimals` places, rounded half-up
/// in exact integer arithmetic. A zero total renders as zero.
pub fn format_percent(count: u64, total: u64, decimals: u32) -> String {
    let scale = 10u128.pow(decimals);
    let scaled = if total == 0 {
        0
    } else {
        let (count, total) = (count as u128, total as u128);
        (count * 100 * scale * 2 + total) / (2 * total)
    };
    let whole = scaled / scale;
    if decimals == 0 {
        return whole.to_string();
    }
    format!("{whole}.{:0width$}", scaled % scale, width = decimals as usize)
}
