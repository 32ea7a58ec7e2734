use std::path::{Path, PathBuf};

use idsim_core::classify::{classify_inventory, CategoryLabel, ClassifyConfig, ClassifyContext, TaxonomyCategory};
use idsim_core::extract::{scan_project, ScanConfig};
use idsim_core::lexicon::AbbreviationDictionary;
use idsim_core::pairing::{generate_candidate_pairs, PairConfig, TypeRegistry};
use serde::Deserialize;

#[derive(Deserialize)]
struct Expected {
    listing: String,
    left: String,
    right: String,
    category: TaxonomyCategory,
    needs_review: bool,
}

fn gold_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/gold")
}

fn labels_for(dir: &Path) -> Vec<CategoryLabel> {
    let inv = scan_project(dir, "gold", &ScanConfig::default()).unwrap();
    let registry = TypeRegistry::default();
    let dictionary = AbbreviationDictionary::default();
    let config = ClassifyConfig::default();
    let pairs = generate_candidate_pairs(&inv, &PairConfig::default(), &registry);
    let ctx = ClassifyContext {
        config: &config,
        dictionary: &dictionary,
        registry: &registry,
    };
    classify_inventory(&inv, &pairs, &ctx)
}

fn expectations() -> Vec<Expected> {
    let text = std::fs::read_to_string(gold_dir().join("expected.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn matches(label: &CategoryLabel, e: &Expected) -> bool {
    (label.left_name == e.left && label.right_name == e.right)
        || (label.left_name == e.right && label.right_name == e.left)
}

#[test]
fn every_listing_gets_its_primary_label() {
    let mut failures = Vec::new();
    for e in expectations() {
        let labels = labels_for(&gold_dir().join(&e.listing));
        let primary = labels.iter().find(|l| l.primary && matches(l, &e));
        match primary {
            Some(l) if l.category == e.category && l.needs_review == e.needs_review => {}
            other => failures.push(format!(
                "{}: expected {} got {:?}",
                e.listing,
                e.category,
                other.map(|l| (l.category, l.confidence, &l.rationale))
            )),
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn precedence_keeps_claimed_pairs_disjoint() {
    let labels = labels_for(&gold_dir());
    let mut by_pair = std::collections::BTreeMap::<(&str, &str), Vec<TaxonomyCategory>>::new();
    for l in &labels {
        by_pair.entry((&l.left_id, &l.right_id)).or_default().push(l.category);
    }
    for cats in by_pair.values() {
        if cats.contains(&TaxonomyCategory::NumericValueEncoded) {
            assert!(!cats.contains(&TaxonomyCategory::NumericSequential));
        }
        if cats.contains(&TaxonomyCategory::DerivTypeDescriptive) {
            assert!(!cats.contains(&TaxonomyCategory::DerivTransformation));
        }
        if cats.contains(&TaxonomyCategory::DerivTemporary) {
            assert!(!cats.contains(&TaxonomyCategory::DerivTransformation));
        }
    }
    let primaries = labels.iter().filter(|l| l.primary).count();
    assert_eq!(primaries, by_pair.len());
}
