use idsim_core::classify::{classify_candidates, classify_inventory, write_labels, ClassifyConfig, ClassifyContext};
use idsim_core::extract::{parse_file, IdentifierInventory};
use idsim_core::lexicon::{is_plural_of, normalize_name, split_name, strip_numeric_suffix, AbbreviationDictionary};
use idsim_core::pairing::{generate_candidate_pairs, pair_features, FeatureCache, lexical_similarity, type_relation, PairConfig, TypeRegistry};
use proptest::prelude::*;

/// Textbook dynamic-programming edit distance over chars.
fn levenshtein_oracle(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut cur = vec![i; b.len() + 1];
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

const IDENT: &str = "[A-Za-z_$][A-Za-z0-9_$]{0,24}";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn split_round_trips(name in IDENT) {
        let t = split_name(&name);
        let expected: String = name.to_lowercase().chars().filter(|c| *c != '_' && *c != '$').collect();
        prop_assert_eq!(t.tokens.concat(), expected.clone());
        prop_assert_eq!(t.tokens.is_empty(), expected.is_empty());
        prop_assert!(t.tokens.iter().all(|tok| !tok.is_empty()));
        prop_assert_eq!(t.had_separators, name.contains(['_', '$']));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn similarity_is_symmetric_and_exact(a in IDENT, b in IDENT) {
        let ab = lexical_similarity(&a, &b);
        prop_assert_eq!(ab, lexical_similarity(&b, &a));
        prop_assert!((0.0..=1.0).contains(&ab));
        let (na, nb) = (normalize_name(&a), normalize_name(&b));
        prop_assert_eq!(ab == 1.0, na == nb);
        let longest = na.chars().count().max(nb.chars().count());
        if longest > 0 && na != nb {
            let oracle = 1.0 - levenshtein_oracle(&na, &nb) as f64 / longest as f64;
            prop_assert!((ab - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn numeric_stem_is_never_empty(name in "[A-Za-z_]{0,6}[0-9]{0,6}") {
        prop_assume!(!name.is_empty());
        let (stem, number) = strip_numeric_suffix(&name);
        prop_assert!(!stem.is_empty());
        if let Some(n) = number {
            prop_assert!(name.starts_with(&stem));
            let digits = name[stem.len()..].strip_prefix('_').unwrap_or(&name[stem.len()..]);
            prop_assert!(digits.chars().all(|c| c.is_ascii_digit()));
            prop_assert_eq!(digits.parse::<u64>().unwrap(), n);
        } else {
            prop_assert_eq!(stem, name);
        }
    }

    #[test]
    fn plural_is_antisymmetric(a in "[a-z]{1,8}([A-Z][a-z]{1,8}){0,2}", b in "[a-z]{1,8}([A-Z][a-z]{1,8}){0,2}") {
        prop_assume!(a != b);
        prop_assert!(!(is_plural_of(&a, &b) && is_plural_of(&b, &a)));
    }
}

#[test]
fn registry_relations_are_dual() {
    let reg = TypeRegistry::default();
    let mut types: Vec<String> = reg.type_names().cloned().collect();
    for base in ["String", "File", "Writer"] {
        types.push(format!("List<{base}>"));
        types.push(format!("{base}[]"));
    }
    types.push("Unregistered".into());
    for a in &types {
        for b in &types {
            let ab = type_relation(Some(a), Some(b), &reg);
            let ba = type_relation(Some(b), Some(a), &reg);
            assert_eq!(ab.inverse(), ba, "{a} vs {b}");
        }
    }
}

fn synthetic_inventory(classes: usize) -> IdentifierInventory {
    let words = ["user", "name", "order", "item", "count", "log", "conn", "buffer", "writer", "total"];
    let mut records = Vec::new();
    for c in 0..classes {
        let mut src = format!("class C{c} {{\n  private String name{};\n  private int total = {c};\n", c % 3);
        for m in 0..4 {
            let w = words[(c + m) % words.len()];
            let w2 = words[(c * 7 + m) % words.len()];
            src.push_str(&format!(
                "  void {w}Run{m}(String {w}, int {w2}s) {{\n    String {w}Tmp = {w};\n    int {w2}{m} = {m};\n    for (String s : java.util.List.of({w})) {{ }}\n  }}\n"
            ));
        }
        src.push_str("}\n");
        records.extend(parse_file(&format!("src/C{c}.java"), &src, "synthetic").unwrap());
    }
    IdentifierInventory::new("synthetic", records)
}

fn run_pipeline(inv: &IdentifierInventory) -> (String, String) {
    let registry = TypeRegistry::default();
    let dictionary = AbbreviationDictionary::default();
    let config = ClassifyConfig::default();
    let pairs = generate_candidate_pairs(inv, &PairConfig::default(), &registry);
    let ctx = ClassifyContext {
        config: &config,
        dictionary: &dictionary,
        registry: &registry,
    };
    let labels = classify_inventory(inv, &pairs, &ctx);
    let mut buf = Vec::new();
    write_labels(&labels, &mut buf).unwrap();
    (serde_json::to_string(&pairs).unwrap(), String::from_utf8(buf).unwrap())
}

#[test]
fn pipeline_is_thread_count_independent() {
    let inv = synthetic_inventory(60);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let a = one.install(|| run_pipeline(&inv));
    let b = many.install(|| run_pipeline(&inv));
    assert!(!a.1.is_empty());
    assert_eq!(a, b);
}

#[test]
fn parsing_twice_is_identical() {
    let src = "class A { int x = 1; void f(int y) { int z = y; } }";
    assert_eq!(
        parse_file("A.java", src, "p").unwrap(),
        parse_file("A.java", src, "p").unwrap()
    );
}

#[test]
fn streaming_classification_matches_materialized_pairs() {
    let inv = synthetic_inventory(20);
    let registry = TypeRegistry::default();
    let dictionary = AbbreviationDictionary::default();
    let config = ClassifyConfig::default();
    let ctx = ClassifyContext {
        config: &config,
        dictionary: &dictionary,
        registry: &registry,
    };
    let pairs = generate_candidate_pairs(&inv, &PairConfig::default(), &registry);
    assert_eq!(
        classify_candidates(&inv, &PairConfig::default(), &ctx),
        classify_inventory(&inv, &pairs, &ctx)
    );
}

#[test]
fn cached_features_match_direct_features() {
    let inv = synthetic_inventory(10);
    let registry = TypeRegistry::default();
    let cache = FeatureCache::new(&inv.records);
    let n = inv.records.len();
    for l in 0..n {
        for r in l + 1..n {
            assert_eq!(
                cache.features(&inv.records, l, r, &registry),
                pair_features(&inv.records, l, r, &registry)
            );
        }
    }
}
