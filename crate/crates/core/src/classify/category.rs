use std::fmt;

use serde::{Deserialize, Serialize};

/// The seven top-level similarity categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParentCategory {
    StandardizedRepetitive,
    InconsistentSemantic,
    Colliding,
    TypeBasedVariants,
    DerivationalVariants,
    NumericallyDistinguishedVariants,
    ConciseVariants,
}

impl ParentCategory {
    pub const ALL: [ParentCategory; 7] = [
        ParentCategory::StandardizedRepetitive,
        ParentCategory::InconsistentSemantic,
        ParentCategory::Colliding,
        ParentCategory::TypeBasedVariants,
        ParentCategory::DerivationalVariants,
        ParentCategory::NumericallyDistinguishedVariants,
        ParentCategory::ConciseVariants,
    ];

    pub fn display_name(self) -> &'static str {
        match self {
            ParentCategory::StandardizedRepetitive => "Standardized Repetitive Names",
            ParentCategory::InconsistentSemantic => "Inconsistent Semantic Names",
            ParentCategory::Colliding => "Colliding Names",
            ParentCategory::TypeBasedVariants => "Type-Based Variants",
            ParentCategory::DerivationalVariants => "Derivational Variants",
            ParentCategory::NumericallyDistinguishedVariants => "Numerically Distinguished Variants",
            ParentCategory::ConciseVariants => "Concise Variants",
        }
    }
}

/// Taxonomy categories with subcategories flattened. Declaration order is
/// the report column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaxonomyCategory {
    StandardizedRepetitive,
    InconsistentSemantic,
    Colliding,
    TypePolymorphic,
    TypeCardinality,
    DerivTransformation,
    DerivTypeDescriptive,
    DerivTemporary,
    NumericSequential,
    NumericValueEncoded,
    ConciseAbbreviated,
    ConciseAcronym,
    ConciseSingleChar,
}

impl TaxonomyCategory {
    pub const ALL: [TaxonomyCategory; 13] = [
        TaxonomyCategory::StandardizedRepetitive,
        TaxonomyCategory::InconsistentSemantic,
        TaxonomyCategory::Colliding,
        TaxonomyCategory::TypePolymorphic,
        TaxonomyCategory::TypeCardinality,
        TaxonomyCategory::DerivTransformation,
        TaxonomyCategory::DerivTypeDescriptive,
        TaxonomyCategory::DerivTemporary,
        TaxonomyCategory::NumericSequential,
        TaxonomyCategory::NumericValueEncoded,
        TaxonomyCategory::ConciseAbbreviated,
        TaxonomyCategory::ConciseAcronym,
        TaxonomyCategory::ConciseSingleChar,
    ];

    /// Detector order, most specific evidence first. The first label a pair
    /// receives in this order is its primary label.
    pub const PRECEDENCE: [TaxonomyCategory; 13] = [
        TaxonomyCategory::NumericValueEncoded,
        TaxonomyCategory::NumericSequential,
        TaxonomyCategory::TypeCardinality,
        TaxonomyCategory::TypePolymorphic,
        TaxonomyCategory::DerivTemporary,
        TaxonomyCategory::DerivTypeDescriptive,
        TaxonomyCategory::DerivTransformation,
        TaxonomyCategory::ConciseAcronym,
        TaxonomyCategory::ConciseAbbreviated,
        TaxonomyCategory::ConciseSingleChar,
        TaxonomyCategory::StandardizedRepetitive,
        TaxonomyCategory::Colliding,
        TaxonomyCategory::InconsistentSemantic,
    ];

    pub fn precedence_rank(self) -> usize {
        Self::PRECEDENCE
            .iter()
            .position(|&c| c == self)
            .expect("every category has a precedence")
    }

    pub fn parent(self) -> ParentCategory {
        use TaxonomyCategory::*;
        match self {
            StandardizedRepetitive => ParentCategory::StandardizedRepetitive,
            InconsistentSemantic => ParentCategory::InconsistentSemantic,
            Colliding => ParentCategory::Colliding,
            TypePolymorphic | TypeCardinality => ParentCategory::TypeBasedVariants,
            DerivTransformation | DerivTypeDescriptive | DerivTemporary => {
                ParentCategory::DerivationalVariants
            }
            NumericSequential | NumericValueEncoded => {
                ParentCategory::NumericallyDistinguishedVariants
            }
            ConciseAbbreviated | ConciseAcronym | ConciseSingleChar => {
                ParentCategory::ConciseVariants
            }
        }
    }

    pub fn subcategory_name(self) -> Option<&'static str> {
        use TaxonomyCategory::*;
        match self {
            StandardizedRepetitive | InconsistentSemantic | Colliding => None,
            TypePolymorphic => Some("Polymorphic Names"),
            TypeCardinality => Some("Cardinality Names"),
            DerivTransformation => Some("Transformation Names"),
            DerivTypeDescriptive => Some("Type-Descriptive Names"),
            DerivTemporary => Some("Temporary Names"),
            NumericSequential => Some("Sequential Numeric Names"),
            NumericValueEncoded => Some("Value-Encoded Names"),
            ConciseAbbreviated => Some("Abbreviated"),
            ConciseAcronym => Some("Acronym"),
            ConciseSingleChar => Some("Single-Character"),
        }
    }

    /// "Parent - Subcategory" label used in human-readable reports.
    pub fn display_name(self) -> String {
        let parent = self.parent().display_name();
        match self.subcategory_name() {
            Some(sub) => format!("{parent} - {sub}"),
            None => parent.to_string(),
        }
    }

    pub fn as_str(self) -> &'static str {
        use TaxonomyCategory::*;
        match self {
            StandardizedRepetitive => "standardized_repetitive",
            InconsistentSemantic => "inconsistent_semantic",
            Colliding => "colliding",
            TypePolymorphic => "type_polymorphic",
            TypeCardinality => "type_cardinality",
            DerivTransformation => "deriv_transformation",
            DerivTypeDescriptive => "deriv_type_descriptive",
            DerivTemporary => "deriv_temporary",
            NumericSequential => "numeric_sequential",
            NumericValueEncoded => "numeric_value_encoded",
            ConciseAbbreviated => "concise_abbreviated",
            ConciseAcronym => "concise_acronym",
            ConciseSingleChar => "concise_single_char",
        }
    }
}

impl fmt::Display for TaxonomyCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    High,
    Medium,
    Low,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_category_maps_to_one_parent() {
        let parents: std::collections::BTreeSet<_> =
            TaxonomyCategory::ALL.iter().map(|c| c.parent()).collect();
        assert_eq!(parents.len(), 7);
        assert_eq!(parents.into_iter().collect::<Vec<_>>(), ParentCategory::ALL);
    }

    #[test]
    fn precedence_is_a_permutation() {
        let mut p = TaxonomyCategory::PRECEDENCE.to_vec();
        p.sort();
        assert_eq!(p, TaxonomyCategory::ALL);
    }

    #[test]
    fn serde_names_match_as_str() {
        for c in TaxonomyCategory::ALL {
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.as_str()));
        }
        assert_eq!(
            TaxonomyCategory::ConciseSingleChar.display_name(),
            "Concise Variants - Single-Character"
        );
    }
}
