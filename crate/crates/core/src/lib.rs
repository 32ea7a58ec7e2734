//! Identifier name similarity analysis for Java code bases.
//!
//! The pipeline runs in four stages: [`extract`] builds an identifier
//! inventory from a source tree, [`pairing`] proposes candidate pairs with
//! lexical/type/scope features, [`classify`] assigns taxonomy labels and
//! [`report`] aggregates them into per-project summaries.

pub mod classify;
pub mod extract;
pub mod jsonl;
pub mod lexicon;
pub mod pairing;
pub mod report;
