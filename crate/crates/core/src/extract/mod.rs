//! Identifier inventory extraction.
//!
//! A [`LanguageFrontEnd`] turns one source file into raw [`Declaration`]s;
//! [`parse_file`] stamps them with project/file metadata and stable ids, and
//! [`scan_project`] walks a tree, filters unit tests, parses in parallel and
//! merges everything into a canonically sorted [`IdentifierInventory`].

mod filter;
mod java;

use std::fmt;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;
use walkdir::WalkDir;

pub use filter::{is_test_file, PathFilter};
pub use java::JavaFrontEnd;

/// The declaration kinds captured in an inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentifierKind {
    Class,
    Enum,
    EnumConstant,
    Method,
    Parameter,
    Field,
    LocalVariable,
}

impl IdentifierKind {
    pub const ALL: [IdentifierKind; 7] = [
        IdentifierKind::Class,
        IdentifierKind::Enum,
        IdentifierKind::EnumConstant,
        IdentifierKind::Method,
        IdentifierKind::Parameter,
        IdentifierKind::Field,
        IdentifierKind::LocalVariable,
    ];

    /// Fields, parameters and locals.
    pub fn is_variable(self) -> bool {
        matches!(
            self,
            IdentifierKind::Field | IdentifierKind::Parameter | IdentifierKind::LocalVariable
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IdentifierKind::Class => "class",
            IdentifierKind::Enum => "enum",
            IdentifierKind::EnumConstant => "enum_constant",
            IdentifierKind::Method => "method",
            IdentifierKind::Parameter => "parameter",
            IdentifierKind::Field => "field",
            IdentifierKind::LocalVariable => "local_variable",
        }
    }
}

impl fmt::Display for IdentifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A declaration as reported by a language front-end, before it is tied to a
/// project and file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub kind: IdentifierKind,
    pub declared_type: Option<String>,
    pub enclosing_class: Option<String>,
    pub enclosing_method: Option<String>,
    pub line: u32,
    pub column: u32,
    pub initializer_literal: Option<String>,
    pub source_expression: Option<String>,
}

/// One declared identifier with its location and type metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentifierRecord {
    pub record_id: String,
    pub project: String,
    pub file_path: String,
    pub name: String,
    pub kind: IdentifierKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosing_class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosing_method: Option<String>,
    pub line: u32,
    pub column: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initializer_literal: Option<String>,
    /// Raw initializer or loop-iterable expression, whitespace-collapsed and
    /// truncated. Feeds the context comparison of the colliding-name detector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_expression: Option<String>,
}

impl IdentifierRecord {
    pub fn from_declaration(project: &str, file_path: &str, decl: Declaration) -> Self {
        let record_id = record_id(project, file_path, decl.line, decl.column, &decl.name);
        Self {
            record_id,
            project: project.to_string(),
            file_path: file_path.to_string(),
            name: decl.name,
            kind: decl.kind,
            declared_type: decl.declared_type,
            enclosing_class: decl.enclosing_class,
            enclosing_method: decl.enclosing_method,
            line: decl.line,
            column: decl.column,
            initializer_literal: decl.initializer_literal,
            source_expression: decl.source_expression,
        }
    }

    /// Checks the record-level invariants.
    pub fn validate(&self) -> Result<(), String> {
        if self.name.is_empty() || self.name.chars().any(char::is_whitespace) {
            return Err(format!("invalid identifier name {:?}", self.name));
        }
        if self.line == 0 || self.column == 0 {
            return Err(format!("{}: line and column must be >= 1", self.name));
        }
        if matches!(
            self.kind,
            IdentifierKind::Parameter | IdentifierKind::LocalVariable
        ) && self.enclosing_method.is_none()
        {
            return Err(format!("{} {} has no enclosing method", self.kind, self.name));
        }
        Ok(())
    }

    fn sort_key(&self) -> (&str, u32, u32, &str) {
        (&self.file_path, self.line, self.column, &self.name)
    }
}

/// Content hash of project, file, position and name; 32 hex digits.
pub fn record_id(project: &str, file_path: &str, line: u32, column: u32, name: &str) -> String {
    let mut hasher = Sha256::new();
    for part in [project, file_path, &line.to_string(), &column.to_string(), name] {
        hasher.update(part.as_bytes());
        hasher.update([0u8]);
    }
    hex::encode(&hasher.finalize()[..16])
}

/// All identifiers of one project, sorted by (file_path, line, column, name).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifierInventory {
    pub project: String,
    pub records: Vec<IdentifierRecord>,
    pub files_scanned: usize,
    pub files_failed: usize,
}

impl IdentifierInventory {
    /// Builds an inventory, sorting records canonically and dropping
    /// duplicate ids.
    pub fn new(project: impl Into<String>, mut records: Vec<IdentifierRecord>) -> Self {
        records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.record_id.cmp(&b.record_id)));
        let mut seen = std::collections::HashSet::new();
        records.retain(|r| seen.insert(r.record_id.clone()));
        Self {
            project: project.into(),
            records,
            files_scanned: 0,
            files_failed: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Writes one JSON object per record.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for record in &self.records {
            serde_json::to_writer(&mut out, record)?;
            out.write_all(b"\n")?;
        }
        out.flush()
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    /// Reads an inventory written by [`write_jsonl`](Self::write_jsonl).
    /// The project label is taken from the records, falling back to
    /// `default_project` for an empty file.
    pub fn read_jsonl<R: BufRead>(input: R, default_project: &str) -> Result<Self, JsonlError> {
        let records: Vec<IdentifierRecord> = crate::jsonl::read_lines(input)?;
        for (i, r) in records.iter().enumerate() {
            r.validate().map_err(|message| JsonlError::Invalid {
                line: i + 1,
                message,
            })?;
        }
        let project = records
            .first()
            .map(|r| r.project.clone())
            .unwrap_or_else(|| default_project.to_string());
        Ok(Self::new(project, records))
    }
}

pub use crate::jsonl::JsonlError;

/// Scan settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    /// Glob patterns (matched against the root-relative path) to skip.
    pub exclude: Vec<String>,
    /// Keep files the unit-test heuristic would drop.
    pub include_tests: bool,
    /// Abort when more than this fraction of candidate files fails to parse.
    pub max_failure_ratio: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            exclude: Vec::new(),
            include_tests: false,
            max_failure_ratio: 0.10,
        }
    }
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("root path {0} does not exist or is not a directory")]
    RootMissing(PathBuf),
    #[error("invalid exclusion glob `{pattern}`: {message}")]
    InvalidGlob { pattern: String, message: String },
    #[error("{failed} of {total} files failed to parse (limit {limit:.0}%)")]
    FailureThreshold {
        failed: usize,
        total: usize,
        limit: f64,
    },
    #[error("I/O error walking {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0}")]
pub struct ParseError(pub String);

/// A parser for one source language.
pub trait LanguageFrontEnd: Sync {
    /// File extensions (without the dot) this front-end handles.
    fn extensions(&self) -> &[&str];
    fn declarations(&self, source: &str) -> Result<Vec<Declaration>, ParseError>;
}

/// Parses one Java compilation unit into identifier records.
pub fn parse_file(
    file_path: &str,
    source_text: &str,
    project_label: &str,
) -> Result<Vec<IdentifierRecord>, ParseError> {
    parse_with(&JavaFrontEnd, file_path, source_text, project_label)
}

pub fn parse_with(
    front_end: &dyn LanguageFrontEnd,
    file_path: &str,
    source_text: &str,
    project_label: &str,
) -> Result<Vec<IdentifierRecord>, ParseError> {
    let mut records: Vec<IdentifierRecord> = front_end
        .declarations(source_text)?
        .into_iter()
        .map(|d| IdentifierRecord::from_declaration(project_label, file_path, d))
        .collect();
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(records)
}

/// Walks `root`, parses every non-excluded `.java` file and returns the
/// merged inventory. Files that fail to parse are counted and skipped.
pub fn scan_project(
    root: &Path,
    project_label: &str,
    config: &ScanConfig,
) -> Result<IdentifierInventory, ScanError> {
    scan_with(&JavaFrontEnd, root, project_label, config)
}

pub fn scan_with(
    front_end: &dyn LanguageFrontEnd,
    root: &Path,
    project_label: &str,
    config: &ScanConfig,
) -> Result<IdentifierInventory, ScanError> {
    if !root.is_dir() {
        return Err(ScanError::RootMissing(root.to_path_buf()));
    }
    let filter = PathFilter::new(config)?;
    let files = collect_files(front_end, root, &filter)?;
    if files.is_empty() {
        log::warn!("no source files found under {}", root.display());
    }

    let results: Vec<Result<Vec<IdentifierRecord>, String>> = files
        .par_iter()
        .map(|(abs, rel)| {
            let bytes = std::fs::read(abs).map_err(|e| format!("{rel}: {e}"))?;
            let text = String::from_utf8_lossy(&bytes);
            parse_with(front_end, rel, &text, project_label).map_err(|e| format!("{rel}: {e}"))
        })
        .collect();

    let mut records = Vec::new();
    let mut files_scanned = 0;
    let mut files_failed = 0;
    for result in results {
        match result {
            Ok(mut r) => {
                files_scanned += 1;
                records.append(&mut r);
            }
            Err(message) => {
                files_failed += 1;
                log::warn!("skipping {message}");
            }
        }
    }

    let total = files_scanned + files_failed;
    if total > 0 && files_failed as f64 / total as f64 > config.max_failure_ratio {
        return Err(ScanError::FailureThreshold {
            failed: files_failed,
            total,
            limit: config.max_failure_ratio * 100.0,
        });
    }

    let mut inventory = IdentifierInventory::new(project_label, records);
    inventory.files_scanned = files_scanned;
    inventory.files_failed = files_failed;
    Ok(inventory)
}

fn collect_files(
    front_end: &dyn LanguageFrontEnd,
    root: &Path,
    filter: &PathFilter,
) -> Result<Vec<(PathBuf, String)>, ScanError> {
    let mut files = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| ScanError::Io {
            path: e
                .path()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| root.display().to_string()),
            message: e.to_string(),
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let path = entry.path();
        let matches_ext = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| front_end.extensions().contains(&e));
        if !matches_ext {
            continue;
        }
        let rel = relative_slash_path(root, path);
        if filter.excludes(&rel) {
            continue;
        }
        files.push((path.to_path_buf(), rel));
    }
    Ok(files)
}

fn relative_slash_path(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}
