use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{CategoryLabel, TaxonomyCategory};

use super::{ProjectSummary, ReportError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown report format `{other}` (json, csv, markdown)")),
        }
    }
}

/// A rendered report. CSV output carries the labels as a second table.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedReport {
    pub main: String,
    pub labels_csv: Option<String>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    summary: &'a ProjectSummary,
    labels: &'a [CategoryLabel],
}

pub fn render(
    summary: &ProjectSummary,
    labels: &[CategoryLabel],
    format: ReportFormat,
) -> Result<RenderedReport, ReportError> {
    Ok(match format {
        ReportFormat::Json => {
            let mut main = serde_json::to_string_pretty(&JsonReport { summary, labels })?;
            main.push('\n');
            RenderedReport {
                main,
                labels_csv: None,
            }
        }
        ReportFormat::Csv => RenderedReport {
            main: summary_csv(std::slice::from_ref(summary))?,
            labels_csv: Some(labels_csv(labels)?),
        },
        ReportFormat::Markdown => RenderedReport {
            main: markdown(summary),
            labels_csv: None,
        },
    })
}

/// One row per project: counts, then one column per category.
pub fn summary_csv(summaries: &[ProjectSummary]) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "project",
        "total_identifiers",
        "analyzed_identifiers",
        "similar_count",
        "similar_pct",
    ];
    header.extend(TaxonomyCategory::ALL.iter().map(|c| c.as_str()));
    w.write_record(&header)?;
    for s in summaries {
        let mut row = vec![
            s.project.clone(),
            s.total_identifiers.to_string(),
            s.analyzed_identifiers.to_string(),
            s.similar_identifier_count.to_string(),
            format!("{:.2}", s.similar_pct),
        ];
        row.extend(
            TaxonomyCategory::ALL
                .iter()
                .map(|c| s.category_counts.get(c).map_or(0, |cc| cc.count).to_string()),
        );
        w.write_record(&row)?;
    }
    finish_csv(w)
}

pub fn labels_csv(labels: &[CategoryLabel]) -> Result<String, ReportError> {
    let mut buf = Vec::new();
    write_labels_csv(labels, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv of UTF-8 fields is UTF-8"))
}

fn write_labels_csv<W: Write>(labels: &[CategoryLabel], out: W) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "left_id",
        "right_id",
        "left_name",
        "right_name",
        "category",
        "confidence",
        "needs_review",
        "primary",
        "rationale",
        "group",
    ])?;
    for l in labels {
        let confidence = serde_json::to_value(l.confidence)?;
        w.write_record([
            l.left_id.as_str(),
            l.right_id.as_str(),
            l.left_name.as_str(),
            l.right_name.as_str(),
            l.category.as_str(),
            confidence.as_str().unwrap_or_default(),
            if l.needs_review { "true" } else { "false" },
            if l.primary { "true" } else { "false" },
            l.rationale.as_str(),
            &l.group.as_ref().map(|g| g.join(";")).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| ReportError::Csv(e.into()))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, ReportError> {
    let bytes = w.into_inner().map_err(|e| ReportError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
}

fn markdown(s: &ProjectSummary) -> String {
    let mut out = String::new();
    let similar = format!(
        "{} ({}%)",
        s.similar_identifier_count,
        super::format_percent(s.similar_identifier_count as u64, s.analyzed_identifiers as u64, 2)
    );
    let mut top: Vec<String> = s
        .top_categories
        .iter()
        .map(|c| {
            let share = s.category_counts.get(c).map_or(0.0, |cc| cc.share);
            format!("{} ({share:.2}%)", c.display_name())
        })
        .collect();
    top.resize(3, "-".to_string());

    let _ = writeln!(out, "| Project | Similarities Count | Top | 2nd | 3rd |");
    let _ = writeln!(out, "|---|---|---|---|---|");
    let _ = writeln!(
        out,
        "| {} | {similar} | {} | {} | {} |",
        escape(&s.project),
        top[0],
        top[1],
        top[2]
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Identifiers: {} total, {} analyzed. Labeled pairs: {} ({} need review).",
        s.total_identifiers, s.analyzed_identifiers, s.label_count, s.needs_review_count
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "| Category | Pairs | Share |");
    let _ = writeln!(out, "|---|---:|---:|");
    for c in TaxonomyCategory::ALL {
        let cc = s.category_counts.get(&c).copied().unwrap_or(super::CategoryCount {
            count: 0,
            share: 0.0,
        });
        let _ = writeln!(out, "| {} | {} | {:.2}% |", c.display_name(), cc.count, cc.share);
    }
    out
}

fn escape(cell: &str) -> String {
    cell.replace('|', "\\|")
}

/// Writes a report to `out` (standard output when `None`). CSV labels go
/// to `<stem>.labels.csv` next to the summary file, or follow the summary
/// after a blank line on standard output.
pub fn emit_report(
    summary: &ProjectSummary,
    labels: &[CategoryLabel],
    format: ReportFormat,
    out: Option<&Path>,
) -> Result<(), ReportError> {
    match out {
        None => {
            let path = Path::new("<stdout>");
            let mut w = BufWriter::new(std::io::stdout().lock());
            write_main(summary, labels, format, &mut w, path)?;
            if format == ReportFormat::Csv {
                w.write_all(b"\n").map_err(io_at(path))?;
                write_labels_csv(labels, &mut w)?;
            }
            w.flush().map_err(io_at(path))
        }
        Some(path) => {
            write_file(path, |w| write_main(summary, labels, format, w, path))?;
            if format == ReportFormat::Csv {
                write_file(&labels_path(path), |w| write_labels_csv(labels, w))?;
            }
            Ok(())
        }
    }
}

fn write_main<W: Write>(
    summary: &ProjectSummary,
    labels: &[CategoryLabel],
    format: ReportFormat,
    w: &mut W,
    path: &Path,
) -> Result<(), ReportError> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, &JsonReport { summary, labels })?;
            w.write_all(b"\n").map_err(io_at(path))
        }
        ReportFormat::Csv => w
            .write_all(summary_csv(std::slice::from_ref(summary))?.as_bytes())
            .map_err(io_at(path)),
        ReportFormat::Markdown => w.write_all(markdown(summary).as_bytes()).map_err(io_at(path)),
    }
}

fn io_at(path: &Path) -> impl Fn(std::io::Error) -> ReportError + '_ {
    move |source| ReportError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// `report.csv` -> `report.labels.csv`.
pub fn labels_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    path.with_file_name(format!("{stem}.labels.csv"))
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> Result<(), ReportError>,
) -> Result<(), ReportError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_at(path))?);
    body(&mut w)?;
    w.flush().map_err(io_at(path))
}
