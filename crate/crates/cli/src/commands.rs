use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use idsim_core::classify::{classify_candidates, read_labels, write_labels, CategoryLabel, ClassifyContext};
use idsim_core::extract::{scan_project, IdentifierInventory};
use idsim_core::lexicon::AbbreviationDictionary;
use idsim_core::pairing::TypeRegistry;
use idsim_core::report::{draw_sample, emit_report, restrict_labels, summarize};

use crate::config::ToolConfig;
use crate::error::{jsonl_error, CliError};

pub fn cmd_scan(config: &ToolConfig, root: &Path, project: Option<&str>, out: &str) -> Result<(), CliError> {
    let inventory = scan(config, root, project)?;
    write_to(out, |w| inventory.write_jsonl(w))
}

pub fn cmd_classify(config: &ToolConfig, inventory_path: &str, out: &str) -> Result<(), CliError> {
    let inventory = read_inventory(inventory_path)?;
    let labels = classify(config, &inventory)?;
    write_to(out, |w| write_labels(&labels, w))
}

pub fn cmd_report(config: &ToolConfig, labels_path: &str, inventory_path: &str, out: &str) -> Result<(), CliError> {
    let inventory = read_inventory(inventory_path)?;
    let labels = read_labels(open_in(labels_path)?).map_err(|e| jsonl_error(e, labels_path))?;
    report(config, &inventory, &labels, out)
}

pub fn cmd_analyze(
    config: &ToolConfig,
    root: &Path,
    project: Option<&str>,
    keep: Option<&Path>,
    out: &str,
) -> Result<(), CliError> {
    let inventory = scan(config, root, project)?;
    let labels = classify(config, &inventory)?;
    if let Some(dir) = keep {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(e, format!("creating {}", dir.display())))?;
        let inv_path = dir.join("inventory.jsonl");
        let labels_path = dir.join("labels.jsonl");
        write_to(&inv_path.to_string_lossy(), |w| inventory.write_jsonl(w))?;
        write_to(&labels_path.to_string_lossy(), |w| write_labels(&labels, w))?;
    }
    report(config, &inventory, &labels, out)
}

fn scan(config: &ToolConfig, root: &Path, project: Option<&str>) -> Result<IdentifierInventory, CliError> {
    let label = match project {
        Some(p) => p.to_string(),
        None => default_project(root),
    };
    let inventory = scan_project(root, &label, &config.scan)?;
    eprintln!(
        "scanned {} files ({} failed), {} identifiers",
        inventory.files_scanned,
        inventory.files_failed,
        inventory.len()
    );
    Ok(inventory)
}

fn default_project(root: &Path) -> String {
    std::fs::canonicalize(root)
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "project".to_string())
}

fn classify(config: &ToolConfig, inventory: &IdentifierInventory) -> Result<Vec<CategoryLabel>, CliError> {
    let dictionary = match &config.dictionary {
        Some(path) => AbbreviationDictionary::with_user_file(path)?,
        None => AbbreviationDictionary::default(),
    };
    let registry = match &config.registry {
        Some(path) => TypeRegistry::with_user_file(path)?,
        None => TypeRegistry::default(),
    };
    let ctx = ClassifyContext {
        config: &config.classify,
        dictionary: &dictionary,
        registry: &registry,
    };
    let labels = classify_candidates(inventory, &config.pairing, &ctx);
    log::info!("{} labels", labels.len());
    Ok(labels)
}

fn report(
    config: &ToolConfig,
    inventory: &IdentifierInventory,
    labels: &[CategoryLabel],
    out: &str,
) -> Result<(), CliError> {
    let sample = if config.sample {
        Some(draw_sample(inventory, config.sample_confidence, config.sample_margin, config.seed)?)
    } else {
        None
    };
    let summary = summarize(inventory, labels, sample.as_ref())?;
    let shown = match &sample {
        Some(s) => restrict_labels(labels, s),
        None => labels.to_vec(),
    };
    let path = (out != "-").then(|| Path::new(out));
    emit_report(&summary, &shown, config.format, path)?;
    Ok(())
}

fn read_inventory(path: &str) -> Result<IdentifierInventory, CliError> {
    IdentifierInventory::read_jsonl(open_in(path)?, "project").map_err(|e| jsonl_error(e, path))
}

fn open_in(path: &str) -> Result<Box<dyn BufRead>, CliError> {
    if path == "-" {
        return Ok(Box::new(BufReader::new(std::io::stdin())));
    }
    let file = File::open(path).map_err(|e| CliError::io(e, format!("opening {path}")))?;
    Ok(Box::new(BufReader::new(file)))
}

fn write_to(
    out: &str,
    write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let result = if out == "-" {
        write(&mut std::io::stdout().lock())
    } else {
        let file = File::create(out).map_err(|e| CliError::io(e, format!("creating {out}")))?;
        let mut w = BufWriter::new(file);
        write(&mut w).and_then(|()| w.flush())
    };
    result.map_err(|e| CliError::io(e, format!("writing {out}")))
}
