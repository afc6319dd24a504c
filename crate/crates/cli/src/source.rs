//! Where the cumulants come from: a catalog entry, an inline list or a JSON file.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use umbra_core::exact;
use umbra_core::{catalog_get, CatalogEntry, CumulantSeq, Rational, SequenceTriangle};

use crate::{CliError, SourceArgs};

pub enum Source {
    Catalog(CatalogEntry),
    Inline(CumulantSeq),
    File {
        label: String,
        cumulants: CumulantSeq,
        triangle: Option<SequenceTriangle>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Text(String),
    Integer(i64),
}

impl Number {
    fn parse(&self, field: &str) -> Result<Rational, CliError> {
        match self {
            Number::Integer(v) => Ok(Rational::from(*v)),
            Number::Text(s) => s
                .parse()
                .map_err(|e| CliError::Usage(format!("{field}: {e}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceFile {
    name: Option<String>,
    cumulants: Option<Vec<Number>>,
    rows: Option<Vec<Vec<Number>>>,
}

fn parse_param(raw: &str) -> Result<(String, Rational), CliError> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--param {raw:?}: expected key=value")))?;
    let value = value
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("--param {key}: {e}")))?;
    Ok((key.trim().to_owned(), value))
}

fn read_file(path: &Path) -> Result<Source, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: SourceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let label = file.name.clone().unwrap_or_else(|| {
        path.file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned()
    });
    match (file.cumulants, file.rows) {
        (Some(list), None) => {
            let values = list
                .iter()
                .enumerate()
                .map(|(i, v)| v.parse(&format!("{}: cumulants[{i}]", path.display())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Source::File {
                label,
                cumulants: CumulantSeq::new(values)?,
                triangle: None,
            })
        }
        (None, Some(rows)) => {
            let rows = rows
                .iter()
                .enumerate()
                .map(|(n, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(k, v)| v.parse(&format!("{}: rows[{n}][{k}]", path.display())))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let triangle = SequenceTriangle::from_rows(rows)?;
            Ok(Source::File {
                label,
                cumulants: exact::cumulants_of(&triangle),
                triangle: Some(triangle),
            })
        }
        _ => Err(CliError::Usage(format!(
            "{}: expected exactly one of \"cumulants\" or \"rows\"",
            path.display()
        ))),
    }
}

impl Source {
    pub fn resolve(args: &SourceArgs) -> Result<Source, CliError> {
        let given = [
            args.catalog.is_some(),
            args.cumulants.is_some(),
            args.file.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(CliError::Usage(
                "give exactly one of --catalog, --cumulants, --file".into(),
            ));
        }
        if !args.param.is_empty() && args.catalog.is_none() {
            return Err(CliError::Usage("--param only applies to --catalog".into()));
        }
        if let Some(name) = &args.catalog {
            let params = args
                .param
                .iter()
                .map(|p| parse_param(p))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Source::Catalog(catalog_get(name, &params)?));
        }
        if let Some(list) = &args.cumulants {
            return Ok(Source::Inline(CumulantSeq::parse_list(list)?));
        }
        read_file(args.file.as_deref().expect("checked above"))
    }

    /// `c_1..c_n`, zero-extended for inline and file sources.
    pub fn cumulants(&self, n: usize) -> CumulantSeq {
        match self {
            Source::Catalog(entry) => entry.cumulants(n.max(1)),
            Source::Inline(c) | Source::File { cumulants: c, .. } => c.extended(n.max(1)),
        }
    }

    pub fn catalog_entry(&self) -> Option<&CatalogEntry> {
        match self {
            Source::Catalog(entry) => Some(entry),
            _ => None,
        }
    }

    pub fn triangle(&self) -> Option<&SequenceTriangle> {
        match self {
            Source::File { triangle, .. } => triangle.as_ref(),
            _ => None,
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Catalog(entry) => write!(f, "{}", entry.label()),
            Source::Inline(c) => {
                let list: Vec<String> = c.values().iter().map(ToString::to_string).collect();
                write!(f, "cumulants({})", list.join(","))
            }
            Source::File { label, .. } => f.write_str(label),
        }
    }
}
