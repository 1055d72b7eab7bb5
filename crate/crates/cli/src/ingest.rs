//! Sequence ingestion from inline flags and `@file` references.

use std::fs;
use std::path::Path;

use mlcss_core::Sequence;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Fasta,
}

/// Loads every input. Inline values are one sequence each; `@path` values
/// are read from disk in the given format.
pub fn load_sequences(
    inputs: &[String],
    format: Format,
    fold_case: bool,
) -> Result<Vec<Sequence>, CliError> {
    let mut out = Vec::new();
    for input in inputs {
        match input.strip_prefix('@') {
            Some(path) => {
                let text = fs::read(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                let records = match format {
                    Format::Plain => parse_plain(&text),
                    Format::Fasta => parse_fasta(&text, Path::new(path))?,
                };
                if records.is_empty() {
                    return Err(CliError::Input(format!("{path}: no sequences found")));
                }
                out.extend(records);
            }
            None => out.push(input.as_bytes().to_vec()),
        }
    }
    if out.is_empty() {
        return Err(CliError::Input("no sequences given".into()));
    }
    Ok(out
        .into_iter()
        .map(|mut bytes| {
            if fold_case {
                bytes.make_ascii_lowercase();
            }
            Sequence::from_bytes(&bytes)
        })
        .collect())
}

/// One sequence per non-blank line, surrounding whitespace trimmed.
pub fn parse_plain(text: &[u8]) -> Vec<Vec<u8>> {
    text.split(|&b| b == b'\n')
        .map(|line| line.trim_ascii())
        .filter(|line| !line.is_empty())
        .map(<[u8]>::to_vec)
        .collect()
}

/// One sequence per `>` record with line breaks inside a record removed.
pub fn parse_fasta(text: &[u8], path: &Path) -> Result<Vec<Vec<u8>>, CliError> {
    let mut records: Vec<Vec<u8>> = Vec::new();
    for (lineno, line) in text.split(|&b| b == b'\n').enumerate() {
        let line = line.trim_ascii();
        if line.starts_with(b">") {
            records.push(Vec::new());
        } else if !line.is_empty() {
            match records.last_mut() {
                Some(record) => record.extend_from_slice(line),
                None => {
                    return Err(CliError::Input(format!(
                        "{}:{}: sequence data before the first '>' header",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
    }
    Ok(records)
}
