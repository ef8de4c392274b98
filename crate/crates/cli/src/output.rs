use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Tsv,
    Json,
}

/// Serializes records with a header row (CSV/TSV) or as a JSON array.
pub fn render<T: Serialize>(records: &[T], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(records).map_err(|e| CliError::Output(e.to_string()))?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv | Format::Tsv => {
            let delimiter = if format == Format::Csv { b',' } else { b'\t' };
            let mut writer = csv::WriterBuilder::new().delimiter(delimiter).from_writer(Vec::new());
            for record in records {
                writer.serialize(record).map_err(|e| CliError::Output(e.to_string()))?;
            }
            writer.into_inner().map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

/// Writes to `out`, or to stdout when `None`.
pub fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::Output(e.to_string())),
    }
}
