//! Numeric CSV input and output.
//!
//! RFC 4180 dialect with a mandatory header row. Cells must parse as
//! finite numbers — missing or non-finite values are rejected at load time
//! with the offending row and column named. Output uses shortest
//! round-trip float rendering, so write-then-read restores every value
//! bit for bit.

use std::path::Path;

use sdshuffle::DataMatrix;

use crate::errors::{CliError, CliResult};

pub fn read_csv(path: &Path) -> CliResult<DataMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let names: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Parse(format!("{}: header: {e}", path.display())))?
        .iter()
        .map(str::to_owned)
        .collect();
    let p = names.len();

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); p];
    for (row_idx, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        if record.len() != p {
            return Err(CliError::Parse(format!(
                "{}: row {} has {} fields, expected {p}",
                path.display(),
                row_idx + 1,
                record.len()
            )));
        }
        for (col_idx, cell) in record.iter().enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| {
                CliError::Parse(format!(
                    "{}: row {}, column {:?}: not a number: {cell:?}",
                    path.display(),
                    row_idx + 1,
                    names[col_idx]
                ))
            })?;
            if !value.is_finite() {
                return Err(CliError::Parse(format!(
                    "{}: row {}, column {:?}: non-finite value {cell:?}",
                    path.display(),
                    row_idx + 1,
                    names[col_idx]
                )));
            }
            columns[col_idx].push(value);
        }
    }
    DataMatrix::from_columns(columns, names)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn write_csv(path: &Path, data: &DataMatrix) -> CliResult<()> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    writer
        .write_record(data.names())
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut row = vec![0.0f64; data.p()];
    for i in 0..data.n() {
        data.read_row(i, &mut row);
        writer
            .serialize(&row)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    writer
        .flush()
        .map_err(|e| CliError::io(path, e))?;
    Ok(())
}
