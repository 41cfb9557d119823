//! CSV readers. Rows are observations and columns variables; a first row
//! that does not parse as numbers is taken as a header. Empty or non-finite
//! cells are rejected.

use std::path::Path;

use logdet_core::{GaussianParams, SampleMatrix, SpdMatrix};

use crate::error::CliError;

fn format_error(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn is_header(record: &csv::StringRecord) -> bool {
    record
        .iter()
        .any(|f| !f.is_empty() && f.parse::<f64>().is_err())
}

/// Numeric rows of a CSV file, header removed.
pub fn read_table(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|source| CliError::Csv {
            path: path.to_path_buf(),
            source,
        })?;

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|source| CliError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        if i == 0 && is_header(&record) {
            continue;
        }
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(j, field)| parse_cell(path, field, line, j + 1))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(format_error(path, "no numeric rows"));
    }
    Ok(rows)
}

fn parse_cell(path: &Path, field: &str, line: u64, column: usize) -> Result<f64, CliError> {
    if field.is_empty() {
        return Err(format_error(
            path,
            format!("missing value at line {line}, column {column}"),
        ));
    }
    match field.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(format_error(
            path,
            format!("non-finite value `{field}` at line {line}, column {column}"),
        )),
        Err(_) => Err(format_error(
            path,
            format!("cannot parse `{field}` at line {line}, column {column}"),
        )),
    }
}

pub fn read_sample(path: &Path) -> Result<SampleMatrix, CliError> {
    let rows = read_table(path)?;
    SampleMatrix::from_rows(&rows).map_err(|e| format_error(path, e.to_string()))
}

/// Parameter file: the mean on the first row, then the `p` covariance rows.
pub fn read_params(path: &Path) -> Result<GaussianParams, CliError> {
    let rows = read_table(path)?;
    let p = rows[0].len();
    if rows.len() != p + 1 {
        return Err(format_error(
            path,
            format!(
                "expected a mean row and {p} covariance rows, found {} rows",
                rows.len()
            ),
        ));
    }
    let mean = rows[0].clone();
    let entries: Vec<f64> = rows[1..].iter().flatten().copied().collect();
    let covariance = SpdMatrix::new(p, entries).map_err(|e| format_error(path, e.to_string()))?;
    Ok(GaussianParams::new(mean, covariance)?)
}

pub fn read_points(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    read_table(path)
}
