//! CSV ingestion: two columns `x,y`, an optional header row detected by a
//! non-numeric first record, decimal points only. The x column must be
//! strictly increasing; violations report the offending row.

use bvosc::{Interpolation, SampledSignal, Signal};

use crate::{CliError, CliResult};

pub fn read_csv(path: &str, mode: Interpolation) -> CliResult<Signal> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    parse_csv(&text, mode)
}

pub fn parse_csv(text: &str, mode: Interpolation) -> CliResult<Signal> {
    let mut grid = Vec::new();
    let mut values = Vec::new();
    let mut data_rows = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (a, b) = match (fields.next(), fields.next()) {
            (Some(a), Some(b)) => (a.trim(), b.trim()),
            _ => return Err(CliError::Input(format!("row {row}: expected two columns `x,y`"))),
        };
        if fields.next().is_some() {
            return Err(CliError::Input(format!("row {row}: expected exactly two columns")));
        }
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(x), Ok(y)) => {
                data_rows += 1;
                if let Some(&prev) = grid.last() {
                    if x <= prev {
                        return Err(CliError::Input(format!(
                            "row {row}: x column must be strictly increasing ({x} after {prev})"
                        )));
                    }
                }
                grid.push(x);
                values.push(y);
            }
            _ if data_rows == 0 && grid.is_empty() && idx == 0 => {
                // header row
            }
            _ => {
                return Err(CliError::Input(format!("row {row}: cannot parse `{line}` as numbers")))
            }
        }
    }
    if grid.len() < 2 {
        return Err(CliError::Input(format!(
            "need at least 2 data rows, found {}",
            grid.len()
        )));
    }
    SampledSignal::new(grid, values, mode)
        .map(Signal::Sampled)
        .map_err(CliError::input)
}
