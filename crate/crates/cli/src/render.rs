use std::io::Write;

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Ten significant digits, fixed notation for moderate magnitudes.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..10).contains(&mag) {
        let decimals = (9 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.9e}")
    }
}

pub fn header(config: &RunConfig) -> Value {
    json!({
        "tool": "systole",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "config_hash": config.hash(),
    })
}

pub fn render(config: &RunConfig, results: Vec<Value>, table: &Table) -> Result<Vec<u8>, CliError> {
    match config.format {
        Format::Json => {
            let doc = json!({ "header": header(config), "results": results });
            let mut bytes = serde_json::to_vec_pretty(&doc).expect("json value serializes");
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => {
            let mut bytes = Vec::new();
            writeln!(bytes, "# systole {}", env!("CARGO_PKG_VERSION"))?;
            writeln!(bytes, "# config {}", serde_json::to_string(config).expect("config serializes"))?;
            writeln!(bytes, "# config_hash {}", config.hash())?;
            let mut w = csv::Writer::from_writer(bytes);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(num(22.01310267743148), "22.01310268");
        assert_eq!(num(0.574003387879122), "0.5740033879");
        assert_eq!(num(-10.4337), "-10.43370000");
        assert_eq!(num(1742400.0), "1742400.000");
        assert_eq!(num(1.5e12), "1.500000000e12");
        assert_eq!(num(0.0), "0");
    }
}
