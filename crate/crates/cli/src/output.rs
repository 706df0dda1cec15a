//! The machine-readable record every subcommand produces, and its three
//! renderings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Rendering of `-∞`, used by degenerate lower bounds.
pub const NEG_INFINITY: &str = "-infinity";
pub const POS_INFINITY: &str = "infinity";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub version: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<ResultRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub label: String,
    /// Lossless `num/den` when the value is an exact rational.
    pub exact: Option<String>,
    /// Fifteen significant digits.
    pub decimal: Option<String>,
    pub error_bound: Option<String>,
    pub fields: BTreeMap<String, String>,
}

impl ResultRow {
    pub fn new(label: impl Into<String>) -> Self {
        ResultRow { label: label.into(), exact: None, decimal: None, error_bound: None, fields: BTreeMap::new() }
    }

    pub fn exact(mut self, exact: String) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn decimal(mut self, value: f64) -> Self {
        self.decimal = Some(format_decimal(value));
        self
    }

    pub fn error_bound(mut self, bound: f64) -> Self {
        self.error_bound = Some(format_decimal(bound));
        self
    }

    pub fn field(mut self, key: &str, value: impl Into<String>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }
}

impl OutputRecord {
    pub fn new(command: &str, inputs: BTreeMap<String, String>) -> Self {
        OutputRecord {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            results: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    fn field_keys(&self) -> Vec<&str> {
        let keys: BTreeSet<&str> = self.results.iter().flat_map(|r| r.fields.keys().map(String::as_str)).collect();
        keys.into_iter().collect()
    }

    fn rows(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let keys = self.field_keys();
        let mut header: Vec<String> = ["label", "exact", "decimal", "error_bound"].map(String::from).to_vec();
        header.extend(keys.iter().map(|k| k.to_string()));
        let rows = self
            .results
            .iter()
            .map(|r| {
                let mut row = vec![
                    r.label.clone(),
                    r.exact.clone().unwrap_or_default(),
                    r.decimal.clone().unwrap_or_default(),
                    r.error_bound.clone().unwrap_or_default(),
                ];
                row.extend(keys.iter().map(|k| r.fields.get(*k).cloned().unwrap_or_default()));
                row
            })
            .collect();
        (header, rows)
    }

    pub fn to_csv(&self) -> String {
        let (header, rows) = self.rows();
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&header).expect("in-memory write");
        for row in rows {
            writer.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush to memory")).expect("utf-8 output")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (version {})", self.command, self.version);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let (header, rows) = self.rows();
        // drop columns that are empty in every row
        let used: Vec<usize> = (0..header.len()).filter(|&c| c == 0 || rows.iter().any(|r| !r[c].is_empty())).collect();
        let widths: Vec<usize> = used
            .iter()
            .map(|&c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> =
                used.iter().zip(&widths).map(|(&c, &w)| format!("{:<w$}", cells[c], w = w)).collect();
            parts.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&header));
        let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
        for row in &rows {
            let _ = writeln!(out, "{}", line(row));
        }
        out
    }
}

/// Fifteen significant digits in scientific notation; infinities as words.
pub fn format_decimal(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == f64::NEG_INFINITY {
        NEG_INFINITY.to_string()
    } else if x == f64::INFINITY {
        POS_INFINITY.to_string()
    } else {
        format!("{x:.14e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut inputs = BTreeMap::new();
        inputs.insert("count".to_string(), "2".to_string());
        let mut r = OutputRecord::new("demo", inputs);
        r.results.push(ResultRow::new("a").exact("1/24".into()).decimal(1.0 / 24.0).field("family", "x"));
        r.results.push(ResultRow::new("b,c").decimal(f64::NEG_INFINITY).error_bound(1e-9));
        r
    }

    #[test]
    fn decimals_have_fifteen_digits() {
        assert_eq!(format_decimal(1.0 / 24.0), "4.16666666666667e-2");
        assert_eq!(format_decimal(f64::NEG_INFINITY), "-infinity");
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(OutputRecord::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn csv_quotes_and_header() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("label,exact,decimal,error_bound,family"));
        assert_eq!(lines.nth(1), Some("\"b,c\",,-infinity,1.00000000000000e-9,"));
    }

    #[test]
    fn table_skips_empty_columns() {
        let mut r = sample();
        r.results.iter_mut().for_each(|row| row.error_bound = None);
        let t = r.to_table();
        assert!(!t.contains("error_bound"));
        assert!(t.contains("count = 2"));
    }
}
