//! Report serialization: CSV (RFC 4180, LF, 17-significant-digit floats)
//! and JSON. Identical inputs always serialize to identical bytes.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use ral_core::experiments::{
    CltReport, ExperimentRecord, GapRow, GapTrialRecord, ParisiRow, RatioReport, UniformRow,
};
use ral_core::stats::MaxMoments;

use crate::CliError;

#[derive(Debug, Clone)]
pub enum Field {
    U64(u64),
    F64(f64),
}

impl Field {
    fn csv_cell(&self) -> String {
        match self {
            Field::U64(v) => v.to_string(),
            // One leading digit plus 16 fractional: 17 significant digits,
            // enough to round-trip any f64.
            Field::F64(v) => format!("{v:.16e}"),
        }
    }

    fn json_value(&self) -> Result<Value, CliError> {
        match self {
            Field::U64(v) => Ok(json!(v)),
            Field::F64(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .ok_or_else(|| CliError::Runtime(format!("non-finite value {v} in report"))),
        }
    }
}

/// A rectangular report: header names plus uniform rows.
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Field::csv_cell).collect();
            w.write_record(&cells)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut items = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            for (name, field) in self.headers.iter().zip(row) {
                obj.insert((*name).to_string(), field.json_value()?);
            }
            items.push(Value::Object(obj));
        }
        let mut text = serde_json::to_string_pretty(&Value::Array(items))
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn render(&self, format: crate::Format) -> Result<String, CliError> {
        match format {
            crate::Format::Csv => self.to_csv(),
            crate::Format::Json => self.to_json(),
        }
    }
}

pub fn write_out(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn ratio_table(rows: &[RatioReport]) -> Table {
    Table {
        headers: vec!["n", "mean_value", "std_error", "ratio", "predicted_ratio"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Field::U64(r.n as u64),
                    Field::F64(r.mean_value),
                    Field::F64(r.std_error),
                    Field::F64(r.ratio),
                    Field::F64(r.predicted_ratio),
                ]
            })
            .collect(),
    }
}

pub fn clt_table(r: &CltReport) -> Table {
    Table {
        headers: vec![
            "n",
            "ks_to_phi",
            "ks_sample_std",
            "sample_mean",
            "sample_var",
            "predicted_A",
            "predicted_Bsq_exact",
        ],
        rows: vec![vec![
            Field::U64(r.n as u64),
            Field::F64(r.ks_to_phi),
            Field::F64(r.ks_sample_std),
            Field::F64(r.sample_mean),
            Field::F64(r.sample_var),
            Field::F64(r.predicted_a),
            Field::F64(r.predicted_bsq_exact),
        ]],
    }
}

pub fn parisi_table(rows: &[ParisiRow]) -> Table {
    Table {
        headers: vec!["n", "mc_min_mean", "std_error", "parisi_value"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Field::U64(r.n as u64),
                    Field::F64(r.mc_min_mean),
                    Field::F64(r.std_error),
                    Field::F64(r.parisi_value),
                ]
            })
            .collect(),
    }
}

pub fn uniform_table(rows: &[UniformRow]) -> Table {
    Table {
        headers: vec!["n", "mc_min_mean", "std_error", "steele_value"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Field::U64(r.n as u64),
                    Field::F64(r.mc_min_mean),
                    Field::F64(r.std_error),
                    Field::F64(r.steele_value),
                ]
            })
            .collect(),
    }
}

pub fn gap_table(rows: &[GapRow]) -> Table {
    Table {
        headers: vec!["n", "greedy_mean", "exact_mean", "gap"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Field::U64(r.n as u64),
                    Field::F64(r.greedy_mean),
                    Field::F64(r.exact_mean),
                    Field::F64(r.gap),
                ]
            })
            .collect(),
    }
}

pub fn oracle_table(rows: &[MaxMoments]) -> Table {
    Table {
        headers: vec!["m", "mean", "variance", "third_abs_central"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Field::U64(r.m),
                    Field::F64(r.mean),
                    Field::F64(r.variance),
                    Field::F64(r.third_abs_central),
                ]
            })
            .collect(),
    }
}

pub fn records_json(records: &[ExperimentRecord]) -> Result<String, CliError> {
    let items: Vec<Value> = records
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "trial": r.trial,
                "value": r.value,
                "elapsed_ms": r.elapsed_ms,
                "seed": { "master": r.seed.master, "trial": r.seed.trial },
            })
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&Value::Array(items))
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn gap_records_json(records: &[GapTrialRecord]) -> Result<String, CliError> {
    let items: Vec<Value> = records
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "trial": r.trial,
                "greedy_value": r.greedy_value,
                "exact_value": r.exact_value,
                "elapsed_ms": r.elapsed_ms,
                "seed": { "master": r.seed.master, "trial": r.seed.trial },
            })
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&Value::Array(items))
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
