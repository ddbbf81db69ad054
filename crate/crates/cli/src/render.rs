//! Output rendering: aligned text tables, fixed-column CSV, and JSON
//! documents (all carrying a `schema` tag validated by `--schema`).

use serde::Serialize;
use wfsim_core::{InequalityReport, MeasurementSetting, OutcomeTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub const CSV_HEADER: &str =
    "theta,I,sigma_I,E_000,E_100,E_010,E_001,E_110,E_101,E_011,E_111";

pub fn csv_row(report: &InequalityReport) -> String {
    let es: Vec<String> = report.correlators.iter().map(|c| c.e.to_string()).collect();
    format!(
        "{},{},{},{}",
        report.theta,
        report.i_value,
        report.sigma_i,
        es.join(",")
    )
}

fn counts_header() -> String {
    let cols: Vec<String> = OutcomeTriple::ALL
        .iter()
        .map(|t| format!("{:>7}", t.label()))
        .collect();
    format!(
        "{:<8}{}{:>9}{:>11}{:>10}{:>9}",
        "setting",
        cols.join(""),
        "valid",
        "attempted",
        "E",
        "sigma_E"
    )
}

pub fn report_text(report: &InequalityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "theta = {}  mode = {}  w-method = {}",
        report.theta, report.mode, report.w_method
    ));
    if report.mode != "analytic" {
        out.push_str(&format!(
            "  shots/setting = {}  seed = {}",
            report.shots_per_setting,
            report.seed.map_or_else(|| "-".into(), |s| s.to_string())
        ));
    }
    out.push('\n');
    if let Some(counts) = &report.counts {
        out.push('\n');
        out.push_str(&counts_header());
        out.push('\n');
        for (entry, corr) in counts.iter().zip(report.correlators.iter()) {
            let cols: Vec<String> = entry.counts.iter().map(|c| format!("{c:>7}")).collect();
            out.push_str(&format!(
                "{:<8}{}{:>9}{:>11}{:>10.4}{:>9.4}\n",
                entry.setting,
                cols.join(""),
                entry.valid_shots,
                entry.attempted_shots,
                corr.e,
                corr.sigma_e
            ));
        }
    } else {
        out.push('\n');
        out.push_str(&format!("{:<8}{:>10}\n", "setting", "E"));
        for corr in &report.correlators {
            out.push_str(&format!("{:<8}{:>10.4}\n", corr.setting, corr.e));
        }
    }
    out.push('\n');
    out.push_str(&format!(
        "I = {:.6}  sigma_I = {:.6}  violated = {} (classical bound 1, quantum maximum 1.5)\n",
        report.i_value, report.sigma_i, report.violated
    ));
    out
}

/// Output document for a single-setting run.
#[derive(Debug, Serialize)]
pub struct SettingRun {
    pub schema: String,
    pub theta: f64,
    pub setting: String,
    pub mode: String,
    pub w_method: String,
    pub shots: u64,
    pub seed: Option<u64>,
    pub e: f64,
    pub sigma_e: f64,
    pub valid_shots: u64,
    pub attempted_shots: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<[u64; 8]>,
}

pub const SETTING_SCHEMA: &str = "wfsim-setting/v1";

impl SettingRun {
    pub fn analytic(
        theta: f64,
        setting: MeasurementSetting,
        w_method: &str,
        e: f64,
    ) -> Self {
        Self {
            schema: SETTING_SCHEMA.to_string(),
            theta,
            setting: setting.label(),
            mode: "analytic".to_string(),
            w_method: w_method.to_string(),
            shots: 0,
            seed: None,
            e,
            sigma_e: 0.0,
            valid_shots: 0,
            attempted_shots: 0,
            counts: None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "theta = {}  setting = {}  mode = {}  w-method = {}",
            self.theta, self.setting, self.mode, self.w_method
        );
        if let Some(seed) = self.seed {
            out.push_str(&format!("  seed = {seed}"));
        }
        out.push('\n');
        if let Some(counts) = &self.counts {
            out.push('\n');
            out.push_str(&counts_header());
            out.push('\n');
            let cols: Vec<String> = counts.iter().map(|c| format!("{c:>7}")).collect();
            out.push_str(&format!(
                "{:<8}{}{:>9}{:>11}{:>10.4}{:>9.4}\n",
                self.setting,
                cols.join(""),
                self.valid_shots,
                self.attempted_shots,
                self.e,
                self.sigma_e
            ));
        } else {
            out.push_str(&format!("E = {:.6}\n", self.e));
        }
        out
    }

    pub fn csv(&self) -> String {
        let counts = self
            .counts
            .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_else(|| ["0"; 8].join(","));
        format!(
            "theta,setting,E,sigma_E,valid,attempted,{}\n{},{},{},{},{},{},{}",
            OutcomeTriple::ALL.map(|t| t.label()).join(","),
            self.theta,
            self.setting,
            self.e,
            self.sigma_e,
            self.valid_shots,
            self.attempted_shots,
            counts
        )
    }
}

/// Output document for histogram-style commands (W preparation and the
/// fusion demonstration).
#[derive(Debug, Serialize)]
pub struct Histogram {
    pub schema: String,
    pub shots: u64,
    pub seed: u64,
    pub valid_shots: u64,
    pub attempted_shots: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_ratio: Option<f64>,
    pub bins: Vec<HistogramBin>,
}

#[derive(Debug, Serialize)]
pub struct HistogramBin {
    pub bits: String,
    pub analytic: f64,
    pub count: u64,
    pub frequency: f64,
}

impl Histogram {
    pub fn text(&self, label: &str) -> String {
        let mut out = String::new();
        if let Some(method) = &self.method {
            out.push_str(&format!("method = {method}  "));
        }
        out.push_str(&format!("shots = {}  seed = {}\n", self.shots, self.seed));
        if let Some(ratio) = self.success_ratio {
            out.push_str(&format!(
                "valid = {} of {} attempted (ratio {:.4}, expected 0.5)\n",
                self.valid_shots, self.attempted_shots, ratio
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "{:<8}{:>10}{:>8}{:>11}\n",
            label, "analytic", "count", "frequency"
        ));
        for bin in &self.bins {
            out.push_str(&format!(
                "{:<8}{:>10.6}{:>8}{:>11.6}\n",
                bin.bits, bin.analytic, bin.count, bin.frequency
            ));
        }
        out
    }

    pub fn csv(&self, label: &str) -> String {
        let mut out = format!("{label},analytic,count,frequency\n");
        for bin in &self.bins {
            out.push_str(&format!(
                "{},{},{},{}\n",
                bin.bits, bin.analytic, bin.count, bin.frequency
            ));
        }
        out.trim_end().to_string()
    }
}

#[derive(Debug, Serialize)]
pub struct SweepDoc {
    pub schema: String,
    pub rows: Vec<InequalityReport>,
}

pub const SWEEP_SCHEMA: &str = "wfsim-sweep/v1";

pub fn sweep_text(rows: &[InequalityReport]) -> String {
    let mut out = format!("{:>22}{:>12}{:>12}{:>10}\n", "theta", "I", "sigma_I", "violated");
    for r in rows {
        out.push_str(&format!(
            "{:>22.16}{:>12.6}{:>12.6}{:>10}\n",
            r.theta, r.i_value, r.sigma_i, r.violated
        ));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ExportDoc {
    pub schema: String,
    pub path: String,
    pub bytes: usize,
}

pub const EXPORT_SCHEMA: &str = "wfsim-export/v1";

#[derive(Debug, Serialize)]
pub struct ClassicalDoc {
    pub schema: String,
    pub max_i: f64,
    pub strategies: usize,
    pub all_values_equal_one: bool,
}

pub const CLASSICAL_SCHEMA: &str = "wfsim-classical/v1";

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("document serializes")
}

/// The published JSON schema (draft-07) describing every document the CLI
/// can emit with `--format json`.
pub const JSON_SCHEMA: &str = r##"{
  "$schema": "http://json-schema.org/draft-07/schema#",
  "$id": "wfsim/v1",
  "title": "wfsim JSON outputs, version v1",
  "oneOf": [
    { "$ref": "#/definitions/report" },
    { "$ref": "#/definitions/setting_run" },
    { "$ref": "#/definitions/sweep" },
    { "$ref": "#/definitions/histogram" },
    { "$ref": "#/definitions/classical" },
    { "$ref": "#/definitions/export" }
  ],
  "definitions": {
    "correlator": {
      "type": "object",
      "required": ["setting", "e", "sigma_e", "valid_shots"],
      "properties": {
        "setting": { "type": "string" },
        "e": { "type": "number" },
        "sigma_e": { "type": "number" },
        "valid_shots": { "type": "integer" }
      }
    },
    "counts_entry": {
      "type": "object",
      "required": ["setting", "counts", "valid_shots", "attempted_shots"],
      "properties": {
        "setting": { "type": "string" },
        "counts": { "type": "array", "items": { "type": "integer" }, "minItems": 8, "maxItems": 8 },
        "valid_shots": { "type": "integer" },
        "attempted_shots": { "type": "integer" }
      }
    },
    "report": {
      "type": "object",
      "required": ["schema", "theta", "i_value", "sigma_i", "violated", "mode", "w_method", "shots_per_setting", "seed", "correlators"],
      "properties": {
        "schema": { "const": "wfsim-report/v1" },
        "theta": { "type": "number" },
        "i_value": { "type": "number" },
        "sigma_i": { "type": "number" },
        "violated": { "type": "boolean" },
        "mode": { "enum": ["analytic", "exact_postselect", "physical_rejection"] },
        "w_method": { "enum": ["rotation", "unitary"] },
        "shots_per_setting": { "type": "integer" },
        "seed": { "type": ["integer", "null"] },
        "correlators": { "type": "array", "items": { "$ref": "#/definitions/correlator" }, "minItems": 8, "maxItems": 8 },
        "counts": { "type": "array", "items": { "$ref": "#/definitions/counts_entry" }, "minItems": 8, "maxItems": 8 }
      }
    },
    "setting_run": {
      "type": "object",
      "required": ["schema", "theta", "setting", "mode", "w_method", "shots", "seed", "e", "sigma_e", "valid_shots", "attempted_shots"],
      "properties": {
        "schema": { "const": "wfsim-setting/v1" },
        "theta": { "type": "number" },
        "setting": { "type": "string" },
        "mode": { "type": "string" },
        "w_method": { "type": "string" },
        "shots": { "type": "integer" },
        "seed": { "type": ["integer", "null"] },
        "e": { "type": "number" },
        "sigma_e": { "type": "number" },
        "valid_shots": { "type": "integer" },
        "attempted_shots": { "type": "integer" },
        "counts": { "type": "array", "items": { "type": "integer" }, "minItems": 8, "maxItems": 8 }
      }
    },
    "sweep": {
      "type": "object",
      "required": ["schema", "rows"],
      "properties": {
        "schema": { "const": "wfsim-sweep/v1" },
        "rows": { "type": "array", "items": { "$ref": "#/definitions/report" } }
      }
    },
    "histogram": {
      "type": "object",
      "required": ["schema", "shots", "seed", "valid_shots", "attempted_shots", "bins"],
      "properties": {
        "schema": { "enum": ["wfsim-wstate/v1", "wfsim-fusion/v1"] },
        "shots": { "type": "integer" },
        "seed": { "type": "integer" },
        "valid_shots": { "type": "integer" },
        "attempted_shots": { "type": "integer" },
        "method": { "type": "string" },
        "success_ratio": { "type": "number" },
        "bins": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["bits", "analytic", "count", "frequency"],
            "properties": {
              "bits": { "type": "string" },
              "analytic": { "type": "number" },
              "count": { "type": "integer" },
              "frequency": { "type": "number" }
            }
          }
        }
      }
    },
    "classical": {
      "type": "object",
      "required": ["schema", "max_i", "strategies", "all_values_equal_one"],
      "properties": {
        "schema": { "const": "wfsim-classical/v1" },
        "max_i": { "type": "number" },
        "strategies": { "type": "integer" },
        "all_values_equal_one": { "type": "boolean" }
      }
    },
    "export": {
      "type": "object",
      "required": ["schema", "path", "bytes"],
      "properties": {
        "schema": { "const": "wfsim-export/v1" },
        "path": { "type": "string" },
        "bytes": { "type": "integer" }
      }
    }
  }
}
"##;
