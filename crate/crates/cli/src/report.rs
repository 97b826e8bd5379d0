//! Run reports and their JSON and markdown renderings.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub results: Value,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json::Map is ordered by key, so a round trip through Value sorts
    let v = serde_json::to_value(value).expect("report is serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("value is serializable");
    s.push('\n');
    s
}

/// A markdown table with every column padded to its widest cell.
pub fn markdown_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.replace('|', "\\|")).collect())
        .collect();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn render_markdown(report: &RunReport, body: &str) -> String {
    let mut out = format!("# k3five {}\n\n", report.command.join(" "));
    if let Some(seed) = report.seed {
        out.push_str(&format!("seed: {seed}\n\n"));
    }
    if !body.is_empty() {
        out.push_str(body);
        out.push('\n');
    }
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|(name, ok)| vec![name.clone(), if *ok { "pass" } else { "FAIL" }.to_string()])
        .collect();
    out.push_str(&markdown_table(&["check", "result"], &rows));
    if let Some(t) = &report.timings_ms {
        let rows: Vec<Vec<String>> = t.iter().map(|(k, v)| vec![k.clone(), v.to_string()]).collect();
        out.push('\n');
        out.push_str(&markdown_table(&["stage", "ms"], &rows));
    }
    out
}
