//! Plain-text rendering of correction results and simulator reports.

use std::fmt::Write as _;

use pellcode_core::channel::{PatternTally, SimReport};
use pellcode_core::{CorrectionResult, IntMatrix};

fn inline(m: &IntMatrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

pub fn correction(result: &CorrectionResult) -> String {
    let mut out = String::new();
    writeln!(out, "status: {}", result.status).unwrap();
    if let Some(fault) = result.fault {
        writeln!(out, "fault: {fault}").unwrap();
    }
    if let Some(m) = &result.message {
        writeln!(out, "message:").unwrap();
        out.push_str(&m.to_string());
    }
    writeln!(out, "candidates: {}", result.candidates.len()).unwrap();
    for (i, c) in result.candidates.iter().enumerate() {
        writeln!(
            out,
            "  {}: fault={} det={} code={} message={}",
            i + 1,
            c.fault,
            c.det_m,
            inline(&c.code),
            inline(&c.message)
        )
        .unwrap();
    }
    for note in &result.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

/// `recovered / trials` as a percentage with two decimals, computed exactly.
fn rate(t: &PatternTally) -> String {
    if t.trials == 0 {
        return "-".to_string();
    }
    let basis = (u128::from(t.recovered) * 10_000 + u128::from(t.trials) / 2) / u128::from(t.trials);
    format!("{}.{:02}%", basis / 100, basis % 100)
}

const COLUMNS: [&str; 9] = [
    "pattern",
    "trials",
    "silent",
    "corrected",
    "ambiguous",
    "uncorrectable",
    "recovered",
    "miscorrected",
    "truth-rate",
];

fn cells(label: String, t: &PatternTally) -> [String; 9] {
    [
        label,
        t.trials.to_string(),
        t.silent.to_string(),
        t.corrected.to_string(),
        t.ambiguous.to_string(),
        t.uncorrectable.to_string(),
        t.recovered.to_string(),
        t.miscorrected.to_string(),
        rate(t),
    ]
}

fn config_line(report: &SimReport) -> String {
    let c = &report.config;
    let weights: Vec<String> = c.pattern_weights.iter().map(|w| w.to_string()).collect();
    format!(
        "trials={} seed={} magnitude={} weights={} n={}..{} entries={}..{}",
        c.trials,
        c.seed,
        c.magnitude,
        weights.join(","),
        c.n_range.0,
        c.n_range.1,
        c.entry_range.0,
        c.entry_range.1
    )
}

/// Aligned table: one row per pattern that received trials, then totals.
pub fn sim_table(report: &SimReport) -> String {
    let mut rows: Vec<[String; 9]> = vec![COLUMNS.map(String::from)];
    for t in report.tallies.iter().filter(|t| t.trials > 0) {
        rows.push(cells(t.pattern.to_string(), t));
    }
    rows.push(cells("total".to_string(), &report.total()));
    let widths: Vec<usize> = (0..9).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();

    let mut out = String::new();
    writeln!(out, "{}", config_line(report)).unwrap();
    for row in &rows {
        let mut line = format!("{:<w$}", row[0], w = widths[0]);
        for (cell, w) in row.iter().zip(&widths).skip(1) {
            write!(line, "  {cell:>w$}").unwrap();
        }
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    out
}

/// Machine-readable `key=value` lines covering every pattern.
pub fn sim_kv(report: &SimReport) -> String {
    let c = &report.config;
    let mut out = String::new();
    writeln!(out, "trials={}", c.trials).unwrap();
    writeln!(out, "seed={}", c.seed).unwrap();
    writeln!(out, "magnitude={}", c.magnitude).unwrap();
    writeln!(out, "n_min={}", c.n_range.0).unwrap();
    writeln!(out, "n_max={}", c.n_range.1).unwrap();
    writeln!(out, "entry_min={}", c.entry_range.0).unwrap();
    writeln!(out, "entry_max={}", c.entry_range.1).unwrap();
    let all: Vec<(String, PatternTally)> = report
        .tallies
        .iter()
        .map(|t| (format!("pattern.{}", t.pattern), *t))
        .chain(std::iter::once(("total".to_string(), report.total())))
        .collect();
    for (key, t) in all {
        writeln!(out, "{key}.trials={}", t.trials).unwrap();
        writeln!(out, "{key}.silent={}", t.silent).unwrap();
        writeln!(out, "{key}.corrected={}", t.corrected).unwrap();
        writeln!(out, "{key}.ambiguous={}", t.ambiguous).unwrap();
        writeln!(out, "{key}.uncorrectable={}", t.uncorrectable).unwrap();
        writeln!(out, "{key}.recovered={}", t.recovered).unwrap();
        writeln!(out, "{key}.miscorrected={}", t.miscorrected).unwrap();
    }
    out
}
