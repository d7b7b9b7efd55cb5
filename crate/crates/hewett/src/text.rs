//! Aligned plain-text rendering of report envelopes.

use crate::report::Envelope;
use serde_json::Value;
use std::fmt::Write;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Columns padded to the widest cell.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for r in rows {
        line(r);
    }
    out
}

fn rows_of(v: &Value, keys: &[&str]) -> Vec<Vec<String>> {
    v.as_array()
        .map(|a| a.iter().map(|r| keys.iter().map(|k| cell(&r[*k])).collect()).collect())
        .unwrap_or_default()
}

pub fn render(env: &Envelope) -> String {
    let mut out = String::new();
    let r = &env.results;
    match env.command.as_str() {
        "classify" => {
            let keys = ["p", "m", "alpha", "condition", "verdict", "note"];
            out.push_str(&table(&keys, &rows_of(&r["rows"], &keys)));
        }
        "profile" => {
            let _ = writeln!(out, "p = {}  m = {}  alpha = {}  n = {}", r["p"], r["m"], r["alpha"], r["n"]);
            let keys = ["t", "conjugate", "inv"];
            out.push_str(&table(&keys, &rows_of(&r["places"], &keys)));
            let _ = writeln!(out, "total = {}", cell(&r["total"]));
        }
        "hermitian" => {
            let _ = writeln!(out, "p = {}  n = {}  d0 = {}  signature = {}", r["p"], r["n"], r["d0"], r["signature"]);
            let keys = ["place", "ramified", "disc_class", "witt_index"];
            out.push_str(&table(&keys, &rows_of(&r["places"], &keys)));
            if let Some(n) = r.get("norm_check") {
                let _ = writeln!(out, "norm = {}  class at 2 = {}", cell(&n["value"]), cell(&n["class_at_2"]));
            }
        }
        _ => {
            if let Some(obj) = r.as_object() {
                let rows: Vec<Vec<String>> = obj
                    .iter()
                    .filter(|(_, v)| !v.is_array())
                    .map(|(k, v)| vec![k.clone(), cell(v)])
                    .collect();
                out.push_str(&table(&["key", "value"], &rows));
            }
        }
    }
    if !env.checks.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> =
            env.checks.iter().map(|c| vec![c.name.clone(), c.status.as_str().to_string(), c.detail.clone()]).collect();
        out.push_str(&table(&["check", "status", "detail"], &rows));
    }
    out
}
