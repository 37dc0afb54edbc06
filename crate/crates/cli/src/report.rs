//! Two-column text table: one row per checkpoint, then `∞` with `δ(S)`.

use std::fmt::Write as _;

use minprime_core::{SumKind, SumTrace};

pub fn table(trace: &SumTrace, extra_rows: &[(String, String)]) -> String {
    let heading = match trace.kind {
        SumKind::MuOverNorm => "S(X)",
        SumKind::MuIndicator => "Σ μ·1_D",
    };
    let density = trace
        .density
        .map_or_else(|| "unknown".to_string(), |d| format!("{d:.5}"));
    let mut rows: Vec<(String, String)> = trace
        .checkpoints
        .iter()
        .map(|c| (c.x.to_string(), format!("{:.5}", c.value)))
        .collect();
    rows.push(("∞".into(), density));
    rows.extend(extra_rows.iter().cloned());

    let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    let _ = writeln!(out, "# {} over {}", trace.set.describe(), trace.field);
    let _ = writeln!(out, "{:>width$} | {heading}", "X");
    let _ = writeln!(out, "{}-+-{}", "-".repeat(width), "-".repeat(heading.chars().count().max(7)));
    for (x, v) in rows {
        let pad = width - x.chars().count();
        let _ = writeln!(out, "{}{x} | {v}", " ".repeat(pad));
    }
    out
}
