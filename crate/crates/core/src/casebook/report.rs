use std::fmt::Write as _;

use crate::error::Result;

use super::{analyze_row, load_table, CaseVerdict, PolarizationRoot, TableId};

/// Runs every row of a table. Rows are independent and may be processed on `threads` workers;
/// the output is in row order regardless.
pub fn full_report(table: TableId, root: PolarizationRoot, threads: usize) -> Result<Vec<CaseVerdict>> {
    let rows = load_table(table)?;
    let threads = threads.clamp(1, rows.len().max(1));
    let mut results: Vec<(usize, Result<CaseVerdict>)> = if threads == 1 {
        rows.iter().enumerate().map(|(i, r)| (i, analyze_row(r, root))).collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let rows = &rows;
                    s.spawn(move || {
                        rows.iter()
                            .enumerate()
                            .skip(t)
                            .step_by(threads)
                            .map(|(i, r)| (i, analyze_row(r, root)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    results.sort_by_key(|(i, _)| *i);
    results.into_iter().map(|(_, r)| r).collect()
}

pub fn report_json(verdicts: &[CaseVerdict]) -> serde_json::Value {
    let passing: Vec<u32> = verdicts
        .iter()
        .filter(|v| v.criterion_pass)
        .map(|v| v.record.row)
        .collect();
    serde_json::json!({
        "pass_rows": passing,
        "rows": verdicts.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
    })
}

pub fn render_table(verdicts: &[CaseVerdict]) -> String {
    let mut out = String::new();
    let Some(first) = verdicts.first() else {
        return out;
    };
    writeln!(out, "table {} with {}", first.record.table.name(), first.root.name()).unwrap();
    writeln!(
        out,
        "{:>3}  {:>6}  {:<14} {:<26} {:<5} details",
        "row", "order", "group", "qK", "pass"
    )
    .unwrap();
    for v in verdicts {
        let r = &v.record;
        let status = if v.criterion_pass { "yes" } else { "no" };
        let detail = match &v.failure {
            Some(f) => f.clone(),
            None => {
                let ok: Vec<String> = v
                    .witnesses
                    .iter()
                    .filter(|w| w.passes())
                    .map(|w| format!("index {} -> {}", w.witness.index, w.witness.symbol()))
                    .collect();
                ok.join(", ")
            }
        };
        writeln!(
            out,
            "{:>3}  {:>6}  {:<14} {:<26} {:<5} {}",
            r.row,
            r.order,
            r.group,
            r.q_k.to_string(),
            status,
            detail
        )
        .unwrap();
        for c in &v.classes {
            let opt = |x: Option<String>| x.unwrap_or_else(|| "unknown".into());
            writeln!(
                out,
                "     T = {}  glue index {}  embeddings {}  n = {}  |Aut| = {}",
                c.t,
                c.glue_index,
                opt(c.embedding_count.map(|n| n.to_string())),
                opt(c.n_bar.map(|n| n.to_string())),
                opt(c.total_order.map(|n| n.to_string())),
            )
            .unwrap();
        }
    }
    out
}
