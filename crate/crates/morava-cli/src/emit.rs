//! Deterministic emission: pretty JSON, plain CSV, fixed-width text.
//! The same run produces byte-identical output every time; CSV and JSON
//! carry the same numeric content.

use crate::config::Format;
use crate::report::{ReportDocument, SweepDocument};

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => String::new(),
    }
}

pub fn emit_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let inv = &doc.invariants;
            let tor_ranks: Vec<String> = match &inv.tor {
                Some(rows) => rows
                    .iter()
                    .filter(|r| r.s >= 1)
                    .map(|r| r.rank.to_string())
                    .collect(),
                None => vec![],
            };
            let mut header = vec![
                "p".to_string(),
                "n".to_string(),
                "period".to_string(),
                "rank".to_string(),
                "degree_lift".to_string(),
                "degree_mod".to_string(),
                "epsilon_pi".to_string(),
                "frobenius_ok".to_string(),
            ];
            for (i, _) in tor_ranks.iter().enumerate() {
                header.push(format!("tor{}", i + 1));
            }
            let mut row = vec![
                doc.context.p.to_string(),
                doc.context.n.to_string(),
                doc.context.period.to_string(),
                doc.rank.to_string(),
                inv.degree_lift.map(|l| l.to_string()).unwrap_or_default(),
                inv.degree_mod.to_string(),
                inv.epsilon_pi.to_string(),
                inv.frobenius.nondegenerate.to_string(),
            ];
            row.extend(tor_ranks);
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        Format::Text => {
            let inv = &doc.invariants;
            let mut out = String::new();
            out.push_str(&format!(
                "{:<14}p={} n={} period={}\n",
                "context", doc.context.p, doc.context.n, doc.context.period
            ));
            for e in &doc.presentation {
                let rel = if e.relation_rhs.is_empty() {
                    "0".to_string()
                } else {
                    e.relation_rhs
                        .iter()
                        .map(|(c, k)| format!("{c}*{}^{k}", e.name))
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                out.push_str(&format!(
                    "{:<14}{} deg {} ({} mod L), {}^{} = {}\n",
                    "generator", e.name, e.degree_lift, e.degree_mod, e.name, e.truncation, rel
                ));
            }
            out.push_str(&format!("{:<14}{}\n", "rank", doc.rank));
            let pi_str = inv
                .pi
                .iter()
                .map(|(c, exps)| format!("{c}*{exps:?}"))
                .collect::<Vec<_>>()
                .join(" + ");
            out.push_str(&format!("{:<14}{}\n", "pi", pi_str));
            out.push_str(&format!(
                "{:<14}{} ({} mod L)\n",
                "degree",
                inv.degree_lift
                    .map(|l| l.to_string())
                    .unwrap_or_else(|| "null".into()),
                inv.degree_mod
            ));
            out.push_str(&format!("{:<14}{}\n", "epsilon_pi", inv.epsilon_pi));
            out.push_str(&format!(
                "{:<14}nondegenerate={}\n",
                "frobenius", inv.frobenius.nondegenerate
            ));
            match &inv.tor {
                Some(rows) => {
                    for r in rows {
                        out.push_str(&format!(
                            "{:<14}s={} rank={} degrees={:?}\n",
                            "tor", r.s, r.rank, r.degrees
                        ));
                    }
                }
                None => out.push_str(&format!("{:<14}skipped\n", "tor")),
            }
            for note in &doc.notes {
                out.push_str(&format!("{:<14}{}\n", "note", note));
            }
            out
        }
    }
}

pub fn emit_sweep(doc: &SweepDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("sweep serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::new();
            let mut header = vec![
                "p".to_string(),
                "n".to_string(),
                "q".to_string(),
                "rank".to_string(),
                "degree_lift".to_string(),
                "degree_mod".to_string(),
                "epsilon_pi".to_string(),
                "frobenius_ok".to_string(),
            ];
            for s in 1..=doc.s_max {
                header.push(format!("tor{s}"));
            }
            header.push("error".to_string());
            out.push_str(&header.join(","));
            out.push('\n');
            for row in &doc.rows {
                let mut cells = vec![
                    row.p.to_string(),
                    row.n.to_string(),
                    row.q.to_string(),
                    opt(&row.rank),
                    opt(&row.degree_lift),
                    opt(&row.degree_mod),
                    opt(&row.epsilon_pi),
                    opt(&row.frobenius_ok),
                ];
                for s in 0..doc.s_max as usize {
                    cells.push(
                        row.tor
                            .as_ref()
                            .and_then(|t| t.get(s))
                            .map(|r| r.to_string())
                            .unwrap_or_default(),
                    );
                }
                cells.push(
                    row.error
                        .as_ref()
                        .map(|e| e.code.to_string())
                        .unwrap_or_default(),
                );
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "{:>3} {:>3} {:>3} {:>6} {:>12} {:>8} {:>4} {:>5}",
                "p", "n", "q", "rank", "d_lift", "d_mod", "eps", "frob"
            ));
            for s in 1..=doc.s_max {
                out.push_str(&format!(" {:>5}", format!("tor{s}")));
            }
            out.push_str(&format!(" {:>20}\n", "error"));
            for row in &doc.rows {
                out.push_str(&format!(
                    "{:>3} {:>3} {:>3} {:>6} {:>12} {:>8} {:>4} {:>5}",
                    row.p,
                    row.n,
                    row.q,
                    opt(&row.rank),
                    opt(&row.degree_lift),
                    opt(&row.degree_mod),
                    opt(&row.epsilon_pi),
                    opt(&row.frobenius_ok),
                ));
                for s in 0..doc.s_max as usize {
                    let cell = row
                        .tor
                        .as_ref()
                        .and_then(|t| t.get(s))
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "-".into());
                    out.push_str(&format!(" {cell:>5}"));
                }
                let err = row
                    .error
                    .as_ref()
                    .map(|e| e.code.to_string())
                    .unwrap_or_default();
                out.push_str(&format!(" {err:>20}\n"));
            }
            out
        }
    }
}
