//! Library surface of the `morava` CLI: configuration, commands, report
//! documents and deterministic emission. The binary in `main.rs` is a thin
//! argument-parsing wrapper so everything here is testable directly.

pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod report;

pub use commands::{
    check_algebra_axioms, cmd_check, cmd_group, cmd_rw, cmd_sweep, CheckEntry, CheckOutcome,
    GroupSpec, PipelineConfig,
};
pub use config::{parse_range, parse_set, rank_budget, Format, DEFAULT_RANK_BUDGET};
pub use error::{CliError, ErrorCode};
pub use report::{ReportDocument, SweepDocument, SweepRow};

use serde::Deserialize;

/// On-disk group table: `{"labels": [...], "table": [[...]]}`; labels are
/// optional.
#[derive(Debug, Deserialize)]
struct GroupFile {
    #[serde(default)]
    labels: Option<Vec<String>>,
    table: Vec<Vec<usize>>,
}

pub fn load_group_table(path: &std::path::Path) -> Result<morava::GroupTable, CliError> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(ErrorCode::InvalidGroupFile, format!("{}: {e}", path.display())))?;
    let parsed: GroupFile = serde_json::from_str(&data)
        .map_err(|e| CliError::new(ErrorCode::InvalidGroupFile, format!("{}: {e}", path.display())))?;
    let m = parsed.table.len();
    let labels = parsed
        .labels
        .unwrap_or_else(|| (0..m).map(|i| format!("g{i}")).collect());
    Ok(morava::GroupTable {
        labels,
        table: parsed.table,
    })
}
