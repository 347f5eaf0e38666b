//! Run configuration: parsed flags, ranges, budgets.

use crate::error::{CliError, ErrorCode};

pub const DEFAULT_RANK_BUDGET: u128 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(CliError::new(
                ErrorCode::InvalidFormat,
                format!("unknown format `{other}`; expected json, csv or text"),
            )),
        }
    }
}

/// Inclusive integer range written `a..b`, or a single value `a`.
pub fn parse_range(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = |detail: String| CliError::new(ErrorCode::InvalidRange, detail);
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo
            .parse()
            .map_err(|_| bad(format!("bad range start in `{s}`")))?;
        let hi: u32 = hi
            .parse()
            .map_err(|_| bad(format!("bad range end in `{s}`")))?;
        if lo > hi {
            return Err(bad(format!("empty range `{s}`")));
        }
        Ok((lo..=hi).collect())
    } else {
        let v: u32 = s.parse().map_err(|_| bad(format!("bad value `{s}`")))?;
        Ok(vec![v])
    }
}

/// Comma-separated list of integers.
pub fn parse_set(s: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse().map_err(|_| {
            CliError::new(
                ErrorCode::InvalidRange,
                format!("bad list entry `{part}` in `{s}`"),
            )
        })?);
    }
    if out.is_empty() {
        return Err(CliError::new(
            ErrorCode::EmptyGrid,
            format!("empty list `{s}`"),
        ));
    }
    Ok(out)
}

/// The per-instance rank budget; MORAVA_BUDGET overrides the default.
pub fn rank_budget() -> Result<u128, CliError> {
    match std::env::var("MORAVA_BUDGET") {
        Ok(v) => v.parse().map_err(|_| {
            CliError::new(
                ErrorCode::InvalidRange,
                format!("MORAVA_BUDGET must be an integer, got `{v}`"),
            )
        }),
        Err(_) => Ok(DEFAULT_RANK_BUDGET),
    }
}
