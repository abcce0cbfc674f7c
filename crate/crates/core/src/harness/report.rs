//! Line-JSON and fixed-column table output.

use std::io::{self, Write};

use crate::graph::VertexSet;
use crate::quasireg::CheckStatus;

use super::sweep::ClassificationReport;

/// Witness lists longer than this are truncated in table output.
pub const TABLE_WITNESS_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

pub fn write_json_line<W: Write>(out: &mut W, r: &ClassificationReport) -> io::Result<()> {
    serde_json::to_writer(&mut *out, r)?;
    out.write_all(b"\n")
}

pub fn emit_reports<W: Write>(
    out: &mut W,
    reports: &[ClassificationReport],
    format: ReportFormat,
) -> io::Result<()> {
    match format {
        ReportFormat::Json => reports.iter().try_for_each(|r| write_json_line(out, r)),
        ReportFormat::Table => {
            if reports.is_empty() {
                return Ok(());
            }
            write_table_header(out)?;
            reports.iter().try_for_each(|r| write_table_row(out, r))
        }
    }
}

/// `{1,2,…,8,…(+k)}` past the limit.
pub fn format_witness(set: VertexSet) -> String {
    let labels = set.to_labels();
    if labels.len() <= TABLE_WITNESS_LIMIT {
        return set.to_string();
    }
    let shown: Vec<String> = labels[..TABLE_WITNESS_LIMIT]
        .iter()
        .map(usize::to_string)
        .collect();
    format!(
        "{{{},…(+{})}}",
        shown.join(","),
        labels.len() - TABLE_WITNESS_LIMIT
    )
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    }
}

fn status(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::NotApplicable => "n/a",
        CheckStatus::CapExceeded => "cap",
    }
}

pub fn write_table_header<W: Write>(out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "{:>6} {:<14} {:>3} {:>3} {:<4} {:<4} {:<4} {:<5} {:<5} {:<5} {:<4} {:<4} {:>4}  min-ratio witness",
        "idx", "graph6", "n", "α", "conn", "W1", "W2", "LE", "TH", "W2F", "LC", "UM", "viol"
    )
}

pub fn write_table_row<W: Write>(out: &mut W, r: &ClassificationReport) -> io::Result<()> {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let ratio = r
        .min_expansion
        .as_ref()
        .map(|m| {
            format!(
                "{} {}",
                crate::rational::format_ratio(&m.ratio),
                format_witness(m.witness)
            )
        })
        .unwrap_or_else(|| "-".into());
    writeln!(
        out,
        "{:>6} {:<14} {:>3} {:>3} {:<4} {:<4} {:<4} {:<5} {:<5} {:<5} {:<4} {:<4} {:>4}  {}",
        r.index,
        r.graph6,
        r.n,
        r.alpha,
        yes_no(r.connected),
        flag(r.wp_member(1)),
        flag(r.wp_member(2)),
        status(r.local_expansion),
        status(r.threshold_equivalence),
        status(r.w2_facts),
        yes_no(r.direct.log_concave),
        yes_no(r.direct.unimodal),
        r.violations.len(),
        ratio
    )
}
