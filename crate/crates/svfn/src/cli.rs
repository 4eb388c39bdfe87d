//! Command implementations behind the `svfn` binary. Each command is
//! a pure function from parsed inputs to rendered text plus a pass
//! flag, so the whole surface is testable without spawning processes.
//!
//! Exit-code contract (enforced by the binary):
//! 0 = success, 1 = a verified property or envelope failed,
//! 2 = unusable input (parse errors, missing fields, zero trials),
//! 3 = a computation refused its contract (wrong group variant,
//!     unnormalized target, oracle disagreement, ...).

use std::fmt::Write as _;

use thiserror::Error;

use crate::doc::{DocError, Document};
use crate::k0::K0Class;
use crate::realize::{counterexample_lex, lex_sequence_converges, realize};
use crate::stepfn::TargetFunction;
use crate::svf::{property_battery, svf, svf_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Table,
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Unusable input; maps to exit code 2.
    #[error("{0}")]
    Usage(String),
    /// The engine refused a contract; maps to exit code 3.
    #[error("{0}")]
    Contract(String),
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn contract(e: impl std::fmt::Display) -> CliError {
    CliError::Contract(e.to_string())
}

/// Rendered command output plus the verdict that drives the exit code.
#[derive(Debug, Clone)]
pub struct CmdOutcome {
    pub text: String,
    pub ok: bool,
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Render a header and rows as CSV or as an aligned two-space table.
fn render_rows(header: &[&str], rows: &[Vec<String>], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            let head: Vec<String> = header.iter().map(|h| csv_field(h)).collect();
            out.push_str(&head.join(","));
            out.push('\n');
            for row in rows {
                let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
        }
        OutputFormat::Table => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (i, field) in row.iter().enumerate() {
                    widths[i] = widths[i].max(field.len());
                }
            }
            for (i, h) in header.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                let _ = write!(out, "{:<width$}", h, width = widths[i]);
            }
            out.push('\n');
            for (i, w) in widths.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(&"-".repeat(*w));
            }
            out.push('\n');
            for row in rows {
                for (i, field) in row.iter().enumerate() {
                    if i > 0 {
                        out.push_str("  ");
                    }
                    let _ = write!(out, "{:<width$}", field, width = widths[i]);
                }
                // Trim the padding on the last column.
                while out.ends_with(' ') {
                    out.pop();
                }
                out.push('\n');
            }
        }
    }
    out
}

/// `eval`: one s_g value when the document carries a class, the full
/// table over all classes under the unit otherwise.
pub fn cmd_eval(doc: &Document, format: OutputFormat) -> Result<CmdOutcome, CliError> {
    let element = doc.to_element()?;
    let class = doc.to_class()?;
    let rows: Vec<Vec<String>> = match class {
        Some(g) => {
            let value = svf(&element, &g).map_err(contract)?;
            vec![vec![g.render(), format!("{value}")]]
        }
        None => {
            let table = svf_table(&element).map_err(|e| match e {
                crate::svf::SvfError::TableTooLarge { .. } => CliError::Usage(e.to_string()),
                other => contract(other),
            })?;
            table
                .rows()
                .into_iter()
                .map(|(coords, value)| {
                    let class = K0Class::simplicial_from_usizes(&coords);
                    vec![class.render(), format!("{value}")]
                })
                .collect()
        }
    };
    Ok(CmdOutcome {
        text: render_rows(&["g", "s_g"], &rows, format),
        ok: true,
    })
}

/// `battery`: run the property battery and report one row per check.
pub fn cmd_battery(
    trials: usize,
    seed: u64,
    sizes: Option<&[usize]>,
    format: OutputFormat,
) -> Result<CmdOutcome, CliError> {
    if trials == 0 {
        return Err(CliError::Usage(
            "battery needs at least one trial".to_string(),
        ));
    }
    let report = property_battery(trials, seed, sizes).map_err(contract)?;
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                c.name.to_string(),
                c.trials.to_string(),
                c.failures.to_string(),
                format!("{:.3e}", c.worst_slack),
            ]
        })
        .collect();
    let mut text = render_rows(
        &["id", "name", "trials", "failures", "worst_slack"],
        &rows,
        format,
    );
    let ok = report.all_passed();
    if format == OutputFormat::Table {
        if ok {
            let _ = writeln!(
                text,
                "all {} checks passed (trials={}, seed={})",
                report.checks.len(),
                report.trials,
                report.seed
            );
        } else {
            let _ = writeln!(
                text,
                "FAILED: {} of {} checks (trials={}, seed={})",
                report.failed_count(),
                report.checks.len(),
                report.trials,
                report.seed
            );
        }
    }
    Ok(CmdOutcome { text, ok })
}

/// `realize`: approximate the target by tower elements and report the
/// per-level distance and increment envelopes.
pub fn cmd_realize(
    target: &TargetFunction,
    levels: usize,
    format: OutputFormat,
) -> Result<CmdOutcome, CliError> {
    let trace = realize(target, levels).map_err(contract)?;
    let rows: Vec<Vec<String>> = trace
        .distances
        .iter()
        .enumerate()
        .map(|(n, distance)| {
            let increment = if n == 0 {
                String::new()
            } else {
                format!("{}", trace.increments[n - 1])
            };
            vec![n.to_string(), increment, format!("{distance}")]
        })
        .collect();
    let mut text = render_rows(&["n", "increment", "distance"], &rows, format);
    let ok = trace.envelopes_hold();
    if format == OutputFormat::Table {
        let verdict = if ok { "hold" } else { "VIOLATED" };
        let _ = writeln!(
            text,
            "target norm {}; geometric envelopes {} (distance < norm/2^n, increment < norm/2^(n-1))",
            trace.target_norm, verdict
        );
    }
    Ok(CmdOutcome { text, ok })
}

/// `counterexample`: the order-discontinuity report over the
/// lexicographic pair group, byte-stable across runs.
pub fn cmd_counterexample(format: OutputFormat) -> CmdOutcome {
    let report = counterexample_lex();
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(report.rows.len() + 3);
    rows.push(vec![
        "projection".to_string(),
        report.p_class.render(),
        String::new(),
    ]);
    for row in &report.rows {
        rows.push(vec![
            format!("g_{}", row.n),
            row.class.render(),
            format!("{}", row.svf),
        ]);
    }
    rows.push(vec![
        "limit".to_string(),
        report.limit_class.render(),
        format!("{}", report.limit_svf),
    ]);
    rows.push(vec![
        "control".to_string(),
        report.control_class.render(),
        format!("{}", report.control_svf),
    ]);
    let mut text = render_rows(&["label", "class", "s"], &rows, format);
    let ok = report.rows.iter().all(|r| r.svf == 0.0)
        && report.limit_svf == 1.0
        && report.control_svf == 0.0
        && lex_sequence_converges(&report);
    if format == OutputFormat::Table {
        let _ = writeln!(
            text,
            "s vanishes along g_n -> limit yet jumps to 1 at the limit class; \
             order continuity fails over the lexicographic pair group"
        );
    }
    CmdOutcome { text, ok }
}
