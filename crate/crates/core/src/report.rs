//! The verification report and its JSON and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::derham::FiltrationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub input: InputBlock,
    pub checks: ChecksBlock,
    pub milnor: Option<MilnorBlock>,
    pub jacobian: Vec<JacobianBlock>,
    pub derham: Vec<DerhamBlock>,
    pub theorem: TheoremBlock,
    pub timing: Option<TimingBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputBlock {
    pub f: String,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub n: usize,
    pub d: Option<i64>,
    pub omega: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksBlock {
    pub quasi_homogeneous: bool,
    pub euler_identity: bool,
    pub smooth_isolated: Option<bool>,
    pub milnor_matches_complete_intersection: Option<bool>,
    pub milnor_scan_bound: Option<i64>,
    pub jacobian_scan_bound: Option<i64>,
    pub degree_cap: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorBlock {
    pub hilbert: Vec<usize>,
    pub is_artinian: bool,
    pub top_degree: Option<i64>,
    pub milnor_number: Option<usize>,
}

/// Nonzero dimensions of `H_p(∂f; A)_t` over the scanned degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianBlock {
    pub p: usize,
    pub t_min: i64,
    pub t_max: i64,
    pub dims: BTreeMap<i64, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerhamStatus {
    Stabilized,
    NotStabilized,
    AutoCapUnavailable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerhamBlock {
    pub p: usize,
    pub internal_degree: i64,
    pub pole_cap: Option<u32>,
    pub auto_cap: bool,
    pub status: DerhamStatus,
    pub transition_ranks: Vec<usize>,
    pub dim: Option<usize>,
    pub asserted_dim: Option<usize>,
    pub filtration: Option<FiltrationReport>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremStatus {
    Verified,
    Failed,
    HypothesisNotMet,
    Inconclusive,
}

impl TheoremStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremStatus::Verified => "verified",
            TheoremStatus::Failed => "failed",
            TheoremStatus::HypothesisNotMet => "hypothesis_not_met",
            TheoremStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub p: Option<usize>,
    pub expected: Option<usize>,
    pub actual: Option<usize>,
    pub passed: bool,
}

/// `H^i(∂; H^1_(f)(R))` read off from `H_{n−i}(∂; R_f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationRow {
    pub cohomological_index: usize,
    pub homological_index: usize,
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBlock {
    pub status: TheoremStatus,
    pub assertions: Vec<Assertion>,
    pub translation: Vec<TranslationRow>,
    pub identification: String,
    pub reason: Option<String>,
}

/// Wall-clock timings in milliseconds; only filled in on request, so the
/// default JSON output is byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingBlock {
    pub milnor_ms: u64,
    pub jacobian_ms: u64,
    pub derham_ms: u64,
    pub total_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub fn emit_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Table => render_table(r),
    }
}

/// Label for `H_p(∂;R_f)`, using `n-1` for the top interesting index.
pub fn homology_label(p: usize, n: usize) -> String {
    if n >= 2 && p == n - 1 {
        "H_{n-1}(∂;R_f)".to_string()
    } else {
        format!("H_{p}(∂;R_f)")
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(cell);
                let pad = widths[c] - cell.chars().count() + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn render_table(r: &VerificationReport) -> String {
    let mut out = String::new();
    let i = &r.input;
    let _ = writeln!(out, "f = {}", i.f);
    let _ = writeln!(
        out,
        "variables {} with weights {}, n = {}, d = {}, ω = {}",
        i.vars.join(","),
        i.weights
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(","),
        i.n,
        opt(&i.d),
        i.omega
    );
    let c = &r.checks;
    let _ = writeln!(
        out,
        "quasi-homogeneous: {}   smooth: {}",
        c.quasi_homogeneous,
        opt(&c.smooth_isolated)
    );
    if let Some(m) = &r.milnor {
        out.push('\n');
        let mut rows = vec![vec!["t".to_string(), "dim M_t".to_string()]];
        for (t, d) in m.hilbert.iter().enumerate() {
            rows.push(vec![t.to_string(), d.to_string()]);
        }
        out.push_str(&align(&rows));
        let _ = writeln!(
            out,
            "top degree {}, Milnor number {}",
            opt(&m.top_degree),
            opt(&m.milnor_number)
        );
    }
    if !r.jacobian.is_empty() {
        out.push('\n');
        let mut rows = vec![vec![
            "H_p(∂f;A)".to_string(),
            "scanned t".to_string(),
            "nonzero dims".to_string(),
        ]];
        for b in &r.jacobian {
            let dims: Vec<String> = b.dims.iter().map(|(t, d)| format!("t={t}:{d}")).collect();
            rows.push(vec![
                format!("p={}", b.p),
                format!("{}..{}", b.t_min, b.t_max),
                if dims.is_empty() {
                    "none".to_string()
                } else {
                    dims.join(" ")
                },
            ]);
        }
        out.push_str(&align(&rows));
    }
    if !r.derham.is_empty() {
        out.push('\n');
        let mut rows = Vec::new();
        for b in &r.derham {
            rows.push(vec![homology_label(b.p, i.n), opt(&b.dim)]);
        }
        out.push_str(&align(&rows));
        out.push('\n');
        let mut rows = vec![vec![
            "p".to_string(),
            "cap".to_string(),
            "transition ranks".to_string(),
            "dim F_ν".to_string(),
            "η ranks".to_string(),
        ]];
        for b in &r.derham {
            let (fdims, eta) = match &b.filtration {
                Some(f) => (
                    f.levels
                        .iter()
                        .map(|l| l.dim_f.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    f.levels
                        .iter()
                        .map(|l| l.eta_rank.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ),
                None => ("-".to_string(), "-".to_string()),
            };
            rows.push(vec![
                b.p.to_string(),
                opt(&b.pole_cap),
                b.transition_ranks
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                fdims,
                eta,
            ]);
        }
        out.push_str(&align(&rows));
    }
    out.push('\n');
    let t = &r.theorem;
    if !t.assertions.is_empty() {
        let mut rows = Vec::new();
        for a in &t.assertions {
            rows.push(vec![
                a.name.clone(),
                format!("expected {}", opt(&a.expected)),
                format!("actual {}", opt(&a.actual)),
                if a.passed { "ok" } else { "FAIL" }.to_string(),
            ]);
        }
        out.push_str(&align(&rows));
    }
    let _ = writeln!(out, "status: {}", t.status.as_str());
    if let Some(reason) = &t.reason {
        let _ = writeln!(out, "reason: {reason}");
    }
    if let Some(tm) = &r.timing {
        let _ = writeln!(
            out,
            "timing: milnor {} ms, jacobian {} ms, de Rham {} ms, total {} ms",
            tm.milnor_ms, tm.jacobian_ms, tm.derham_ms, tm.total_ms
        );
    }
    out
}
