//! Comparison of a case table against the published rows in `cases.json`.
//!
//! A published row may give a `kind`, a `pair` of labels it concerns, a solution `matrix`
//! (rows are coordinates, columns are labels), an `octahedron` 6-set, or a `reduces_to` row.
//! A parity row is met by a certified parity finding for the pair or by the pair coinciding,
//! which is the zero certificate.

use crate::commands::read_json;
use crate::CliError;
use dualcell_cases::syssolve::{CaseRow, CaseStatus, CaseTable, ContradictionKind, Finding};
use dualcell_core::rat::{from_jvec, JRat, QVec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenRow {
    pub row: usize,
    #[serde(default)]
    pub kind: Option<ContradictionKind>,
    #[serde(default)]
    pub pair: Option<[String; 2]>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<JRat>>>,
    #[serde(default)]
    pub octahedron: Option<Vec<String>>,
    #[serde(default)]
    pub reduces_to: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenFile {
    pub five_ten: Vec<GoldenRow>,
    pub six_eleven: Vec<GoldenRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub rows_checked: usize,
    pub mismatches: Vec<String>,
}

fn check_row(family: &str, g: &GoldenRow, rows: &[CaseRow], out: &mut Vec<String>) {
    let mut miss = |what: String| out.push(format!("{family} row {}: {what}", g.row));
    let Some(r) = rows.iter().find(|r| r.row == g.row) else {
        miss("missing".into());
        return;
    };
    if let Some(to) = g.reduces_to {
        if r.status != (CaseStatus::Reduced { to }) {
            miss(format!("expected reduction to {to}"));
        }
        return;
    }
    let Some(s) = r.solved() else {
        miss("expected a solved row".into());
        return;
    };
    let idx = |name: &str| s.system.labels.iter().position(|l| l == name);
    let pair: Option<BTreeSet<usize>> = match &g.pair {
        Some([a, b]) => match (idx(a), idx(b)) {
            (Some(a), Some(b)) => Some(BTreeSet::from([a, b])),
            _ => {
                miss(format!("unknown labels {a}, {b}"));
                return;
            }
        },
        None => None,
    };
    let about = |a: usize, b: usize| pair.as_ref().is_none_or(|p| *p == BTreeSet::from([a, b]));
    let found = |k: ContradictionKind| {
        s.report.findings.iter().any(|f| match (k, f) {
            (ContradictionKind::Coincidence, Finding::Coincidence { a, b }) => about(*a, *b),
            (ContradictionKind::Parity, Finding::Parity { a, b, .. }) => about(*a, *b),
            (ContradictionKind::Parity, Finding::Coincidence { a, b }) => about(*a, *b),
            (ContradictionKind::Nonconvex, Finding::Nonconvex { .. }) => true,
            _ => false,
        })
    };
    match g.kind {
        Some(k @ (ContradictionKind::NoSolution | ContradictionKind::Residual)) if s.report.kind != k => {
            miss(format!("expected {k:?}, got {:?}", s.report.kind))
        }
        Some(k @ (ContradictionKind::Coincidence | ContradictionKind::Parity | ContradictionKind::Nonconvex)) if !found(k) => {
            miss(format!("no {k:?} finding"))
        }
        _ => {}
    }
    if let Some(m) = &g.matrix {
        let want: Vec<QVec> = m.iter().map(|r| from_jvec(r)).collect();
        if s.solution.as_ref().map(|f| f.matrix()) != Some(want) {
            miss("solution matrix differs".into());
        }
    }
    if let Some(six) = &g.octahedron {
        let want: Option<BTreeSet<usize>> = six.iter().map(|n| idx(n)).collect();
        let hit = want.is_some_and(|w| s.octahedron.iter().any(|f| f.six.iter().copied().collect::<BTreeSet<_>>() == w));
        if !hit {
            miss("octahedron 6-set not found".into());
        }
    }
}

pub fn compare_golden(t: &CaseTable, path: &Path) -> Result<GoldenReport, CliError> {
    let g: GoldenFile = read_json(path)?;
    let mut mismatches = Vec::new();
    for row in &g.five_ten {
        check_row("5-10", row, &t.five_ten, &mut mismatches);
    }
    for row in &g.six_eleven {
        check_row("6-11", row, &t.six_eleven, &mut mismatches);
    }
    Ok(GoldenReport { rows_checked: g.five_ten.len() + g.six_eleven.len(), mismatches })
}
