//! The full table of parallelogram systems on the 5-10 and 6-11 hypergraphs.

use super::contradiction::{analyze, verify_finding, ContradictionKind, ContradictionReport};
use super::octahedron::{octahedron_check, OctahedronFinding};
use super::system::{LinearSystem, SolutionFamily, SystemError};
use crate::hypercomb::{enumerate_6_11_matchings, reference_schemes, scheme_to_matching, PloughingScheme, SigmaPair};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    #[serde(rename = "5-10")]
    FiveTen,
    #[serde(rename = "6-11")]
    SixEleven,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseSource {
    Scheme(PloughingScheme),
    Sigma { sigma: [usize; 3], sigma_p: [usize; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvedCase {
    pub system: LinearSystem,
    pub solution: Option<SolutionFamily>,
    pub report: ContradictionReport,
    /// Every certificate in `report` passed the independent check.
    pub certified: bool,
    /// Octahedron findings for residual cases without parameters.
    pub octahedron: Vec<OctahedronFinding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    /// Exchanging the two hyperedge families turns this row into an earlier one.
    Reduced { to: usize },
    Solved(Box<SolvedCase>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub family: Family,
    pub row: usize,
    /// Not among the listed rows: covers a relabeling class the list misses.
    pub supplementary: bool,
    pub source: CaseSource,
    #[serde(flatten)]
    pub status: CaseStatus,
}

impl CaseRow {
    pub fn solved(&self) -> Option<&SolvedCase> {
        match &self.status {
            CaseStatus::Solved(s) => Some(s),
            CaseStatus::Reduced { .. } => None,
        }
    }

    pub fn kind(&self) -> Option<ContradictionKind> {
        self.solved().map(|s| s.report.kind)
    }

    /// A contradiction was found, directly or through the octahedron check.
    pub fn contradicted(&self) -> bool {
        match &self.status {
            CaseStatus::Reduced { .. } => true,
            CaseStatus::Solved(s) => s.report.kind != ContradictionKind::Residual || !s.octahedron.is_empty(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTable {
    pub five_ten: Vec<CaseRow>,
    pub six_eleven: Vec<CaseRow>,
}

impl CaseTable {
    /// Rows left open: residual with no octahedron contradiction.
    pub fn open_rows(&self) -> Vec<(Family, usize)> {
        self.five_ten.iter().chain(&self.six_eleven).filter(|r| !r.contradicted()).map(|r| (r.family, r.row)).collect()
    }
}

pub fn solve_case(ls: LinearSystem) -> SolvedCase {
    let (solution, report) = analyze(&ls);
    let certified = report.findings.iter().all(|f| verify_finding(&ls, solution.as_ref(), f))
        && solution.as_ref().is_none_or(|s| s.satisfies(&ls));
    let octahedron = match &solution {
        Some(sf) if report.kind == ContradictionKind::Residual && !sf.has_params() => octahedron_check(&ls, sf),
        _ => Vec::new(),
    };
    SolvedCase { system: ls, solution, report, certified, octahedron }
}

pub fn five_ten_case(row: usize, scheme: &PloughingScheme) -> Result<CaseRow, SystemError> {
    let ls = LinearSystem::five_ten(&scheme_to_matching(scheme))?;
    Ok(CaseRow {
        family: Family::FiveTen,
        row,
        supplementary: false,
        source: CaseSource::Scheme(scheme.clone()),
        status: CaseStatus::Solved(Box::new(solve_case(ls))),
    })
}

pub fn six_eleven_case(row: usize, p: &SigmaPair, reduces_to: Option<usize>, supplementary: bool) -> Result<CaseRow, SystemError> {
    let (sigma, sigma_p) = p.images();
    let status = match reduces_to {
        Some(to) => CaseStatus::Reduced { to },
        None => CaseStatus::Solved(Box::new(solve_case(LinearSystem::six_eleven(p)?))),
    };
    Ok(CaseRow { family: Family::SixEleven, row, supplementary, source: CaseSource::Sigma { sigma, sigma_p }, status })
}

/// All 5-10 rows (one per listed scheme) and all 6-11 rows (listed items plus supplementary
/// classes), solved in parallel; output order is fixed.
pub fn run_all_cases() -> Result<CaseTable, SystemError> {
    let schemes = reference_schemes();
    let five_ten = schemes.par_iter().enumerate().map(|(i, s)| five_ten_case(i + 1, s)).collect::<Result<Vec<_>, _>>()?;
    let c = enumerate_6_11_matchings();
    let six_eleven = c
        .items
        .par_iter()
        .chain(c.supplementary.par_iter())
        .map(|it| six_eleven_case(it.item, &it.pair, it.reduces_to, it.supplementary))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CaseTable { five_ten, six_eleven })
}
