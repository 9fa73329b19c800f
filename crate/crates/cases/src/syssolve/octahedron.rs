//! Centrally symmetric 6-point subsets and their position against the parallelograms.
//!
//! Six labeled points forming a 3-dimensional centrally symmetric set span an octahedron. If
//! both diagonals of a parallelogram are antipodal pairs of it, the octahedron's center lies in
//! the relative interior of that parallelogram as well as of the octahedron, which two dual
//! cells of one complex cannot share. A diagonal that joins two non-antipodal points runs along
//! an octahedron edge instead.

use super::json::ser_qvec;
use super::system::{LinearSystem, SolutionFamily};
use dualcell_core::linalg::rank;
use dualcell_core::rat::{add, mean, scale, sub, QVec, Rat};
use itertools::Itertools;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OctahedronVariant {
    /// Both diagonals of the parallelogram are antipodal pairs of the 6-set.
    CoincidenceWithDiagonal,
    /// A diagonal of the parallelogram joins two non-antipodal points of the 6-set.
    DiagonalOnEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OctahedronFinding {
    pub variant: OctahedronVariant,
    pub six: Vec<usize>,
    #[serde(serialize_with = "ser_qvec")]
    pub center: QVec,
    /// Hyperedge (equation index) of the parallelogram.
    pub parallelogram: usize,
    pub diagonal: [usize; 2],
}

/// All 3-dimensional centrally symmetric 6-subsets of distinct labeled points, with their center.
pub fn symmetric_six_sets(pts: &[QVec]) -> Vec<(Vec<usize>, QVec)> {
    let mut out = Vec::new();
    for six in (0..pts.len()).combinations(6) {
        let vs: Vec<QVec> = six.iter().map(|&l| pts[l].clone()).collect();
        if !vs.iter().all_unique() {
            continue;
        }
        let c = mean(&vs);
        let twice = scale(&c, &Rat::from_integer(2.into()));
        if !vs.iter().all(|p| vs.contains(&sub(&twice, p))) {
            continue;
        }
        let diffs: Vec<QVec> = vs[1..].iter().map(|p| sub(p, &vs[0])).collect();
        if rank(&diffs, c.len()) == 3 {
            out.push((six, c));
        }
    }
    out
}

/// Parallelograms whose diagonals sit on a symmetric 6-set as an antipodal pair or as an edge.
pub fn octahedron_check(ls: &LinearSystem, sf: &SolutionFamily) -> Vec<OctahedronFinding> {
    let pts = &sf.points;
    let mut out = Vec::new();
    for (six, center) in symmetric_six_sets(pts) {
        let twice = add(&center, &center);
        let antipodal = |a: usize, b: usize| add(&pts[a], &pts[b]) == twice;
        for (e, &[a, b, c, d]) in ls.equations.iter().enumerate() {
            let diags = [[a, b], [c, d]];
            let inside = |p: &[usize; 2]| six.contains(&p[0]) && six.contains(&p[1]);
            if diags.iter().all(|p| inside(p) && antipodal(p[0], p[1])) {
                out.push(OctahedronFinding {
                    variant: OctahedronVariant::CoincidenceWithDiagonal,
                    six: six.clone(),
                    center: center.clone(),
                    parallelogram: e,
                    diagonal: [a, b],
                });
                continue;
            }
            for p in diags {
                if inside(&p) && !antipodal(p[0], p[1]) {
                    out.push(OctahedronFinding {
                        variant: OctahedronVariant::DiagonalOnEdge,
                        six: six.clone(),
                        center: center.clone(),
                        parallelogram: e,
                        diagonal: p,
                    });
                }
            }
        }
    }
    out
}
