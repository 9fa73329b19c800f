//! Contradiction patterns in solved parallelogram systems, with checkable certificates.

use super::json::{ser_qvec, ser_weights};
use super::system::{LinearSystem, Solved, SolutionFamily};
use dualcell_core::linalg::{integer_coords, integer_row_basis, to_bigint_vec, transpose};
use dualcell_core::lp::feasible_point;
use dualcell_core::rat::{denom_lcm, dot, is_zero, scale, sub, zeros, QVec, Rat};
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContradictionKind {
    NoSolution,
    Coincidence,
    Parity,
    Nonconvex,
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    /// `Σ_i y_i (x_a + x_b - x_c - x_d)_i` has a vanishing left side and a nonzero right side.
    NoSolution {
        #[serde(serialize_with = "ser_qvec")]
        multipliers: Vec<Rat>,
    },
    /// Labels `a` and `b` name the same point for all parameter values.
    Coincidence { a: usize, b: usize },
    /// `x_a - x_b = Σ_j c_j x_{g_j}` with every `c_j` even, so `x_a ≡ x_b` modulo twice the
    /// lattice spanned by the labeled points.
    Parity {
        a: usize,
        b: usize,
        generators: Vec<usize>,
        #[serde(serialize_with = "ser_bigints")]
        coefficients: Vec<BigInt>,
    },
    /// `x_point` is a convex combination of the other distinct points.
    Nonconvex {
        point: usize,
        #[serde(serialize_with = "ser_weights")]
        weights: Vec<(usize, Rat)>,
    },
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Finding {
    pub fn kind(&self) -> ContradictionKind {
        match self {
            Finding::NoSolution { .. } => ContradictionKind::NoSolution,
            Finding::Coincidence { .. } => ContradictionKind::Coincidence,
            Finding::Parity { .. } => ContradictionKind::Parity,
            Finding::Nonconvex { .. } => ContradictionKind::Nonconvex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContradictionReport {
    /// First kind present in the order no solution, coincidence, parity, nonconvex; residual
    /// when nothing is found.
    pub kind: ContradictionKind,
    pub findings: Vec<Finding>,
}

impl ContradictionReport {
    pub fn primary(&self) -> Option<&Finding> {
        self.findings.iter().find(|f| f.kind() == self.kind)
    }

    pub fn has(&self, k: ContradictionKind) -> bool {
        self.findings.iter().any(|f| f.kind() == k)
    }
}

/// Distinct point pairs whose difference lies in `2Λ'`, `Λ'` the integer span of the points.
fn parity_findings(ls: &LinearSystem, pts: &[QVec]) -> Vec<Finding> {
    let n = pts.first().map_or(0, Vec::len);
    let generators: Vec<usize> = (0..pts.len()).filter(|&l| !is_zero(&pts[l])).collect();
    if generators.is_empty() {
        return Vec::new();
    }
    let den = Rat::from_integer(generators.iter().map(|&g| denom_lcm(&pts[g])).fold(BigInt::one(), |a, b| a.lcm(&b)));
    let gens: Vec<Vec<BigInt>> =
        generators.iter().map(|&g| to_bigint_vec(&scale(&pts[g], &den)).expect("cleared denominators")).collect();
    let (h, u) = integer_row_basis(&gens, n);
    let half = den / Rat::from_integer(BigInt::from(2));
    let mut pairs: Vec<(usize, usize)> = (0..pts.len()).tuple_combinations().collect();
    if let Some(d) = ls.distinguished {
        pairs.sort_by_key(|&p| p != d);
    }
    let mut out = Vec::new();
    for (a, b) in pairs {
        let diff = sub(&pts[a], &pts[b]);
        if is_zero(&diff) {
            continue;
        }
        let Some(y) = integer_coords(&h, &scale(&diff, &half)) else { continue };
        let coefficients: Vec<BigInt> = (0..generators.len())
            .map(|j| y.iter().zip(&u).map(|(yi, ui)| yi * &ui[j]).sum::<BigInt>() * BigInt::from(2))
            .collect();
        out.push(Finding::Parity { a, b, generators: generators.clone(), coefficients });
    }
    out
}

/// Points lying in the convex hull of the other distinct points, with exact weights.
fn nonconvex_findings(pts: &[QVec]) -> Vec<Finding> {
    let mut out = Vec::new();
    for l in 0..pts.len() {
        let others: Vec<usize> = (0..pts.len()).filter(|&m| m != l && pts[m] != pts[l]).collect();
        if others.is_empty() {
            continue;
        }
        let k = others.len();
        let d = pts[l].len();
        let mut eq: Vec<(QVec, Rat)> =
            (0..d).map(|c| (others.iter().map(|&m| pts[m][c].clone()).collect(), pts[l][c].clone())).collect();
        eq.push((vec![Rat::one(); k], Rat::one()));
        let ineq: Vec<(QVec, Rat)> = (0..k)
            .map(|j| {
                let mut a = zeros(k);
                a[j] = -Rat::one();
                (a, Rat::zero())
            })
            .collect();
        if let Some(w) = feasible_point(k, &ineq, &eq) {
            let weights = others.iter().zip(w).filter(|(_, x)| !x.is_zero()).map(|(&m, x)| (m, x)).collect();
            out.push(Finding::Nonconvex { point: l, weights });
        }
    }
    out
}

/// Runs the checks in order: coincidence, parity, convex position. Families with free
/// parameters are only checked for identical points, since parity and convex position depend
/// on the parameter values.
pub fn detect_contradiction(ls: &LinearSystem, sf: &SolutionFamily) -> ContradictionReport {
    let mut findings: Vec<Finding> = (0..sf.labels.len())
        .tuple_combinations()
        .filter(|&(a, b)| sf.identical(a, b))
        .map(|(a, b)| Finding::Coincidence { a, b })
        .collect();
    if !sf.has_params() {
        findings.extend(parity_findings(ls, &sf.points));
        findings.extend(nonconvex_findings(&sf.points));
    }
    let kind = findings.iter().map(Finding::kind).min().unwrap_or(ContradictionKind::Residual);
    ContradictionReport { kind, findings }
}

/// Solves and classifies in one step.
pub fn analyze(ls: &LinearSystem) -> (Option<SolutionFamily>, ContradictionReport) {
    match ls.solve() {
        Solved::NoSolution(multipliers) => {
            (None, ContradictionReport { kind: ContradictionKind::NoSolution, findings: vec![Finding::NoSolution { multipliers }] })
        }
        Solved::Family(sf) => {
            let r = detect_contradiction(ls, &sf);
            (Some(sf), r)
        }
    }
}

/// Rechecks a certificate from the system and the family alone.
pub fn verify_finding(ls: &LinearSystem, sf: Option<&SolutionFamily>, f: &Finding) -> bool {
    match (f, sf) {
        (Finding::NoSolution { multipliers }, _) => {
            if multipliers.len() != ls.equations.len() {
                return false;
            }
            let (a, b) = ls.matrix();
            let n = a.first().map_or(0, Vec::len);
            let lhs_zero = transpose(&a, n).iter().all(|col| dot(multipliers, col).is_zero());
            let rhs_nonzero = transpose(&b, ls.dim).iter().any(|col| !dot(multipliers, col).is_zero());
            lhs_zero && rhs_nonzero
        }
        (Finding::Coincidence { a, b }, Some(sf)) => a != b && sf.identical(*a, *b),
        (Finding::Parity { a, b, generators, coefficients }, Some(sf)) => {
            if sf.has_params() || generators.len() != coefficients.len() {
                return false;
            }
            let even = coefficients.iter().all(|c| c.is_even());
            let mut sum = zeros(sf.dim);
            for (&g, c) in generators.iter().zip(coefficients) {
                sum = dualcell_core::rat::axpy(&sum, &Rat::from_integer(c.clone()), &sf.points[g]);
            }
            even && sum == sub(&sf.points[*a], &sf.points[*b]) && sf.points[*a] != sf.points[*b]
        }
        (Finding::Nonconvex { point, weights }, Some(sf)) => {
            if sf.has_params() || weights.is_empty() {
                return false;
            }
            let valid = weights.iter().all(|(m, w)| !w.is_negative() && sf.points[*m] != sf.points[*point]);
            let total: Rat = weights.iter().map(|(_, w)| w.clone()).sum();
            let mut sum = zeros(sf.dim);
            for (m, w) in weights {
                sum = dualcell_core::rat::axpy(&sum, w, &sf.points[*m]);
            }
            valid && total.is_one() && sum == sf.points[*point]
        }
        _ => false,
    }
}
