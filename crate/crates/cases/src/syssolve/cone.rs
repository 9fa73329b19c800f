//! Cone tests for the parameterised 5-10 case.
//!
//! The configuration is lifted to `Q = conv{u_i, u_i + u_{i+1}}` in R^5 (indices mod 5), whose
//! parallelogram faces are `P_i = conv{u_{i-1}, u_{i+1}, u_{i-1} + u_i, u_i + u_{i+1}}`. A
//! direction `x` of the remaining parameter is excluded when some vertex `v` of `Q` outside
//! `P_i` has `x` or `-x` in the relative interior of the tangent cone of `Q` at `v` plus
//! `lin(P_i)`. Starting from the directions with no zero coordinate, every excluded open cone
//! is subtracted exactly; the surviving set is kept as a disjoint union of relatively open
//! polyhedral cones.

use super::json::{ser_qvec, ser_qvecs};
use dualcell_core::linalg::nullspace;
use dualcell_core::lp::open_cone_point;
use dualcell_core::rat::{add, dot, neg, primitive, sub, unit, QVec};
use dualcell_core::ratpoly::{cone_at_vertex, cone_minus_linspace, Cone, Polytope};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

pub const N: usize = 5;

/// `u_i`, 1-based and cyclic.
pub fn u(i: usize) -> QVec {
    unit(N, (i + N - 1) % N)
}

/// The ten vertices of `Q` with their names, `u_1..u_5` then `u_i + u_{i+1}`.
pub fn q_vertices() -> Vec<(String, QVec)> {
    let mut out: Vec<(String, QVec)> = (1..=N).map(|i| (format!("u{i}"), u(i))).collect();
    out.extend((1..=N).map(|i| (format!("u{}+u{}", i, i % N + 1), add(&u(i), &u(i + 1)))));
    out
}

pub fn q_polytope() -> Polytope {
    let vs: Vec<QVec> = q_vertices().into_iter().map(|(_, v)| v).collect();
    Polytope::from_vertices(&vs).expect("ten points")
}

/// Vertices of `P_i`: `u_{i-1}, u_{i+1}, u_{i-1} + u_i, u_i + u_{i+1}`.
pub fn parallelogram(i: usize) -> [QVec; 4] {
    let (a, b, c) = (u(i + N - 1), u(i), u(i + 1));
    [a.clone(), c.clone(), add(&a, &b), add(&b, &c)]
}

/// `lin(P_i) = span{u_i, u_{i+1} - u_{i-1}}`.
pub fn lin_parallelogram(i: usize) -> [QVec; 2] {
    [u(i), sub(&u(i + 1), &u(i + N - 1))]
}

/// A relatively open polyhedral cone `{x : a·x < 0 for a in strict, a·x = 0 for a in zero}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenCone {
    #[serde(serialize_with = "ser_qvecs")]
    pub strict: Vec<QVec>,
    #[serde(serialize_with = "ser_qvecs")]
    pub zero: Vec<QVec>,
}

impl OpenCone {
    pub fn is_empty(&self) -> bool {
        open_cone_point(N, &self.strict, &[], &self.zero).is_none()
    }

    pub fn contains(&self, x: &[dualcell_core::rat::Rat]) -> bool {
        self.strict.iter().all(|a| dot(a, x).is_negative()) && self.zero.iter().all(|a| dot(a, x).is_zero())
    }

    fn and(&self, other: &OpenCone) -> OpenCone {
        OpenCone {
            strict: self.strict.iter().chain(&other.strict).cloned().collect(),
            zero: self.zero.iter().chain(&other.zero).cloned().collect(),
        }
    }

    fn strict(a: QVec) -> OpenCone {
        OpenCone { strict: vec![a], zero: Vec::new() }
    }

    fn zero(a: QVec) -> OpenCone {
        OpenCone { strict: Vec::new(), zero: vec![a] }
    }

    /// `self` minus `k`, as disjoint relatively open cones: the points failing the first
    /// constraint of `k`, then those meeting it and failing the second, and so on.
    pub fn minus(&self, k: &OpenCone) -> Vec<OpenCone> {
        if self.and(k).is_empty() {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut prefix = self.clone();
        for a in &k.strict {
            for alt in [OpenCone::zero(a.clone()), OpenCone::strict(neg(a))] {
                let piece = prefix.and(&alt);
                if !piece.is_empty() {
                    out.push(piece);
                }
            }
            prefix = prefix.and(&OpenCone::strict(a.clone()));
        }
        for e in &k.zero {
            for alt in [OpenCone::strict(e.clone()), OpenCone::strict(neg(e))] {
                let piece = prefix.and(&alt);
                if !piece.is_empty() {
                    out.push(piece);
                }
            }
            prefix = prefix.and(&OpenCone::zero(e.clone()));
        }
        out
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        nullspace(&self.zero, N).len()
    }
}

/// The test of `P_i` against vertex `v`: `x` fails when it lies in `relint(C)` or `relint(-C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeTest {
    pub vertex: String,
    pub parallelogram: usize,
    /// `C = T_v(Q) + lin(P_i)` as `h·y <= 0` and `e·y = 0`.
    #[serde(serialize_with = "ser_qvecs")]
    pub halfspaces: Vec<QVec>,
    #[serde(serialize_with = "ser_qvecs")]
    pub equalities: Vec<QVec>,
}

impl ConeTest {
    pub fn relint(&self) -> OpenCone {
        OpenCone { strict: self.halfspaces.clone(), zero: self.equalities.clone() }
    }

    pub fn relint_neg(&self) -> OpenCone {
        OpenCone { strict: self.halfspaces.iter().map(|h| neg(h)).collect(), zero: self.equalities.clone() }
    }

    pub fn excludes(&self, x: &[dualcell_core::rat::Rat]) -> bool {
        self.relint().contains(x) || self.relint_neg().contains(x)
    }
}

fn test_cone(q: &Polytope, v: &[dualcell_core::rat::Rat], i: usize) -> Cone {
    let t = cone_at_vertex(q, v).expect("vertex of Q").translated_to_origin();
    cone_minus_linspace(&t, &lin_parallelogram(i))
}

/// All tests: every vertex `v` of `Q` against every `P_i` not containing it.
pub fn cone_tests() -> Vec<ConeTest> {
    let q = q_polytope();
    let mut out = Vec::new();
    for (name, v) in q_vertices() {
        for i in 1..=N {
            if parallelogram(i).contains(&v) {
                continue;
            }
            let c = test_cone(&q, &v, i);
            out.push(ConeTest { vertex: name.clone(), parallelogram: i, halfspaces: c.halfspaces, equalities: c.equalities });
        }
    }
    out
}

/// Cyclic index substitution `u_i -> u_{i+1}` acting on coordinates.
pub fn rotate(x: &[dualcell_core::rat::Rat]) -> QVec {
    (0..N).map(|j| x[(j + N - 1) % N].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorPiece {
    pub dim: usize,
    #[serde(serialize_with = "ser_qvec")]
    pub point: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConePipeline {
    pub tests: Vec<ConeTest>,
    /// Number of pieces after each subtraction, starting with the 32 open orthants.
    pub piece_counts: Vec<usize>,
    pub pieces: Vec<SurvivorPiece>,
    /// Primitive directions of the surviving rays, when every piece is a ray.
    #[serde(serialize_with = "ser_qvecs")]
    pub rays: Vec<QVec>,
    /// The surviving set is invariant under the cyclic index substitution.
    pub cyclic_invariant: bool,
}

/// Subtracts every excluded open cone from the nonvanishing directions.
pub fn cone_test_pipeline() -> ConePipeline {
    let tests = cone_tests();
    let mut pieces: Vec<OpenCone> = (0..1u32 << N)
        .map(|m| OpenCone {
            strict: (0..N).map(|j| if m >> j & 1 == 1 { unit(N, j) } else { neg(&unit(N, j)) }).collect(),
            zero: Vec::new(),
        })
        .collect();
    let mut piece_counts = vec![pieces.len()];
    for t in &tests {
        for k in [t.relint(), t.relint_neg()] {
            pieces = pieces.par_iter().flat_map_iter(|p| p.minus(&k)).collect();
        }
        piece_counts.push(pieces.len());
    }
    let survivors: Vec<SurvivorPiece> = pieces
        .iter()
        .map(|p| {
            let point = open_cone_point(N, &p.strict, &[], &p.zero).expect("pieces are nonempty");
            SurvivorPiece { dim: p.dim(), point: primitive(&point) }
        })
        .collect();
    let rays: Vec<QVec> = if survivors.iter().all(|s| s.dim == 1) {
        let mut r: Vec<QVec> = survivors.iter().map(|s| s.point.clone()).collect();
        r.sort();
        r.dedup();
        r
    } else {
        Vec::new()
    };
    let set: BTreeSet<QVec> = rays.iter().cloned().collect();
    let cyclic_invariant = !rays.is_empty() && rays.iter().all(|r| set.contains(&rotate(r)));
    ConePipeline { tests, piece_counts, pieces: survivors, rays, cyclic_invariant }
}

/// `±` the five cyclic shifts of `x`.
pub fn signed_orbit(x: &[dualcell_core::rat::Rat]) -> BTreeSet<QVec> {
    let mut out = BTreeSet::new();
    let mut y = x.to_vec();
    for _ in 0..N {
        out.insert(y.clone());
        out.insert(neg(&y));
        y = rotate(&y);
    }
    out
}

