//! The direction left by the cone tests, `x = [-1,-1,-1,1,1]`, ruled out by projecting along it.

use super::cone::{parallelogram, q_polytope, q_vertices, u, N};
use super::json::{ser_qvec, ser_qvecs};
use dualcell_core::linalg::rank;
use dualcell_core::rat::{add, frac, qvec, sub, QVec};
use dualcell_core::ratpoly::{Polytope, Projection};
use dualcell_core::tiling::{classify_3polytope, Dual3Type};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinalCaseError {
    #[error("check failed: {0}")]
    CheckFailed(&'static str),
}

/// Images of `u_1..u_5, u_1+u_2, ..., u_5+u_1` in the basis `u_1..u_4`.
pub const LISTED_IMAGES: [[i64; 4]; 10] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 1, -1],
    [1, 1, 0, 0],
    [0, 1, 1, 0],
    [0, 0, 1, 1],
    [1, 1, 1, 0],
    [2, 1, 1, -1],
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalCaseReport {
    #[serde(serialize_with = "ser_qvec")]
    pub x: QVec,
    pub names: Vec<String>,
    #[serde(serialize_with = "ser_qvecs")]
    pub images: Vec<QVec>,
    pub distinct_images: usize,
    /// Each `P_i` is a face of `Q`.
    pub parallelograms_are_faces: bool,
    #[serde(serialize_with = "ser_qvecs")]
    pub segment: Vec<QVec>,
    /// `p(u_4 + u_5 - u_1 - u_2)`.
    #[serde(serialize_with = "ser_qvec")]
    pub shift: QVec,
    /// `h(y_1 + t) = h(y_4 + y_5 - y_2)`, on the line of the segment.
    #[serde(serialize_with = "ser_qvec")]
    pub forced_vertex: QVec,
    #[serde(serialize_with = "ser_qvecs")]
    pub prism: Vec<QVec>,
    pub prism_type: Dual3Type,
    /// Vertex count of a 4-dimensional dual cell with a triangular prism through `Π_2`.
    pub implied_vertices: usize,
    /// Vertices of the five parallelograms, all distinct.
    pub known_vertices: usize,
    pub contradiction: bool,
}

fn check(ok: bool, what: &'static str) -> Result<(), FinalCaseError> {
    if ok {
        Ok(())
    } else {
        Err(FinalCaseError::CheckFailed(what))
    }
}

/// The minimal face of `q` containing `pts` has exactly the vertices `pts`.
fn is_face(q: &Polytope, pts: &[QVec]) -> bool {
    let idx: Vec<usize> = match pts.iter().map(|p| q.vertex_index(p)).collect::<Option<Vec<_>>>() {
        Some(v) => v,
        None => return false,
    };
    let facets: Vec<usize> = (0..q.facets.len()).filter(|&f| idx.iter().all(|&v| q.incidence[f][v])).collect();
    let on: BTreeSet<usize> = (0..q.vertices.len()).filter(|&v| facets.iter().all(|&f| q.incidence[f][v])).collect();
    on == idx.into_iter().collect()
}

/// Every check of the projection argument; any failure is an error.
pub fn final_case_check(x: &[dualcell_core::rat::Rat]) -> Result<FinalCaseReport, FinalCaseError> {
    check(x.len() == N, "direction has five coordinates")?;
    let pr = Projection::new(N, &[x.to_vec()]).map_err(|_| FinalCaseError::CheckFailed("projection kernel"))?;
    check(pr.kept == vec![0, 1, 2, 3], "projection keeps u1..u4")?;
    let (names, verts): (Vec<String>, Vec<QVec>) = q_vertices().into_iter().unzip();
    let images: Vec<QVec> = verts.iter().map(|v| pr.apply(v)).collect();
    check(images.iter().zip(LISTED_IMAGES).all(|(a, b)| *a == qvec(&b)), "listed projection images")?;
    let distinct_images = images.iter().collect::<BTreeSet<_>>().len();
    let q = q_polytope();
    let parallelograms_are_faces = (1..=N).all(|i| is_face(&q, &parallelogram(i)));
    check(parallelograms_are_faces, "parallelograms are faces of Q")?;
    let pq = Polytope::from_vertices(&images).map_err(|_| FinalCaseError::CheckFailed("hull of p(Q)"))?;
    let segment = vec![qvec(&[1, 1, 1, 0]), vec![frac(1, 1), frac(1, 2), frac(1, 1), frac(0, 1)]];
    check(segment.iter().all(|s| pq.contains(s)), "segment in p(Q)")?;
    let t = sub(&add(&u(4), &u(5)), &add(&u(1), &u(2)));
    let shift = pr.apply(&t);
    check(segment.iter().all(|s| pq.contains(&sub(s, &shift))), "segment in p(Q) + p(t)")?;
    let forced_vertex = add(&pr.apply(&u(1)), &shift);
    let collinear = rank(&[sub(&segment[1], &segment[0]), sub(&forced_vertex, &segment[0])], 4) == 1;
    check(collinear, "forced vertex on the segment line")?;
    let y45 = pr.apply(&add(&u(4), &u(5)));
    check(forced_vertex == sub(&y45, &pr.apply(&u(2))), "forced vertex is y4+y5-y2")?;
    let mut prism: Vec<QVec> = parallelogram(2).iter().map(|v| pr.apply(v)).collect();
    prism.push(y45);
    prism.push(forced_vertex.clone());
    let poly = Polytope::from_vertices(&prism).map_err(|_| FinalCaseError::CheckFailed("prism hull"))?;
    let prism_type = classify_3polytope(&poly).map_err(|_| FinalCaseError::CheckFailed("prism classification"))?;
    check(prism_type == Dual3Type::TriangularPrism && poly.vertices.len() == 6, "triangular prism")?;
    let implied_vertices = 8;
    let known_vertices = 2 * N;
    check(distinct_images == known_vertices, "ten distinct parallelogram vertices")?;
    Ok(FinalCaseReport {
        x: x.to_vec(),
        names,
        images,
        distinct_images,
        parallelograms_are_faces,
        segment,
        shift,
        forced_vertex,
        prism,
        prism_type,
        implied_vertices,
        known_vertices,
        contradiction: implied_vertices != known_vertices,
    })
}
