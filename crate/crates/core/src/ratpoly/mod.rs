//! Exact rational polyhedral kernel.

pub mod dd;
pub mod face;
pub mod polytope;

pub use face::{Face, FaceLattice};
pub use polytope::{Facet, Polytope, PolytopeJson};

use crate::linalg::{rank, rref};
use crate::lp::open_cone_point;
use crate::rat::{dot, is_zero, lex_cmp, neg, primitive, sub, QVec, Rat};
use dd::{cone_from_constraints, facets_of_generated};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("empty input")]
    EmptyInput,
    #[error("facet description is unbounded")]
    UnboundedInput,
    #[error("points or normals of different dimensions")]
    DimensionMismatch,
    #[error("kernel vectors are not linearly independent")]
    KernelNotIndependent,
    #[error("point is not a vertex of the polytope")]
    NotAVertex,
    #[error("zero direction")]
    ZeroDirection,
    #[error("direction is not parallel to the affine hull")]
    DirectionOutsideSpan,
}

pub fn affine_rank(points: &[QVec]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<QVec> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(&diffs, points[0].len())
}

/// Polyhedral cone `apex + {y : h·y <= 0 for h in halfspaces, e·y = 0 for e in equalities}`,
/// equivalently `apex + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: QVec,
    pub rays: Vec<QVec>,
    pub lineality: Vec<QVec>,
    pub halfspaces: Vec<QVec>,
    pub equalities: Vec<QVec>,
}

impl Cone {
    pub fn from_generators(apex: QVec, rays: &[QVec], lineality: &[QVec]) -> Cone {
        let n = apex.len();
        let (eqs, facets) = facets_of_generated(n, rays, lineality);
        let halfspaces: Vec<QVec> = facets.iter().map(|f| neg(f)).collect();
        Cone::assemble(apex, halfspaces, eqs)
    }

    pub fn from_halfspaces(apex: QVec, halfspaces: &[QVec], equalities: &[QVec]) -> Cone {
        let n = apex.len();
        let mut cons: Vec<QVec> = halfspaces.iter().map(|h| neg(h)).collect();
        for e in equalities {
            cons.push(e.clone());
            cons.push(neg(e));
        }
        let g = cone_from_constraints(n, &cons);
        Cone::from_generators(apex, &g.rays, &g.lineality)
    }

    fn assemble(apex: QVec, mut halfspaces: Vec<QVec>, equalities: Vec<QVec>) -> Cone {
        let n = apex.len();
        halfspaces.sort_by(|a, b| lex_cmp(a, b));
        let mut cons: Vec<QVec> = halfspaces.iter().map(|h| neg(h)).collect();
        for e in &equalities {
            cons.push(e.clone());
            cons.push(neg(e));
        }
        let g = cone_from_constraints(n, &cons);
        let lineality = dd::canonical_equalities(&g.lineality, n);
        let mut rays: Vec<QVec> = g.rays.iter().map(|r| primitive(&crate::linalg::reject(r, &lineality))).collect();
        rays.sort_by(|a, b| lex_cmp(a, b));
        rays.dedup();
        Cone { apex, rays, lineality, halfspaces, equalities }
    }

    pub fn dim(&self) -> usize {
        dd::generated_dim(self.apex.len(), &self.rays, &self.lineality)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let y = sub(x, &self.apex);
        self.equalities.iter().all(|e| dot(e, &y).is_zero())
            && self.halfspaces.iter().all(|h| dot(h, &y) <= Rat::zero())
    }

    /// Membership in the interior relative to the cone's linear span.
    pub fn relint_contains(&self, x: &[Rat]) -> bool {
        let y = sub(x, &self.apex);
        self.equalities.iter().all(|e| dot(e, &y).is_zero())
            && self.halfspaces.iter().all(|h| dot(h, &y) < Rat::zero())
    }

    pub fn translated_to_origin(&self) -> Cone {
        Cone { apex: crate::rat::zeros(self.apex.len()), ..self.clone() }
    }
}

/// Tangent cone of `p` at vertex `v`: the active facets, generated by the incident edges.
pub fn cone_at_vertex(p: &Polytope, v: &[Rat]) -> Result<Cone, PolyError> {
    let vi = p.vertex_index(v).ok_or(PolyError::NotAVertex)?;
    let fl = FaceLattice::of(p);
    let mut rays: Vec<QVec> = Vec::new();
    for e in fl.of_dim(1) {
        let vs = &fl.faces[e].vertices;
        if vs.contains(&vi) {
            let w = if vs[0] == vi { vs[1] } else { vs[0] };
            rays.push(primitive(&sub(&p.vertices[w], v)));
        }
    }
    rays.sort_by(|a, b| lex_cmp(a, b));
    let mut halfspaces: Vec<QVec> =
        (0..p.facets.len()).filter(|&f| p.incidence[f][vi]).map(|f| p.facets[f].normal.clone()).collect();
    halfspaces.sort_by(|a, b| lex_cmp(a, b));
    let eqs: Vec<QVec> = p.equalities.iter().map(|e| e.normal.clone()).collect();
    let equalities = dd::canonical_equalities(&eqs, p.ambient);
    Ok(Cone { apex: v.to_vec(), rays, lineality: Vec::new(), halfspaces, equalities })
}

/// Minkowski sum of a cone with a linear subspace.
pub fn cone_minus_linspace(c: &Cone, l: &[QVec]) -> Cone {
    let mut lin = c.lineality.clone();
    lin.extend(l.iter().cloned());
    Cone::from_generators(c.apex.clone(), &c.rays, &lin)
}

/// Linear projection killing `kernel`. The kernel is row reduced with pivots taken
/// from the highest coordinate downward; pivot coordinates are dropped.
#[derive(Clone, Debug)]
pub struct Projection {
    pub ambient: usize,
    pub kept: Vec<usize>,
    reduced: Vec<(usize, QVec)>,
}

impl Projection {
    pub fn new(n: usize, kernel: &[QVec]) -> Result<Projection, PolyError> {
        if kernel.iter().any(|k| k.len() != n) {
            return Err(PolyError::DimensionMismatch);
        }
        if rank(kernel, n) != kernel.len() {
            return Err(PolyError::KernelNotIndependent);
        }
        let rev: Vec<QVec> = kernel.iter().map(|k| k.iter().rev().cloned().collect()).collect();
        let (r, piv) = rref(&rev, n);
        let reduced: Vec<(usize, QVec)> = r
            .into_iter()
            .zip(piv)
            .map(|(row, p)| (n - 1 - p, row.into_iter().rev().collect()))
            .collect();
        let pivots: Vec<usize> = reduced.iter().map(|(p, _)| *p).collect();
        let kept = (0..n).filter(|i| !pivots.contains(i)).collect();
        Ok(Projection { ambient: n, kept, reduced })
    }

    pub fn apply(&self, x: &[Rat]) -> QVec {
        let mut y = x.to_vec();
        for (p, k) in &self.reduced {
            let f = y[*p].clone();
            if !f.is_zero() {
                y = crate::rat::axpy(&y, &-f, k);
            }
        }
        self.kept.iter().map(|&i| y[i].clone()).collect()
    }
}

pub fn project(p: &Polytope, kernel: &[QVec]) -> Result<Polytope, PolyError> {
    let pr = Projection::new(p.ambient, kernel)?;
    let img: Vec<QVec> = p.vertices.iter().map(|v| pr.apply(v)).collect();
    Polytope::from_vertices(&img)
}

/// Hyperplane `normal·x = offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: QVec,
    pub offset: Rat,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparationError {
    #[error("relative interiors intersect")]
    RelintIntersect,
    #[error("every weakly separating hyperplane contains one of the bodies")]
    Degenerate,
}

/// A hyperplane with `p1` in `normal·x <= offset`, `p2` in `normal·x >= offset`, and neither
/// body contained in it, so the relative interiors lie in opposite open half-spaces.
pub fn separate(p1: &Polytope, p2: &Polytope) -> Result<Hyperplane, SeparationError> {
    let n = p1.ambient;
    let diffs: Vec<QVec> = p1.vertices.iter().flat_map(|a| p2.vertices.iter().map(move |b| sub(b, a))).collect();
    // h with h·(b - a) >= 0 for all a in p1, b in p2
    let dual = cone_from_constraints(n, &diffs);
    let mut gens: Vec<QVec> = dual.rays.clone();
    gens.extend(dual.lineality.iter().cloned());
    let nonconstant = |h: &QVec, p: &Polytope| p.vertices.iter().any(|v| dot(h, v) != dot(h, &p.vertices[0]));
    let some1 = gens.iter().any(|h| nonconstant(h, p1));
    let some2 = gens.iter().any(|h| nonconstant(h, p2));
    let d = Polytope::from_vertices(&diffs).expect("nonempty");
    if d.relint_contains(&crate::rat::zeros(n)) {
        return Err(SeparationError::RelintIntersect);
    }
    if dual.rays.is_empty() || !(some1 && some2) {
        return Err(SeparationError::Degenerate);
    }
    for k in 1i64.. {
        let base = crate::rat::int(k + 1);
        let mut h = crate::rat::zeros(n);
        let mut w = Rat::one();
        for (i, g) in gens.iter().enumerate() {
            // lineality directions enter with both signs allowed; rays with positive weight
            let c = if i >= dual.rays.len() && k % 2 == 0 { -w.clone() } else { w.clone() };
            h = crate::rat::axpy(&h, &c, g);
            w *= &base;
        }
        if nonconstant(&h, p1) && nonconstant(&h, p2) {
            let normal = primitive(&h);
            let hi = p1.vertices.iter().map(|v| dot(&normal, v)).max().expect("nonempty");
            let lo = p2.vertices.iter().map(|v| dot(&normal, v)).min().expect("nonempty");
            return Ok(Hyperplane { normal, offset: (hi + lo) / crate::rat::int(2) });
        }
    }
    unreachable!()
}

/// Vertices `v` with `v + t u` in the relative interior for some `t > 0`.
pub fn illuminated_vertices(p: &Polytope, u: &[Rat]) -> Result<Vec<usize>, PolyError> {
    if is_zero(u) {
        return Err(PolyError::ZeroDirection);
    }
    if p.equalities.iter().any(|e| !dot(&e.normal, u).is_zero()) {
        return Err(PolyError::DirectionOutsideSpan);
    }
    Ok((0..p.vertices.len())
        .filter(|&v| (0..p.facets.len()).filter(|&f| p.incidence[f][v]).all(|f| dot(&p.facets[f].normal, u) < Rat::zero()))
        .collect())
}

/// Strict-inequality data of the open tangent cone at vertex `v` (translated to the origin).
fn open_vertex_cone(p: &Polytope, v: usize) -> Vec<QVec> {
    (0..p.facets.len()).filter(|&f| p.incidence[f][v]).map(|f| p.facets[f].normal.clone()).collect()
}

/// A direction illuminating both vertices `i` and `j`, if any.
pub fn common_illumination(p: &Polytope, i: usize, j: usize) -> Option<QVec> {
    let mut strict = open_vertex_cone(p, i);
    strict.extend(open_vertex_cone(p, j));
    let eqs: Vec<QVec> = p.equalities.iter().map(|e| e.normal.clone()).collect();
    open_cone_point(p.ambient, &strict, &[], &eqs)
}

/// No single direction illuminates two distinct vertices.
pub fn is_skinny(p: &Polytope) -> bool {
    skinny_witness(p).is_none()
}

/// A pair of vertices and a direction illuminating both, if the polytope is not skinny.
pub fn skinny_witness(p: &Polytope) -> Option<(usize, usize, QVec)> {
    let nv = p.vertices.len();
    for i in 0..nv {
        for j in i + 1..nv {
            if let Some(u) = common_illumination(p, i, j) {
                return Some((i, j, u));
            }
        }
    }
    None
}
