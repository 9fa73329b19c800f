//! The periodic face-to-face tiling by translates of one parallelotope, kept modulo the lattice.
//!
//! Coordinates are lattice-basis coordinates, so tile centers are the integer points. A face of
//! the tiling is `rep(orbit) + shift` where `rep` is a face of the prototile centered at 0.

use crate::lattice::{dv_cell, facet_vectors, venkov_check, Lattice, LatticeError, VenkovReport};
use crate::linalg::independent_subset;
use crate::lp::open_cone_point;
use crate::rat::{int, is_integral, lex_cmp, qvec, sub, to_i64_vec, QVec, Rat};
use crate::ratpoly::{affine_rank, is_skinny, FaceLattice, Hyperplane, PolyError, Polytope};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("prototile fails Venkov's conditions: {0:?}")]
    VenkovFailure(VenkovReport),
    #[error("prototile does not tile by the lattice: {0}")]
    NotALatticeTiling(String),
    #[error("face orbit {orbit} has dimension {dim}, expected {expected}")]
    WrongDimension { orbit: usize, dim: i32, expected: i32 },
    #[error("(d-2)-face orbit {orbit} has {tiles} tiles in its star")]
    UnexpectedStarSize { orbit: usize, tiles: usize },
    #[error("dual 3-cell with {vertices} vertices and {triangles} triangular facets fits no known type")]
    UnclassifiableCell { vertices: usize, triangles: usize },
    #[error("polytopes are not distinct parallelogram subcells of the 4-cell")]
    NotSubcells,
    #[error("parallelogram pair fits none of the four cases")]
    UnclassifiedPair,
    #[error("translated-cell property fails: {0}")]
    TranslateLemma(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A face of the tiling: the representative of `orbit` translated by `shift`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceRef {
    pub orbit: usize,
    pub shift: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct FaceOrbit {
    pub dim: i32,
    /// Prototile face index (into `TilingComplex::faces`) of the representative.
    pub rep: usize,
    /// Every prototile face `g` in the orbit with `g = rep + δ`.
    pub members: Vec<(usize, Vec<i64>)>,
}

#[derive(Clone, Debug)]
pub struct TilingComplex {
    pub lattice: Lattice,
    /// Prototile centered at the origin.
    pub prototile: Polytope,
    pub faces: FaceLattice,
    /// Sorted by dimension, then representative.
    pub orbits: Vec<FaceOrbit>,
    /// Orbit and `δ` of each prototile face; `None` for the empty face.
    pub local: Vec<Option<(usize, Vec<i64>)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FanType {
    #[serde(rename = "A_triangle")]
    ATriangle,
    #[serde(rename = "B_parallelogram")]
    BParallelogram,
    I,
    II,
    III,
    IV,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dual3Type {
    Parallelepiped,
    TriangularPrism,
    Octahedron,
    PyramidOverParallelogram,
    Simplex,
}

impl Dual3Type {
    pub fn fan_type(self) -> FanType {
        match self {
            Dual3Type::Parallelepiped => FanType::I,
            Dual3Type::TriangularPrism => FanType::II,
            Dual3Type::Octahedron => FanType::III,
            Dual3Type::PyramidOverParallelogram => FanType::IV,
            Dual3Type::Simplex => FanType::V,
        }
    }

    /// Whether the star scaling of a (d-3)-face with this dual cell is unique up to a multiplier.
    pub fn unique_scaling(self) -> bool {
        !matches!(self, Dual3Type::Parallelepiped | Dual3Type::TriangularPrism)
    }
}

/// Convex hull of the centers of the tiles containing a face.
#[derive(Clone, Debug)]
pub struct DualCell {
    pub face: FaceRef,
    pub verts: Vec<Vec<i64>>,
    /// Codimension of the face.
    pub combdim: i32,
    /// Measured affine dimension of the hull.
    pub dim: i32,
    pub polytope: Polytope,
}

/// Faces containing a face, split into tiles and proper faces of lower dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub tiles: Vec<Vec<i64>>,
    pub faces: Vec<FaceRef>,
}

/// Tiles around a (d-2)-face in cyclic order; `facets[i]` separates `tiles[i]` and `tiles[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeCycle {
    pub tiles: Vec<Vec<i64>>,
    pub facets: Vec<FaceRef>,
}

fn ivec(v: &[i64]) -> QVec {
    qvec(v)
}

fn add_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn translate_of(p: &Polytope, from: &[usize], to: &[usize]) -> Option<Vec<i64>> {
    if from.len() != to.len() {
        return None;
    }
    let t = sub(&p.vertices[to[0]], &p.vertices[from[0]]);
    if !is_integral(&t) {
        return None;
    }
    let mut img: Vec<usize> = from.iter().map(|&v| p.vertex_index(&crate::rat::add(&p.vertices[v], &t))).collect::<Option<_>>()?;
    img.sort_unstable();
    (img == to).then(|| to_i64_vec(&t).expect("integral"))
}

impl TilingComplex {
    /// The Dirichlet-Voronoi tiling of `lattice`.
    pub fn build(lattice: &Lattice) -> Result<TilingComplex, TilingError> {
        let p = dv_cell(lattice);
        let report = venkov_check(&p);
        if !report.passes() {
            return Err(TilingError::VenkovFailure(report));
        }
        Ok(TilingComplex::assemble(lattice.clone(), p))
    }

    /// Tiling by translates of an explicit prototile, given in lattice-basis coordinates.
    ///
    /// The prototile is recentered at its centroid. It must satisfy Venkov's conditions, have
    /// lattice facet vectors, and have volume 1 (the covolume of `Z^d`).
    pub fn from_prototile(lattice: &Lattice, prototile: &Polytope) -> Result<TilingComplex, TilingError> {
        if prototile.ambient != lattice.dim || prototile.dim != lattice.dim as i32 {
            return Err(TilingError::NotALatticeTiling("prototile is not full-dimensional".into()));
        }
        let c = prototile.centroid();
        let p = prototile.translate(&crate::rat::neg(&c));
        let report = venkov_check(&p);
        if !report.passes() {
            return Err(TilingError::VenkovFailure(report));
        }
        if !facet_vectors(&p).iter().all(|t| is_integral(t)) {
            return Err(TilingError::NotALatticeTiling("facet vectors are not lattice vectors".into()));
        }
        if p.volume() != Rat::one() {
            return Err(TilingError::NotALatticeTiling("volume differs from the lattice covolume".into()));
        }
        Ok(TilingComplex::assemble(lattice.clone(), p))
    }

    fn assemble(lattice: Lattice, prototile: Polytope) -> TilingComplex {
        let faces = FaceLattice::of(&prototile);
        let mut orbits: Vec<FaceOrbit> = Vec::new();
        let mut local: Vec<Option<(usize, Vec<i64>)>> = vec![None; faces.faces.len()];
        // faces are sorted by (dim, vertices), so orbits come out sorted the same way
        for (i, f) in faces.faces.iter().enumerate() {
            if f.dim < 0 {
                continue;
            }
            let hit = orbits.iter().enumerate().find_map(|(o, orb)| {
                if orb.dim != f.dim {
                    return None;
                }
                translate_of(&prototile, &faces.faces[orb.rep].vertices, &f.vertices).map(|t| (o, t))
            });
            match hit {
                Some((o, t)) => {
                    orbits[o].members.push((i, t.clone()));
                    local[i] = Some((o, t));
                }
                None => {
                    let d0 = vec![0; lattice.dim];
                    local[i] = Some((orbits.len(), d0.clone()));
                    orbits.push(FaceOrbit { dim: f.dim, rep: i, members: vec![(i, d0)] });
                }
            }
        }
        TilingComplex { lattice, prototile, faces, orbits, local }
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim
    }

    pub fn orbits_of_dim(&self, k: i32) -> Vec<usize> {
        (0..self.orbits.len()).filter(|&o| self.orbits[o].dim == k).collect()
    }

    /// Number of face orbits in each dimension `0..=d`.
    pub fn orbit_counts(&self) -> Vec<usize> {
        (0..=self.dim() as i32).map(|k| self.orbits_of_dim(k).len()).collect()
    }

    /// Alternating sum of orbit counts; 0 for any cell structure on the torus.
    pub fn euler_characteristic(&self) -> i64 {
        self.orbit_counts().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn rep(&self, orbit: usize) -> FaceRef {
        FaceRef { orbit, shift: vec![0; self.dim()] }
    }

    pub fn face_dim(&self, f: &FaceRef) -> i32 {
        self.orbits[f.orbit].dim
    }

    /// Tiling face carried by prototile face `local` in the tile centered at `tile`.
    pub fn face_ref(&self, local: usize, tile: &[i64]) -> FaceRef {
        let (o, d) = self.local[local].as_ref().expect("nonempty face");
        FaceRef { orbit: *o, shift: add_i(d, tile) }
    }

    /// Vertices of a tiling face, sorted.
    pub fn face_points(&self, f: &FaceRef) -> Vec<QVec> {
        let t = ivec(&f.shift);
        let rep = &self.faces.faces[self.orbits[f.orbit].rep];
        let mut pts: Vec<QVec> = rep.vertices.iter().map(|&v| crate::rat::add(&self.prototile.vertices[v], &t)).collect();
        pts.sort_by(|a, b| lex_cmp(a, b));
        pts
    }

    /// `(prototile face, tile)` pairs realizing `f`.
    fn incidences(&self, f: &FaceRef) -> Vec<(usize, Vec<i64>)> {
        self.orbits[f.orbit].members.iter().map(|(g, d)| (*g, sub_i(&f.shift, d))).collect()
    }

    /// Centers of the tiles containing `f`, sorted.
    pub fn tiles(&self, f: &FaceRef) -> Vec<Vec<i64>> {
        let mut t: Vec<Vec<i64>> = self.incidences(f).into_iter().map(|(_, t)| t).collect();
        t.sort();
        t
    }

    pub fn star(&self, f: &FaceRef) -> Star {
        let dim = self.face_dim(f);
        let mut faces: BTreeSet<FaceRef> = BTreeSet::new();
        for (g, tile) in self.incidences(f) {
            for h in self.faces.above(g) {
                let hd = self.faces.faces[h].dim;
                if hd > dim && hd < self.dim() as i32 {
                    faces.insert(self.face_ref(h, &tile));
                }
            }
        }
        Star { tiles: self.tiles(f), faces: faces.into_iter().collect() }
    }

    pub fn dual_cell(&self, f: &FaceRef) -> DualCell {
        let verts = self.tiles(f);
        let pts: Vec<QVec> = verts.iter().map(|v| ivec(v)).collect();
        let polytope = Polytope::from_vertices(&pts).expect("star is nonempty");
        DualCell { face: f.clone(), combdim: self.dim() as i32 - self.face_dim(f), dim: polytope.dim, verts, polytope }
    }

    /// Tiles and facets around a (d-2)-face in cyclic order, starting from the smallest tile.
    pub fn ridge_cycle(&self, f: &FaceRef) -> Result<RidgeCycle, TilingError> {
        let d = self.dim() as i32;
        if self.face_dim(f) != d - 2 {
            return Err(TilingError::WrongDimension { orbit: f.orbit, dim: self.face_dim(f), expected: d - 2 });
        }
        // facet -> the tiles on its two sides
        let mut sides: BTreeMap<FaceRef, Vec<Vec<i64>>> = BTreeMap::new();
        for (g, tile) in self.incidences(f) {
            for &h in &self.faces.up[g] {
                sides.entry(self.face_ref(h, &tile)).or_default().push(tile.clone());
            }
        }
        let tiles = self.tiles(f);
        if sides.len() != tiles.len() || sides.values().any(|v| v.len() != 2) {
            return Err(TilingError::UnexpectedStarSize { orbit: f.orbit, tiles: tiles.len() });
        }
        let mut order = vec![tiles[0].clone()];
        let mut facets = Vec::new();
        let mut used: BTreeSet<FaceRef> = BTreeSet::new();
        loop {
            let cur = order.last().expect("nonempty").clone();
            let next = sides.iter().find(|(k, v)| !used.contains(*k) && v.contains(&cur));
            let Some((facet, pair)) = next else { break };
            used.insert(facet.clone());
            facets.push(facet.clone());
            let other = if pair[0] == cur { pair[1].clone() } else { pair[0].clone() };
            if other == order[0] {
                break;
            }
            order.push(other);
        }
        if order.len() != tiles.len() || facets.len() != tiles.len() {
            return Err(TilingError::UnexpectedStarSize { orbit: f.orbit, tiles: tiles.len() });
        }
        Ok(RidgeCycle { tiles: order, facets })
    }

    pub fn classify_d2(&self, f: &FaceRef) -> Result<FanType, TilingError> {
        let d = self.dim() as i32;
        if self.face_dim(f) != d - 2 {
            return Err(TilingError::WrongDimension { orbit: f.orbit, dim: self.face_dim(f), expected: d - 2 });
        }
        match self.orbits[f.orbit].members.len() {
            3 => Ok(FanType::ATriangle),
            4 => Ok(FanType::BParallelogram),
            n => Err(TilingError::UnexpectedStarSize { orbit: f.orbit, tiles: n }),
        }
    }

    /// Type of every (d-3)-face orbit; the first parallelepiped or prism is the witness of reducibility.
    pub fn is_3_irreducible(&self) -> Result<Irreducibility, TilingError> {
        let d = self.dim() as i32;
        let mut types = Vec::new();
        for o in self.orbits_of_dim(d - 3) {
            types.push((o, classify_dual3(&self.dual_cell(&self.rep(o)))?));
        }
        let witness = types.iter().find(|(_, t)| !t.unique_scaling()).cloned();
        Ok(Irreducibility { irreducible: witness.is_none(), witness, types })
    }

    /// Intersection of a dual cell with its translate by `t`, with the separating hyperplane `N`
    /// satisfying `D = N ∩ D^k = N ∩ (D^k + t)` and `lin(F - F) ⊂ N - N`.
    pub fn translate_intersection(&self, dc: &DualCell, t: &[i64]) -> Result<Option<TranslateIntersection>, TilingError> {
        let n = self.dim();
        let tq = ivec(t);
        let moved = dc.polytope.translate(&tq);
        let cell = match dc.polytope.intersect(&moved) {
            Ok(c) => c,
            Err(PolyError::EmptyInput) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let in_both = cell.vertices.iter().all(|v| dc.polytope.vertex_index(v).is_some() && moved.vertex_index(v).is_some());
        if !in_both {
            return Err(TilingError::TranslateLemma("intersection has a vertex outside both vertex sets".into()));
        }
        let fp = self.face_points(&dc.face);
        let dirs: Vec<QVec> = fp.iter().skip(1).map(|p| sub(p, &fp[0])).collect();
        let lin = independent_subset(&dirs, n);
        // unknowns (a, c) for the hyperplane a·x = c
        let hom = |x: &QVec, s: i64| -> QVec {
            let mut r: QVec = x.iter().map(|v| v * int(s)).collect();
            r.push(int(-s));
            r
        };
        let mut eq: Vec<QVec> = cell.vertices.iter().map(|v| hom(v, 1)).collect();
        for l in &lin {
            let mut r = l.clone();
            r.push(Rat::zero());
            eq.push(r);
        }
        let mut strict: Vec<QVec> = Vec::new();
        for v in &dc.polytope.vertices {
            if cell.vertex_index(v).is_none() {
                strict.push(hom(v, -1));
            }
        }
        for v in &moved.vertices {
            if cell.vertex_index(v).is_none() {
                strict.push(hom(v, 1));
            }
        }
        let Some(sol) = open_cone_point(n + 1, &strict, &[], &eq) else {
            return Err(TilingError::TranslateLemma("no separating hyperplane through the intersection".into()));
        };
        let hyperplane = Hyperplane { normal: sol[..n].to_vec(), offset: sol[n].clone() };
        let star = self.star(&dc.face);
        let mut target: Vec<Vec<i64>> = cell.vertices.iter().map(|v| to_i64_vec(v).expect("lattice point")).collect();
        target.sort();
        let mut candidates = star.faces.clone();
        candidates.push(dc.face.clone());
        let top = self.orbits_of_dim(n as i32)[0];
        candidates.extend(star.tiles.iter().map(|t| FaceRef { orbit: top, shift: t.clone() }));
        let face = candidates.into_iter().find(|g| self.tiles(g) == target);
        Ok(Some(TranslateIntersection { cell, hyperplane, face }))
    }

    /// Skinniness of every dual cell orbit, and the vertex bound for dual 3-cells.
    pub fn skinny_audit(&self) -> SkinnyReport {
        let d = self.dim() as i32;
        let mut failures = Vec::new();
        let mut checked = 0;
        for o in 0..self.orbits.len() {
            if self.orbits[o].dim >= d {
                continue;
            }
            let dc = self.dual_cell(&self.rep(o));
            checked += 1;
            if !is_skinny(&dc.polytope) {
                failures.push(SkinnyFailure { orbit: o, reason: "not skinny".into() });
            }
            if dc.combdim == 3 {
                let nv = dc.verts.len();
                let ok = nv < 8 || (nv == 8 && classify_dual3(&dc) == Ok(Dual3Type::Parallelepiped));
                if !ok {
                    failures.push(SkinnyFailure { orbit: o, reason: format!("dual 3-cell with {nv} vertices") });
                }
            }
        }
        SkinnyReport { checked, failures }
    }

    /// Orbit table for reports and golden files.
    pub fn audit(&self) -> Result<TilingAudit, TilingError> {
        let d = self.dim() as i32;
        let mut orbits = Vec::new();
        for o in 0..self.orbits.len() {
            let f = self.rep(o);
            let dc = self.dual_cell(&f);
            let class = if self.orbits[o].dim == d - 2 {
                Some(format!("{:?}", self.classify_d2(&f)?))
            } else if self.orbits[o].dim == d - 3 {
                Some(serde_json::to_value(classify_dual3(&dc)?).expect("enum").as_str().expect("string").to_string())
            } else {
                None
            };
            orbits.push(OrbitRow {
                id: o,
                dim: self.orbits[o].dim,
                tiles: dc.verts.len(),
                combdim: dc.combdim,
                dual_dim: dc.dim,
                classification: class,
            });
        }
        let irr = self.is_3_irreducible()?;
        Ok(TilingAudit {
            dim: self.dim(),
            orbit_counts: self.orbit_counts(),
            euler_characteristic: self.euler_characteristic(),
            three_irreducible: irr.irreducible,
            orbits,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub witness: Option<(usize, Dual3Type)>,
    pub types: Vec<(usize, Dual3Type)>,
}

#[derive(Clone, Debug)]
pub struct TranslateIntersection {
    pub cell: Polytope,
    pub hyperplane: Hyperplane,
    /// Face of the tiling whose dual cell is the intersection.
    pub face: Option<FaceRef>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkinnyFailure {
    pub orbit: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkinnyReport {
    pub checked: usize,
    pub failures: Vec<SkinnyFailure>,
}

impl SkinnyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub id: usize,
    pub dim: i32,
    pub tiles: usize,
    pub combdim: i32,
    pub dual_dim: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingAudit {
    pub dim: usize,
    pub orbit_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub three_irreducible: bool,
    pub orbits: Vec<OrbitRow>,
}

/// Table 1 type of a dual 3-cell, from its vertex count and number of triangular facets.
pub fn classify_dual3(dc: &DualCell) -> Result<Dual3Type, TilingError> {
    classify_3polytope(&dc.polytope)
}

pub fn classify_3polytope(p: &Polytope) -> Result<Dual3Type, TilingError> {
    let nv = p.vertices.len();
    let tri = (0..p.facets.len()).filter(|&f| p.facet_vertices(f).len() == 3).count();
    if p.dim != 3 {
        return Err(TilingError::UnclassifiableCell { vertices: nv, triangles: tri });
    }
    match (nv, tri) {
        (8, 0) => Ok(Dual3Type::Parallelepiped),
        (6, 2) => Ok(Dual3Type::TriangularPrism),
        (6, 8) => Ok(Dual3Type::Octahedron),
        (5, 4) => Ok(Dual3Type::PyramidOverParallelogram),
        (4, 4) => Ok(Dual3Type::Simplex),
        _ => Err(TilingError::UnclassifiableCell { vertices: nv, triangles: tri }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Complementary,
    Adjacent,
    Translate,
    Skew,
}

fn is_parallelogram(p: &Polytope) -> bool {
    p.dim == 2 && p.vertices.len() == 4
}

/// Edge directions of a parallelogram, up to sign and scaling.
fn edge_directions(p: &Polytope) -> Vec<QVec> {
    let fl = FaceLattice::of(p);
    let mut dirs: Vec<QVec> = Vec::new();
    for e in fl.of_dim(1) {
        let vs = &fl.faces[e].vertices;
        let d = crate::rat::primitive_signed(&sub(&p.vertices[vs[1]], &p.vertices[vs[0]]));
        if !dirs.contains(&d) {
            dirs.push(d);
        }
    }
    dirs
}

/// Which of the four cases relates two distinct parallelogram subcells of a dual 4-cell.
pub fn classify_parallelogram_pair(p1: &Polytope, p2: &Polytope, d4: &Polytope) -> Result<PairClass, TilingError> {
    let sub_of = |p: &Polytope| p.vertices.iter().all(|v| d4.vertex_index(v).is_some());
    if !is_parallelogram(p1) || !is_parallelogram(p2) || p1.vertices == p2.vertices || !sub_of(p1) || !sub_of(p2) {
        return Err(TilingError::NotSubcells);
    }
    let mut all = p1.vertices.clone();
    all.extend(p2.vertices.iter().cloned());
    let span = affine_rank(&all);
    match p1.intersect(p2) {
        Ok(i) if i.dim == 0 && span == 4 => return Ok(PairClass::Complementary),
        Ok(i) if i.dim == 1 && span == 3 => return Ok(PairClass::Adjacent),
        Ok(_) => return Err(TilingError::UnclassifiedPair),
        Err(PolyError::EmptyInput) => {}
        Err(e) => return Err(e.into()),
    }
    let t = sub(&p1.vertices[0], &p2.vertices[0]);
    let shifted: Vec<QVec> = p2.vertices.iter().map(|v| crate::rat::add(v, &t)).collect();
    let own: Vec<QVec> = p1.vertices.iter().skip(1).map(|v| sub(v, &p1.vertices[0])).collect();
    if shifted == p1.vertices && !crate::linalg::in_span(&t, &own) && span == 3 {
        return Ok(PairClass::Translate);
    }
    let d1 = edge_directions(p1);
    let common = edge_directions(p2).iter().filter(|d| d1.contains(d)).count();
    if common == 1 && span == 4 {
        return Ok(PairClass::Skew);
    }
    Err(TilingError::UnclassifiedPair)
}

/// No two points congruent modulo `2Z^d`.
pub fn parity_distinct(verts: &[Vec<i64>]) -> bool {
    let classes: BTreeSet<Vec<i64>> = verts.iter().map(|v| v.iter().map(|x| x.rem_euclid(2)).collect()).collect();
    classes.len() == verts.len()
}

/// The only lattice points in the hull of a dual cell are its vertices.
pub fn lattice_points_are_vertices(dc: &DualCell) -> bool {
    let p = &dc.polytope;
    let n = p.ambient;
    let lo: Vec<i64> = (0..n).map(|i| dc.verts.iter().map(|v| v[i]).min().expect("nonempty")).collect();
    let hi: Vec<i64> = (0..n).map(|i| dc.verts.iter().map(|v| v[i]).max().expect("nonempty")).collect();
    let mut cur = lo.clone();
    loop {
        if p.contains(&ivec(&cur)) && !dc.verts.contains(&cur) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cplx(rows: &[&[i64]]) -> TilingComplex {
        TilingComplex::build(&Lattice::from_int_gram(rows).unwrap()).unwrap()
    }

    #[test]
    fn square_grid() {
        let c = cplx(&[&[1, 0], &[0, 1]]);
        assert_eq!(c.orbit_counts(), vec![1, 2, 1]);
        let v = c.rep(c.orbits_of_dim(0)[0]);
        let s = c.star(&v);
        assert_eq!(s.tiles.len(), 4);
        assert_eq!(s.faces.len(), 4);
        assert_eq!(c.classify_d2(&v), Ok(FanType::BParallelogram));
    }

    #[test]
    fn hexagonal_grid() {
        let c = cplx(&[&[2, 1], &[1, 2]]);
        assert_eq!(c.orbit_counts(), vec![2, 3, 1]);
        assert_eq!(c.euler_characteristic(), 0);
        for o in c.orbits_of_dim(0) {
            assert_eq!(c.classify_d2(&c.rep(o)), Ok(FanType::ATriangle));
            let rc = c.ridge_cycle(&c.rep(o)).unwrap();
            assert_eq!(rc.tiles.len(), 3);
        }
    }

    #[test]
    fn cube_vertex_is_parallelepiped() {
        let c = cplx(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let irr = c.is_3_irreducible().unwrap();
        assert!(!irr.irreducible);
        assert_eq!(irr.witness.map(|w| w.1), Some(Dual3Type::Parallelepiped));
    }

    #[test]
    fn pair_classes() {
        let q = |v: &[&[i64]]| Polytope::from_vertices(&v.iter().map(|x| qvec(x)).collect::<Vec<_>>()).unwrap();
        let mut cube = Vec::new();
        for m in 0..16i64 {
            cube.push(vec![m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1]);
        }
        let d4 = Polytope::from_vertices(&cube.iter().map(|x| qvec(x)).collect::<Vec<_>>()).unwrap();
        let a = q(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]]);
        let b = q(&[&[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 1, 1]]);
        let adj = q(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[1, 0, 1, 0]]);
        let tr = q(&[&[0, 0, 1, 0], &[1, 0, 1, 0], &[0, 1, 1, 0], &[1, 1, 1, 0]]);
        let skew = q(&[&[0, 0, 1, 0], &[1, 0, 1, 0], &[0, 0, 1, 1], &[1, 0, 1, 1]]);
        assert_eq!(classify_parallelogram_pair(&a, &b, &d4), Ok(PairClass::Complementary));
        assert_eq!(classify_parallelogram_pair(&a, &adj, &d4), Ok(PairClass::Adjacent));
        assert_eq!(classify_parallelogram_pair(&a, &tr, &d4), Ok(PairClass::Translate));
        assert_eq!(classify_parallelogram_pair(&a, &skew, &d4), Ok(PairClass::Skew));
        assert_eq!(classify_parallelogram_pair(&a, &a, &d4), Err(TilingError::NotSubcells));
    }
}
