//! Canonical scalings of a tiling: positive factors `s(F)` on facet orbits such that around
//! every (d-2)-face the scaled normals sum to zero for a suitable choice of orientations.
//!
//! Normals are rational covectors (one primitive representative per facet orbit), so the
//! factors absorb the lengths that unit normals would carry.

use crate::linalg::{nullspace, solve, transpose};
use crate::lp::feasible_point;
use crate::rat::{dot, int, is_zero, neg, primitive, scale, sign, sub, JRat, QVec, Rat};
use crate::tiling::{classify_dual3, Dual3Type, FaceRef, RidgeCycle, TilingComplex, TilingError};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalingError {
    #[error("star of face {0:?} has no positive scaling")]
    NoPositiveSolution(FaceRef),
    #[error("face {0:?} is not a primitive vertex")]
    NotPrimitiveVertex(FaceRef),
    #[error("coherence hypothesis fails: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// One primitive outward normal covector per facet orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFrame {
    pub normals: BTreeMap<usize, QVec>,
}

impl NormalFrame {
    /// Normals of the prototile facets representing each orbit.
    pub fn canonical(c: &TilingComplex) -> NormalFrame {
        let d = c.dim() as i32;
        let p = &c.prototile;
        let normals = c
            .orbits_of_dim(d - 1)
            .into_iter()
            .map(|o| {
                let verts = &c.faces.faces[c.orbits[o].rep].vertices;
                let f = (0..p.facets.len()).find(|&f| &p.facet_vertices(f) == verts).expect("facet");
                (o, primitive(&p.facets[f].normal))
            })
            .collect();
        NormalFrame { normals }
    }

    pub fn normal(&self, orbit: usize) -> &QVec {
        &self.normals[&orbit]
    }

    /// Same frame with the representative of `orbit` multiplied by `k`.
    pub fn rescaled(&self, orbit: usize, k: &Rat) -> NormalFrame {
        let mut f = self.clone();
        let n = scale(&f.normals[&orbit], k);
        f.normals.insert(orbit, n);
        f
    }
}

/// Positive factor per facet orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingAssignment {
    pub factors: BTreeMap<usize, Rat>,
}

impl ScalingAssignment {
    pub fn constant(c: &TilingComplex, v: Rat) -> ScalingAssignment {
        let d = c.dim() as i32;
        ScalingAssignment { factors: c.orbits_of_dim(d - 1).into_iter().map(|o| (o, v.clone())).collect() }
    }

    pub fn get(&self, orbit: usize) -> &Rat {
        &self.factors[&orbit]
    }

    pub fn to_json(&self) -> BTreeMap<String, JRat> {
        self.factors.iter().map(|(k, v)| (k.to_string(), JRat(v.clone()))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalingFamily {
    UniqueRay(QVec),
    /// Kernel basis when the star scaling has more than one parameter.
    MultiParameter(Vec<QVec>),
}

/// Scaling of the star of a (d-2)-face; entries follow `cycle.facets`.
#[derive(Clone, Debug)]
pub struct StarScaling2 {
    pub ridge: FaceRef,
    pub cycle: RidgeCycle,
    /// Orientations `σ_i` making `Σ s_i σ_i n_i = 0` the closing condition.
    pub signs: Vec<i32>,
    pub family: ScalingFamily,
    /// A positive member of the family.
    pub witness: QVec,
}

/// Scaling of the star of a (d-3)-face; entries follow `facets`.
#[derive(Clone, Debug)]
pub struct StarScaling3 {
    pub face: FaceRef,
    pub facets: Vec<FaceRef>,
    pub kernel: Vec<QVec>,
    pub unique: bool,
    pub witness: QVec,
    pub dual_type: Dual3Type,
}

/// Oriented normals `σ_i n_i` with `σ_i` pointing from `tiles[i]` to `tiles[i+1]`.
fn oriented_columns(cycle: &RidgeCycle, frame: &NormalFrame) -> (Vec<QVec>, Vec<i32>) {
    let m = cycle.tiles.len();
    let mut cols = Vec::with_capacity(m);
    let mut signs = Vec::with_capacity(m);
    for i in 0..m {
        let n = frame.normal(cycle.facets[i].orbit);
        let step = sub(&crate::rat::qvec(&cycle.tiles[(i + 1) % m]), &crate::rat::qvec(&cycle.tiles[i]));
        let s = sign(&dot(n, &step));
        signs.push(s);
        cols.push(scale(n, &int(s as i64)));
    }
    (cols, signs)
}

fn positive_kernel_point(rows: &[QVec], m: usize) -> Option<QVec> {
    let ineq: Vec<(QVec, Rat)> = (0..m).map(|i| (neg(&crate::rat::unit(m, i)), -Rat::one())).collect();
    let eq: Vec<(QVec, Rat)> = rows.iter().map(|r| (r.clone(), Rat::zero())).collect();
    feasible_point(m, &ineq, &eq)
}

pub fn star_scaling_d2(c: &TilingComplex, f: &FaceRef, frame: &NormalFrame) -> Result<StarScaling2, ScalingError> {
    let cycle = c.ridge_cycle(f)?;
    let m = cycle.facets.len();
    let (cols, signs) = oriented_columns(&cycle, frame);
    let rows = transpose(&cols, c.dim());
    let kernel = nullspace(&rows, m);
    let witness = positive_kernel_point(&rows, m).ok_or_else(|| ScalingError::NoPositiveSolution(f.clone()))?;
    let family = if kernel.len() == 1 {
        ScalingFamily::UniqueRay(primitive(&witness))
    } else {
        ScalingFamily::MultiParameter(kernel)
    };
    Ok(StarScaling2 { ridge: f.clone(), cycle, signs, family, witness })
}

pub fn star_scaling_d3(c: &TilingComplex, f: &FaceRef, frame: &NormalFrame) -> Result<StarScaling3, ScalingError> {
    let d = c.dim() as i32;
    if c.face_dim(f) != d - 3 {
        return Err(TilingError::WrongDimension { orbit: f.orbit, dim: c.face_dim(f), expected: d - 3 }.into());
    }
    let star = c.star(f);
    let facets: Vec<FaceRef> = star.faces.iter().filter(|g| c.face_dim(g) == d - 1).cloned().collect();
    let m = facets.len();
    let mut rows: Vec<QVec> = Vec::new();
    for r in star.faces.iter().filter(|g| c.face_dim(g) == d - 2) {
        let cycle = c.ridge_cycle(r)?;
        let (cols, _) = oriented_columns(&cycle, frame);
        for k in 0..c.dim() {
            let mut row = crate::rat::zeros(m);
            for (i, g) in cycle.facets.iter().enumerate() {
                let j = facets.iter().position(|h| h == g).expect("facet of the star");
                row[j] += &cols[i][k];
            }
            rows.push(row);
        }
    }
    let kernel = nullspace(&rows, m);
    let witness = positive_kernel_point(&rows, m).ok_or_else(|| ScalingError::NoPositiveSolution(f.clone()))?;
    let dual_type = classify_dual3(&c.dual_cell(f))?;
    Ok(StarScaling3 { face: f.clone(), facets, unique: kernel.len() == 1, kernel, witness, dual_type })
}

/// Factors on the star of a vertex where exactly `d+1` tiles meet, built from the simplex
/// `Δ = {x : x·e_i <= 1}` over the edge vectors `e_i`: `s(F_kl) n = ±(v_k - v_l)`.
#[derive(Clone, Debug)]
pub struct PrimitiveVertexScaling {
    pub vertex: FaceRef,
    pub edges: Vec<QVec>,
    /// Vertices of `Δ` as covectors; `simplex[i]` is the one not on the plane `x·e_i = 1`.
    pub simplex: Vec<QVec>,
    /// Facet, the two tile indices it separates, and its factor.
    pub facets: Vec<(FaceRef, usize, usize, Rat)>,
    pub triple_identities: bool,
    pub matches_star: bool,
}

pub fn primitive_vertex_scaling(c: &TilingComplex, v: &FaceRef, frame: &NormalFrame) -> Result<PrimitiveVertexScaling, ScalingError> {
    let d = c.dim();
    let not_prim = || ScalingError::NotPrimitiveVertex(v.clone());
    if c.face_dim(v) != 0 {
        return Err(not_prim());
    }
    let tiles = c.tiles(v);
    let star = c.star(v);
    let edge_refs: Vec<&FaceRef> = star.faces.iter().filter(|g| c.face_dim(g) == 1).collect();
    if tiles.len() != d + 1 || edge_refs.len() != d + 1 {
        return Err(not_prim());
    }
    let apex = c.face_points(v).remove(0);
    let edges: Vec<QVec> = edge_refs
        .iter()
        .map(|e| {
            let pts = c.face_points(e);
            let other = if pts[0] == apex { &pts[1] } else { &pts[0] };
            sub(other, &apex)
        })
        .collect();
    // tile j is the one whose vertex cone misses edge j
    let mut order: Vec<usize> = Vec::with_capacity(d + 1);
    for e in &edge_refs {
        let te = c.tiles(e);
        let missing: Vec<usize> = (0..=d).filter(|&t| !te.contains(&tiles[t])).collect();
        if missing.len() != 1 {
            return Err(not_prim());
        }
        order.push(missing[0]);
    }
    let mut simplex = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let rows: Vec<QVec> = (0..=d).filter(|&j| j != i).map(|j| edges[j].clone()).collect();
        let rhs = vec![Rat::one(); d];
        simplex.push(solve(&rows, &rhs, d).ok_or_else(not_prim)?);
    }
    let tile_slot = |t: &Vec<i64>| order.iter().position(|&o| &tiles[o] == t).expect("tile of the star");
    let mut facets = Vec::new();
    let mut oriented: BTreeMap<(usize, usize), QVec> = BTreeMap::new();
    for g in star.faces.iter().filter(|g| c.face_dim(g) == d as i32 - 1) {
        let tg = c.tiles(g);
        let (k, l) = (tile_slot(&tg[0]), tile_slot(&tg[1]));
        let w = sub(&simplex[k], &simplex[l]);
        let n = frame.normal(g.orbit);
        let ratio = proportionality(&w, n).ok_or_else(not_prim)?;
        let s = ratio.abs();
        oriented.insert((k, l), scale(n, &ratio));
        oriented.insert((l, k), scale(n, &-ratio));
        facets.push((g.clone(), k, l, s));
    }
    let mut triple_identities = oriented.len() == d * (d + 1);
    for k in 0..=d {
        for l in 0..=d {
            for m in 0..=d {
                if k < l && l < m {
                    let total = crate::rat::add(&crate::rat::add(&oriented[&(k, l)], &oriented[&(l, m)]), &oriented[&(m, k)]);
                    triple_identities &= is_zero(&total);
                }
            }
        }
    }
    let reference: Option<(Vec<FaceRef>, QVec)> = if d == 2 {
        match star_scaling_d2(c, v, frame)?.family {
            ScalingFamily::UniqueRay(r) => {
                let cyc = c.ridge_cycle(v)?;
                Some((cyc.facets, r))
            }
            ScalingFamily::MultiParameter(_) => None,
        }
    } else if d == 3 {
        let s3 = star_scaling_d3(c, v, frame)?;
        s3.unique.then(|| (s3.facets.clone(), s3.kernel[0].clone()))
    } else {
        None
    };
    let matches_star = match reference {
        Some((refs, ray)) => {
            let ours: QVec = refs.iter().map(|g| facets.iter().find(|f| &f.0 == g).map(|f| f.3.clone()).unwrap_or_default()).collect();
            proportionality(&ours, &ray).is_some()
        }
        None => d > 3,
    };
    Ok(PrimitiveVertexScaling { vertex: v.clone(), edges, simplex, facets, triple_identities, matches_star })
}

/// `Some(k)` with `a = k b` when `b` is nonzero and the vectors are parallel.
pub fn proportionality(a: &[Rat], b: &[Rat]) -> Option<Rat> {
    let i = b.iter().position(|x| !x.is_zero())?;
    let k = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == &k * y).then_some(k)
}

/// Multiplicative gain between two facet orbits across a (d-2)-face orbit.
///
/// `slots` are positions in the representative's `ridge_cycle`; the gain says
/// `s(to) = ratio · s(from)`, and the reverse edge carries the inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainEdge {
    pub ridge: usize,
    pub slots: (usize, usize),
    pub from: usize,
    pub to: usize,
    pub ratio: Rat,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GainFunction {
    pub edges: Vec<GainEdge>,
}

/// Slot pairs whose ratio is the same for every vector of `kernel`, with that ratio.
fn fixed_ratios(kernel: &[QVec], m: usize) -> Vec<(usize, usize, Rat)> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let a: QVec = kernel.iter().map(|k| k[i].clone()).collect();
            let b: QVec = kernel.iter().map(|k| k[j].clone()).collect();
            if let Some(r) = proportionality(&b, &a) {
                if r.is_positive() {
                    out.push((i, j, r));
                }
            }
        }
    }
    out
}

impl GainFunction {
    /// Ratios forced by the star of each (d-2)-face.
    pub fn from_d2_stars(c: &TilingComplex, frame: &NormalFrame) -> Result<GainFunction, ScalingError> {
        let d = c.dim() as i32;
        let mut edges = Vec::new();
        for o in c.orbits_of_dim(d - 2) {
            let st = star_scaling_d2(c, &c.rep(o), frame)?;
            let kernel = match &st.family {
                ScalingFamily::UniqueRay(r) => vec![r.clone()],
                ScalingFamily::MultiParameter(k) => k.clone(),
            };
            for (i, j, ratio) in fixed_ratios(&kernel, st.cycle.facets.len()) {
                edges.push(GainEdge { ridge: o, slots: (i, j), from: st.cycle.facets[i].orbit, to: st.cycle.facets[j].orbit, ratio });
            }
        }
        Ok(GainFunction { edges })
    }

    /// Ratios forced by the joint star system of each (d-3)-face, restricted to facet pairs
    /// meeting at a (d-2)-face of that star.
    pub fn from_d3_stars(c: &TilingComplex, frame: &NormalFrame) -> Result<GainFunction, ScalingError> {
        let d = c.dim() as i32;
        let mut seen: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        let mut edges = Vec::new();
        for o in c.orbits_of_dim(d - 3) {
            let f = c.rep(o);
            let st = star_scaling_d3(c, &f, frame)?;
            let fixed = fixed_ratios(&st.kernel, st.facets.len());
            for r in c.star(&f).faces.iter().filter(|g| c.face_dim(g) == d - 2) {
                let cycle = c.ridge_cycle(r)?;
                let pos: Vec<usize> = cycle.facets.iter().map(|g| st.facets.iter().position(|h| h == g).expect("in star")).collect();
                for a in 0..pos.len() {
                    for b in a + 1..pos.len() {
                        let (i, j) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                        let Some((_, _, ratio)) = fixed.iter().find(|x| x.0 == i && x.1 == j) else { continue };
                        let ratio = if pos[a] == i { ratio.clone() } else { ratio.recip() };
                        if seen.insert((r.orbit, a, b)) {
                            edges.push(GainEdge {
                                ridge: r.orbit,
                                slots: (a, b),
                                from: cycle.facets[a].orbit,
                                to: cycle.facets[b].orbit,
                                ratio,
                            });
                        }
                    }
                }
            }
        }
        Ok(GainFunction { edges })
    }

    /// Ratios of a given assignment across consecutive facets of every (d-2)-star.
    pub fn from_scaling(c: &TilingComplex, s: &ScalingAssignment) -> Result<GainFunction, ScalingError> {
        let d = c.dim() as i32;
        let mut edges = Vec::new();
        for o in c.orbits_of_dim(d - 2) {
            let cycle = c.ridge_cycle(&c.rep(o))?;
            let m = cycle.facets.len();
            for i in 0..m {
                let (a, b) = (cycle.facets[i].orbit, cycle.facets[(i + 1) % m].orbit);
                edges.push(GainEdge { ridge: o, slots: (i, (i + 1) % m), from: a, to: b, ratio: s.get(b) / s.get(a) });
            }
        }
        Ok(GainFunction { edges })
    }

    /// Gain `1` on consecutive facets of every (d-2)-star.
    pub fn constant(c: &TilingComplex) -> Result<GainFunction, ScalingError> {
        GainFunction::from_scaling(c, &ScalingAssignment::constant(c, Rat::one()))
    }
}

/// A circuit of gain edges whose product is not 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconsistencyWitness {
    /// Indices into `GainFunction::edges`.
    pub edges: Vec<usize>,
    /// Facet orbits visited, closing back at the first.
    pub orbits: Vec<usize>,
    pub product: Rat,
}

/// Spanning-forest assignment from the gains, with every non-tree edge checked.
///
/// The component of `seed` gets `s(seed) = 1`; every other component is seeded with 1 at its
/// smallest orbit.
pub fn propagate(c: &TilingComplex, gain: &GainFunction, seed: usize) -> Result<ScalingAssignment, InconsistencyWitness> {
    let d = c.dim() as i32;
    let nodes = c.orbits_of_dim(d - 1);
    let mut adj: BTreeMap<usize, Vec<(usize, usize, Rat)>> = nodes.iter().map(|&n| (n, Vec::new())).collect();
    for (k, e) in gain.edges.iter().enumerate() {
        adj.get_mut(&e.from).expect("facet orbit").push((e.to, k, e.ratio.clone()));
        adj.get_mut(&e.to).expect("facet orbit").push((e.from, k, e.ratio.recip()));
    }
    let mut value: BTreeMap<usize, Rat> = BTreeMap::new();
    let mut parent: BTreeMap<usize, Option<(usize, usize)>> = BTreeMap::new();
    let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
    let mut roots = vec![seed];
    roots.extend(nodes.iter().copied().filter(|&n| n != seed));
    for root in roots {
        if value.contains_key(&root) {
            continue;
        }
        value.insert(root, Rat::one());
        parent.insert(root, None);
        depth.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for (w, k, r) in &adj[&u] {
                if !value.contains_key(w) {
                    value.insert(*w, &value[&u] * r);
                    parent.insert(*w, Some((u, *k)));
                    depth.insert(*w, depth[&u] + 1);
                    queue.push_back(*w);
                }
            }
        }
    }
    for (k, e) in gain.edges.iter().enumerate() {
        if value[&e.to] == &value[&e.from] * &e.ratio {
            continue;
        }
        // tree paths from both ends up to their meeting point
        let (mut a, mut b) = (e.from, e.to);
        let (mut up_a, mut up_b) = (vec![a], vec![b]);
        let (mut ea, mut eb) = (Vec::new(), Vec::new());
        while a != b {
            if depth[&a] >= depth[&b] {
                let (p, pk) = parent[&a].expect("same tree");
                ea.push(pk);
                a = p;
                up_a.push(a);
            } else {
                let (p, pk) = parent[&b].expect("same tree");
                eb.push(pk);
                b = p;
                up_b.push(b);
            }
        }
        let mut orbits: Vec<usize> = up_a.clone();
        orbits.extend(up_b.iter().rev().skip(1));
        orbits.push(e.from);
        let mut edges = ea;
        edges.extend(eb.iter().rev());
        edges.push(k);
        let product = &value[&e.from] * &e.ratio / &value[&e.to];
        return Err(InconsistencyWitness { edges, orbits, product });
    }
    Ok(ScalingAssignment { factors: value })
}

/// Outcome of checking the scaling condition on every (d-2)-face orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCheck {
    pub ok: bool,
    /// First (d-2)-face orbit with no balancing sign choice.
    pub violated: Option<usize>,
}

pub fn verify_canonical(c: &TilingComplex, s: &ScalingAssignment, frame: &NormalFrame) -> Result<CanonicalCheck, ScalingError> {
    verify_canonical_with(c, frame, |f| s.get(f.orbit).clone())
}

/// Like `verify_canonical`, for factors given per facet of the tiling rather than per orbit.
pub fn verify_canonical_with(
    c: &TilingComplex,
    frame: &NormalFrame,
    factor: impl Fn(&FaceRef) -> Rat,
) -> Result<CanonicalCheck, ScalingError> {
    let d = c.dim() as i32;
    for o in c.orbits_of_dim(d - 2) {
        let cycle = c.ridge_cycle(&c.rep(o))?;
        let vs: Vec<QVec> = cycle.facets.iter().map(|g| scale(frame.normal(g.orbit), &factor(g))).collect();
        if !balances(&vs) {
            return Ok(CanonicalCheck { ok: false, violated: Some(o) });
        }
    }
    Ok(CanonicalCheck { ok: true, violated: None })
}

/// Some sign vector (first sign fixed) makes the vectors sum to zero.
fn balances(vs: &[QVec]) -> bool {
    let m = vs.len();
    (0..1u32 << (m - 1)).any(|mask| {
        let mut total = vs[0].clone();
        for (i, v) in vs.iter().enumerate().skip(1) {
            total = if (mask >> (i - 1)) & 1 == 1 { sub(&total, v) } else { crate::rat::add(&total, v) };
        }
        is_zero(&total)
    })
}

/// Gain consistency on every circuit inside the star of every (d-3)-face.
///
/// Returns the first (d-3)-face orbit whose local facet graph has a circuit with gain other
/// than 1. Vacuous when `d < 3`.
pub fn check_primitive_circuits(c: &TilingComplex, gain: &GainFunction) -> Result<Option<usize>, ScalingError> {
    let d = c.dim() as i32;
    for o in c.orbits_of_dim(d - 3) {
        let f = c.rep(o);
        let star = c.star(&f);
        let mut adj: BTreeMap<FaceRef, Vec<(FaceRef, Rat)>> = BTreeMap::new();
        for r in star.faces.iter().filter(|g| c.face_dim(g) == d - 2) {
            let cycle = c.ridge_cycle(r)?;
            for e in gain.edges.iter().filter(|e| e.ridge == r.orbit) {
                let a = cycle.facets[e.slots.0].clone();
                let b = cycle.facets[e.slots.1].clone();
                adj.entry(a.clone()).or_default().push((b.clone(), e.ratio.clone()));
                adj.entry(b).or_default().push((a, e.ratio.recip()));
            }
        }
        let mut value: BTreeMap<FaceRef, Rat> = BTreeMap::new();
        let keys: Vec<FaceRef> = adj.keys().cloned().collect();
        for root in keys {
            if value.contains_key(&root) {
                continue;
            }
            value.insert(root.clone(), Rat::one());
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for (w, r) in &adj[&u] {
                    let want = &value[&u] * r;
                    match value.get(w) {
                        Some(x) if *x != want => return Ok(Some(o)),
                        Some(_) => {}
                        None => {
                            value.insert(w.clone(), want);
                            queue.push_back(w.clone());
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Both flanking star scalings restricted to the four facets around the parallelogram's face.
#[derive(Clone, Debug)]
pub struct CoherenceResult {
    pub coherent: bool,
    /// The two (d-3)-faces between the 4-cell's face and the parallelogram's face.
    pub flanks: [FaceRef; 2],
    pub facets: Vec<FaceRef>,
    pub restricted: [QVec; 2],
}

/// The two restrictions agree up to a common positive multiplier.
pub fn coherent_ratios(r1: &[Rat], r2: &[Rat]) -> bool {
    proportionality(r1, r2).is_some_and(|k| k.is_positive())
}

/// Coherence of a parallelogram dual cell inside a dual 4-cell: the unique scalings of the two
/// pyramid stars between them agree on the quadruple star of the parallelogram's face.
pub fn test_coherence(
    c: &TilingComplex,
    pi: &crate::tiling::DualCell,
    d4: &crate::tiling::DualCell,
    frame: &NormalFrame,
) -> Result<CoherenceResult, ScalingError> {
    test_coherence_with(c, pi, d4, frame, |_, s| s)
}

/// `test_coherence` with a hook applied to each flank's star solution before comparison.
pub fn test_coherence_with(
    c: &TilingComplex,
    pi: &crate::tiling::DualCell,
    d4: &crate::tiling::DualCell,
    frame: &NormalFrame,
    hook: impl Fn(usize, StarScaling3) -> StarScaling3,
) -> Result<CoherenceResult, ScalingError> {
    let d = c.dim() as i32;
    let hyp = |m: &str| ScalingError::HypothesisViolated(m.to_string());
    if pi.combdim != 2 || pi.verts.len() != 4 || pi.dim != 2 {
        return Err(hyp("first cell is not a parallelogram dual 2-cell"));
    }
    if d4.combdim != 4 {
        return Err(hyp("second cell is not a dual 4-cell"));
    }
    let f2 = &pi.face;
    let f4 = &d4.face;
    let p2 = c.face_points(f2);
    let p4 = c.face_points(f4);
    if !p4.iter().all(|p| p2.contains(p)) {
        return Err(hyp("parallelogram face does not contain the 4-cell face"));
    }
    let mids: Vec<FaceRef> = c
        .star(f4)
        .faces
        .into_iter()
        .filter(|g| c.face_dim(g) == d - 3 && c.face_points(g).iter().all(|p| p2.contains(p)))
        .collect();
    if mids.len() != 2 {
        return Err(hyp("interval between the faces is not a diamond"));
    }
    let cycle = c.ridge_cycle(f2)?;
    let mut restricted: Vec<QVec> = Vec::new();
    for (i, g) in mids.iter().enumerate() {
        if classify_dual3(&c.dual_cell(g))? != Dual3Type::PyramidOverParallelogram {
            return Err(hyp("flanking dual 3-cell is not a pyramid"));
        }
        let st = hook(i, star_scaling_d3(c, g, frame)?);
        if !st.unique {
            return Err(hyp("flanking star scaling is not unique"));
        }
        let ray = &st.kernel[0];
        let r: QVec = cycle
            .facets
            .iter()
            .map(|h| ray[st.facets.iter().position(|x| x == h).expect("quadruple facet in flank star")].clone())
            .collect();
        restricted.push(r);
    }
    let coherent = coherent_ratios(&restricted[0], &restricted[1]);
    Ok(CoherenceResult {
        coherent,
        flanks: [mids[0].clone(), mids[1].clone()],
        facets: cycle.facets,
        restricted: [restricted[0].clone(), restricted[1].clone()],
    })
}

/// Every admissible (parallelogram, dual 4-cell) pair: the 4-cell's face lies in the
/// parallelogram's face and both flanking dual 3-cells are pyramids.
pub fn coherence_pairs(c: &TilingComplex) -> Vec<(FaceRef, FaceRef)> {
    let d = c.dim() as i32;
    if d < 4 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for o in c.orbits_of_dim(d - 4) {
        let f4 = c.rep(o);
        let star = c.star(&f4);
        for f2 in star.faces.iter().filter(|g| c.face_dim(g) == d - 2) {
            if c.tiles(f2).len() != 4 {
                continue;
            }
            let p2 = c.face_points(f2);
            let mids: Vec<&FaceRef> =
                star.faces.iter().filter(|g| c.face_dim(g) == d - 3 && c.face_points(g).iter().all(|p| p2.contains(p))).collect();
            let pyramids = mids.len() == 2
                && mids.iter().all(|g| classify_dual3(&c.dual_cell(g)).ok() == Some(Dual3Type::PyramidOverParallelogram));
            if pyramids {
                out.push((f2.clone(), f4.clone()));
            }
        }
    }
    out
}
