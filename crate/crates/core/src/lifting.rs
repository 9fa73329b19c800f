//! Voronoi's generatrissa for planar tilings: the piecewise-linear convex function whose
//! gradient jumps by `s(F) n_F` across every edge, and the quadratic form inscribed in it.

use crate::lattice::covering_shifts;
use crate::linalg::{inverse, is_positive_definite, mat_mul, mat_vec, transpose, Mat};
use crate::rat::{dot, frac, int, is_zero, qvec, scale, sign, sub, QVec, Rat};
use crate::ratpoly::Polytope;
use crate::scaling::{NormalFrame, ScalingAssignment};
use crate::tiling::{TilingComplex, TilingError};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("the generatrissa is defined for planar tilings only")]
    NotPlanar,
    #[error("gradient increments do not close around vertex orbit {0}")]
    InconsistentScaling(usize),
    #[error("point lies on a vertex of the tiling")]
    PointOnSkeletonAmbiguity,
    #[error("recovered form is not symmetric")]
    NotSymmetric,
    #[error("recovered form is not positive definite")]
    NotPositiveDefinite,
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Window half-width used when propagating gradients tile by tile.
const WINDOW: i64 = 3;

#[derive(Clone, Debug)]
pub struct Generatrissa {
    pub prototile: Polytope,
    /// Per facet orbit: facet vector `t` and the gradient jump when stepping from a tile to its
    /// neighbor across that facet in direction `t`.
    pub increments: BTreeMap<usize, (Vec<i64>, QVec)>,
    /// The gradient on the tile centered at `λ` is `a·λ`; the base tile is centered at 0.
    pub a: Mat,
}

/// Facet vector of each facet orbit: the center of the tile across the representative facet.
pub fn facet_vectors_by_orbit(c: &TilingComplex) -> BTreeMap<usize, Vec<i64>> {
    let d = c.dim() as i32;
    c.orbits_of_dim(d - 1)
        .into_iter()
        .map(|o| {
            let t = c.tiles(&c.rep(o));
            let other = t.into_iter().find(|x| x.iter().any(|&v| v != 0)).expect("two tiles");
            (o, other)
        })
        .collect()
}

impl Generatrissa {
    /// Increments `s(F) σ n_F`, with `σ` orienting the normal along the facet vector.
    pub fn build(c: &TilingComplex, s: &ScalingAssignment, frame: &NormalFrame) -> Result<Generatrissa, LiftError> {
        if c.dim() != 2 {
            return Err(LiftError::NotPlanar);
        }
        let incs = facet_vectors_by_orbit(c)
            .into_iter()
            .map(|(o, t)| {
                let n = frame.normal(o);
                let sg = sign(&dot(n, &qvec(&t)));
                let inc = scale(n, &(s.get(o) * int(sg as i64)));
                (o, (t, inc))
            })
            .collect();
        Generatrissa::from_increments(c, incs)
    }

    /// Generatrissa from explicit increments; used directly to inject faults.
    pub fn from_increments(c: &TilingComplex, increments: BTreeMap<usize, (Vec<i64>, QVec)>) -> Result<Generatrissa, LiftError> {
        if c.dim() != 2 {
            return Err(LiftError::NotPlanar);
        }
        let step = |o: usize, from: &[i64], to: &[i64]| -> QVec {
            let (t, inc) = &increments[&o];
            let diff: Vec<i64> = to.iter().zip(from).map(|(a, b)| a - b).collect();
            if &diff == t {
                inc.clone()
            } else {
                crate::rat::neg(inc)
            }
        };
        for v in c.orbits_of_dim(0) {
            let cyc = c.ridge_cycle(&c.rep(v))?;
            let m = cyc.tiles.len();
            let mut total = crate::rat::zeros(2);
            for i in 0..m {
                total = crate::rat::add(&total, &step(cyc.facets[i].orbit, &cyc.tiles[i], &cyc.tiles[(i + 1) % m]));
            }
            if !is_zero(&total) {
                return Err(LiftError::InconsistentScaling(v));
            }
        }
        // tile-by-tile propagation over a window, every adjacency checked
        let mut grad: BTreeMap<Vec<i64>, QVec> = BTreeMap::new();
        grad.insert(vec![0, 0], crate::rat::zeros(2));
        let mut queue = VecDeque::from([vec![0i64, 0]]);
        while let Some(mu) = queue.pop_front() {
            for (o, (t, _)) in &increments {
                for sgn in [1i64, -1] {
                    let nu: Vec<i64> = mu.iter().zip(t).map(|(a, b)| a + sgn * b).collect();
                    if nu.iter().any(|x| x.abs() > WINDOW) {
                        continue;
                    }
                    let g = crate::rat::add(&grad[&mu], &step(*o, &mu, &nu));
                    match grad.get(&nu) {
                        Some(h) if *h != g => return Err(LiftError::InconsistentScaling(usize::MAX)),
                        Some(_) => {}
                        None => {
                            grad.insert(nu.clone(), g);
                            queue.push_back(nu);
                        }
                    }
                }
            }
        }
        let e1 = grad.get(&vec![1, 0]).cloned().ok_or(LiftError::InconsistentScaling(usize::MAX))?;
        let e2 = grad.get(&vec![0, 1]).cloned().ok_or(LiftError::InconsistentScaling(usize::MAX))?;
        let a = transpose(&[e1, e2], 2);
        for (lam, g) in &grad {
            if mat_vec(&a, &qvec(lam)) != *g {
                return Err(LiftError::InconsistentScaling(usize::MAX));
            }
        }
        Ok(Generatrissa { prototile: c.prototile.clone(), increments, a })
    }

    pub fn gradient(&self, tile: &[i64]) -> QVec {
        mat_vec(&self.a, &qvec(tile))
    }

    /// `G(x)`, integrating from the base center along the staircase `0 → (x_1, 0) → x`.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat, LiftError> {
        for lam in covering_shifts(&self.prototile, x) {
            if self.prototile.vertex_index(&sub(x, &lam)).is_some() {
                return Err(LiftError::PointOnSkeletonAmbiguity);
            }
        }
        let corner = vec![x[0].clone(), Rat::zero()];
        Ok(self.eval_along(&[corner, x.to_vec()]))
    }

    /// Integral of the gradient along the polyline `0 → path[0] → path[1] → ...`.
    pub fn eval_along(&self, path: &[QVec]) -> Rat {
        let mut total = Rat::zero();
        let mut from = crate::rat::zeros(2);
        for to in path {
            total += self.segment_integral(&from, to);
            from = to.clone();
        }
        total
    }

    fn segment_integral(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let dir = sub(b, a);
        if is_zero(&dir) {
            return Rat::zero();
        }
        let mut total = Rat::zero();
        let mut tau = Rat::zero();
        while tau < Rat::one() {
            let here = crate::rat::axpy(a, &tau, &dir);
            let mut next = None;
            for lam in covering_shifts(&self.prototile, &here) {
                let hi = self.exit_time(a, &dir, &lam);
                if hi > tau {
                    next = Some((lam, hi));
                    break;
                }
            }
            let (lam, hi) = next.expect("the tiles cover the segment");
            let hi = hi.min(Rat::one());
            let g = mat_vec(&self.a, &lam);
            total += dot(&g, &dir) * (&hi - &tau);
            tau = hi;
        }
        total
    }

    /// Largest `τ` with `a + τ·dir` in the tile centered at `lam`, given the segment is inside at the current time.
    fn exit_time(&self, a: &[Rat], dir: &[Rat], lam: &[Rat]) -> Rat {
        let base = sub(a, lam);
        let mut hi: Option<Rat> = None;
        for f in &self.prototile.facets {
            let rate = dot(&f.normal, dir);
            if rate > Rat::zero() {
                let t = (&f.offset - dot(&f.normal, &base)) / rate;
                hi = Some(match hi {
                    Some(h) if h < t => h,
                    _ => t,
                });
            }
        }
        hi.expect("bounded tile")
    }

    /// Lifted polygon of every tile in `[-r, r]^2`: vertices `(x, G(x))`.
    pub fn plot_data(&self, r: i64) -> Vec<PlotTile> {
        let mut out = Vec::new();
        for i in -r..=r {
            for j in -r..=r {
                let lam = qvec(&[i, j]);
                let g = mat_vec(&self.a, &lam);
                let at_center = self.center_value(&[i, j]);
                let poly = order_polygon(&self.prototile)
                    .into_iter()
                    .map(|v| {
                        let x = crate::rat::add(&v, &lam);
                        let z = &at_center + dot(&g, &v);
                        (x, z)
                    })
                    .collect();
                out.push(PlotTile { center: vec![i, j], polygon: poly });
            }
        }
        out
    }

    /// `G(λ)` at a tile center.
    pub fn center_value(&self, lam: &[i64]) -> Rat {
        self.eval(&qvec(lam)).expect("tile centers are interior points")
    }
}

/// Vertices of a polygon in counterclockwise order.
fn order_polygon(p: &Polytope) -> Vec<QVec> {
    let c = p.centroid();
    let mut vs = p.vertices.clone();
    let half = |v: &QVec| {
        let d = sub(v, &c);
        if d[1] > Rat::zero() || (d[1].is_zero() && d[0] > Rat::zero()) {
            0
        } else {
            1
        }
    };
    vs.sort_by(|u, v| {
        half(u).cmp(&half(v)).then_with(|| {
            let (a, b) = (sub(u, &c), sub(v, &c));
            let cross = &a[0] * &b[1] - &a[1] * &b[0];
            Rat::zero().cmp(&cross)
        })
    });
    vs
}

#[derive(Clone, Debug)]
pub struct PlotTile {
    pub center: Vec<i64>,
    pub polygon: Vec<(QVec, Rat)>,
}

/// Quadratic form `Q(y_1 λ_1 + y_2 λ_2) = (λ_1·n_1) y_1²/2 + (λ_2·n_2) y_2²/2 + (λ_2·n_1) y_1 y_2`
/// where `λ_i` are facet vectors and `n_i = a λ_i` the gradients of the neighboring tiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QForm2 {
    pub basis: [Vec<i64>; 2],
    /// `(λ_1·n_1)/2`, `(λ_2·n_2)/2`, `λ_2·n_1`.
    pub coefficients: [Rat; 3],
    /// `Q(x) = ½ xᵀ M x` in lattice-basis coordinates.
    pub matrix: Mat,
}

impl QForm2 {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(x, &mat_vec(&self.matrix, x)) * frac(1, 2)
    }

    pub fn gradient(&self, x: &[Rat]) -> QVec {
        mat_vec(&self.matrix, x)
    }

    /// The same form in ambient coordinates `z = B x`: `B^{-T} M B^{-1}`.
    pub fn in_ambient(&self, basis: &Mat) -> Option<Mat> {
        let inv = inverse(basis)?;
        Some(mat_mul(&mat_mul(&transpose(&inv, 2), &self.matrix), &inv))
    }
}

pub fn recover_qform(g: &Generatrissa) -> Result<QForm2, LiftError> {
    let mut vecs = g.increments.values().map(|(t, _)| t.clone());
    let l1 = vecs.next().expect("facet orbit");
    let l2 = vecs.find(|t| l1[0] * t[1] - l1[1] * t[0] != 0).expect("two independent facet vectors");
    let n1 = g.gradient(&l1);
    let n2 = g.gradient(&l2);
    let (q1, q2) = (qvec(&l1), qvec(&l2));
    if dot(&q1, &n2) != dot(&q2, &n1) {
        return Err(LiftError::NotSymmetric);
    }
    let coefficients = [dot(&q1, &n1) * frac(1, 2), dot(&q2, &n2) * frac(1, 2), dot(&q2, &n1)];
    // M = L^{-T} C L^{-1} with C the Gram of the form on (λ_1, λ_2)
    let c = vec![
        vec![&coefficients[0] * int(2), coefficients[2].clone()],
        vec![coefficients[2].clone(), &coefficients[1] * int(2)],
    ];
    if !is_positive_definite(&c) {
        return Err(LiftError::NotPositiveDefinite);
    }
    let l = transpose(&[q1, q2], 2);
    let inv = inverse(&l).expect("independent");
    let matrix = mat_mul(&mat_mul(&transpose(&inv, 2), &c), &inv);
    Ok(QForm2 { basis: [l1, l2], coefficients, matrix })
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftingReport {
    pub tangency: bool,
    pub gradients: bool,
    pub convexity: bool,
    /// Facet orbits whose gradient jump does not increase along the facet vector.
    pub nonconvex_orbits: Vec<usize>,
    /// Tile centers where `G` and `Q` or their gradients differ.
    pub tangency_failures: Vec<Vec<i64>>,
}

/// Tangency `G(λ) = Q(λ)`, `∇G = ∇Q` on the tile centers of a 5×5 window, and the convexity
/// jump condition on every facet orbit.
pub fn verify_lifting(g: &Generatrissa, q: &QForm2) -> LiftingReport {
    let mut tangency = true;
    let mut gradients = true;
    let mut tangency_failures = Vec::new();
    for i in -2..=2i64 {
        for j in -2..=2i64 {
            let lam = qvec(&[i, j]);
            let t_ok = g.center_value(&[i, j]) == q.eval(&lam);
            let g_ok = g.gradient(&[i, j]) == q.gradient(&lam);
            tangency &= t_ok;
            gradients &= g_ok;
            if !(t_ok && g_ok) {
                tangency_failures.push(vec![i, j]);
            }
        }
    }
    let nonconvex_orbits: Vec<usize> =
        g.increments.iter().filter(|(_, (t, inc))| dot(inc, &qvec(t)) <= Rat::zero()).map(|(o, _)| *o).collect();
    LiftingReport { tangency, gradients, convexity: nonconvex_orbits.is_empty(), nonconvex_orbits, tangency_failures }
}
