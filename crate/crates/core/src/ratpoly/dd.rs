//! Incremental double description for polyhedral cones `{x : a_i·x >= 0}`.

use crate::linalg::rank;
use crate::rat::{axpy, dot, is_zero, lex_cmp, neg, primitive, sign, QVec};
use num_traits::{Signed, Zero};

/// Generators of a cone: lineality basis and extreme rays modulo the lineality space.
#[derive(Clone, Debug)]
pub struct ConeGenerators {
    pub lineality: Vec<QVec>,
    pub rays: Vec<QVec>,
}

struct Ray {
    v: QVec,
    zeros: Vec<bool>,
}

/// Computes generators of `{x in R^n : a·x >= 0 for a in constraints}`.
///
/// Constraints are inserted in lexicographic order. Rays are kept as primitive
/// integer vectors, so the output is deterministic up to that order.
pub fn cone_from_constraints(n: usize, constraints: &[QVec]) -> ConeGenerators {
    let mut cons: Vec<QVec> = constraints.iter().filter(|a| !is_zero(a)).map(|a| primitive(a)).collect();
    cons.sort_by(|a, b| lex_cmp(a, b));
    cons.dedup();

    let mut lin: Vec<QVec> = (0..n).map(|i| crate::rat::unit(n, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in cons.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut lp = lin.remove(p);
            let ap = dot(a, &lp);
            for l in lin.iter_mut() {
                let f = dot(a, l);
                if !f.is_zero() {
                    *l = axpy(l, &(-(f / &ap)), &lp);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v);
                if !f.is_zero() {
                    r.v = primitive(&axpy(&r.v, &(-(f / &ap)), &lp));
                }
                r.zeros.push(true);
            }
            if ap.is_negative() {
                lp = neg(&lp);
            }
            let mut z = vec![true; k];
            z.push(false);
            rays.push(Ray { v: primitive(&lp), zeros: z });
            continue;
        }

        let vals: Vec<i32> = rays.iter().map(|r| sign(&dot(a, &r.v))).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        if negs.is_empty() {
            for (r, &s) in rays.iter_mut().zip(&vals) {
                r.zeros.push(s == 0);
            }
            continue;
        }
        let pointed_dim = n - lin.len();
        let mut fresh: Vec<Ray> = Vec::new();
        for &i in &pos {
            for &j in &negs {
                let common: Vec<usize> = (0..k).filter(|&t| rays[i].zeros[t] && rays[j].zeros[t]).collect();
                if pointed_dim >= 2 && common.len() + 2 < pointed_dim {
                    continue;
                }
                let blocked = (0..rays.len()).any(|m| m != i && m != j && common.iter().all(|&t| rays[m].zeros[t]));
                if blocked {
                    continue;
                }
                let ai = dot(a, &rays[i].v);
                let aj = dot(a, &rays[j].v);
                let v: QVec = rays[j].v.iter().zip(&rays[i].v).map(|(x, y)| &ai * x - &aj * y).collect();
                let mut zeros: Vec<bool> = (0..k).map(|t| rays[i].zeros[t] && rays[j].zeros[t]).collect();
                zeros.push(true);
                fresh.push(Ray { v: primitive(&v), zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::new();
        for (mut r, s) in rays.into_iter().zip(vals) {
            if s >= 0 {
                r.zeros.push(s == 0);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<QVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    out.dedup();
    ConeGenerators { lineality: lin, rays: out }
}

/// Facet description of `cone(rays) + span(lineality)`: returns `(equalities, facets)` where the
/// cone is `{x : e·x = 0, f·x >= 0}`. Facet normals are reduced orthogonally to the equalities.
pub fn facets_of_generated(n: usize, rays: &[QVec], lineality: &[QVec]) -> (Vec<QVec>, Vec<QVec>) {
    let mut cons: Vec<QVec> = rays.to_vec();
    for l in lineality {
        cons.push(l.clone());
        cons.push(neg(l));
    }
    let dual = cone_from_constraints(n, &cons);
    let eqs = dual.lineality;
    let mut facets: Vec<QVec> = Vec::new();
    for r in dual.rays {
        let f = primitive(&crate::linalg::reject(&r, &eqs));
        if !is_zero(&f) && !facets.contains(&f) {
            facets.push(f);
        }
    }
    facets.sort_by(|a, b| lex_cmp(a, b));
    let eqs = canonical_equalities(&eqs, n);
    (eqs, facets)
}

/// Canonical basis for the span of `eqs`: reduced row echelon form scaled to primitive integers.
pub fn canonical_equalities(eqs: &[QVec], n: usize) -> Vec<QVec> {
    let (r, _) = crate::linalg::rref(eqs, n);
    r.iter().map(|row| crate::rat::primitive_signed(row)).collect()
}

/// Dimension of the cone generated by rays and lineality.
pub fn generated_dim(n: usize, rays: &[QVec], lineality: &[QVec]) -> usize {
    let mut all = rays.to_vec();
    all.extend(lineality.iter().cloned());
    rank(&all, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qvec;

    #[test]
    fn orthant() {
        let g = cone_from_constraints(3, &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[0, 0, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 3);
    }

    #[test]
    fn halfspace_has_lineality() {
        let g = cone_from_constraints(3, &[qvec(&[0, 0, 1])]);
        assert_eq!(g.lineality.len(), 2);
        assert_eq!(g.rays, vec![qvec(&[0, 0, 1])]);
    }

    #[test]
    fn square_cone() {
        // cone over the square [-1,1]^2 at height 1: 4 facets, 4 rays
        let cons = vec![qvec(&[1, 1, 0]), qvec(&[1, -1, 0]), qvec(&[1, 0, 1]), qvec(&[1, 0, -1])];
        let g = cone_from_constraints(3, &cons);
        assert_eq!(g.rays.len(), 4);
        let (eqs, facets) = facets_of_generated(3, &g.rays, &g.lineality);
        assert!(eqs.is_empty());
        assert_eq!(facets.len(), 4);
    }

    #[test]
    fn pyramid_round_trip() {
        // homogenised square pyramid: the apex cone has 4 facets through one ray
        let pts = vec![
            qvec(&[1, 1, 1, 0]),
            qvec(&[1, 1, -1, 0]),
            qvec(&[1, -1, 1, 0]),
            qvec(&[1, -1, -1, 0]),
            qvec(&[1, 0, 0, 1]),
        ];
        let (eqs, facets) = facets_of_generated(4, &pts, &[]);
        assert!(eqs.is_empty());
        assert_eq!(facets.len(), 5);
        let g = cone_from_constraints(4, &facets);
        assert!(g.lineality.is_empty());
        let mut want: Vec<QVec> = pts.iter().map(|p| primitive(p)).collect();
        want.sort_by(|a, b| lex_cmp(a, b));
        assert_eq!(g.rays, want);
    }
}
