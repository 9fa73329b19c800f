use super::dd::cone_from_constraints;
use super::PolyError;
use crate::linalg::{rank, rref};
use crate::rat::{add, dot, is_zero, jvec, lex_cmp, neg, primitive, primitive_signed, QVec, Rat, JRat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Inequality `normal·x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: QVec,
    pub offset: Rat,
}

/// Bounded polytope with both descriptions.
///
/// `equalities` pin the affine hull (`normal·x = offset`); facet normals are
/// orthogonal to the equality normals, primitive integer, and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub ambient: usize,
    pub vertices: Vec<QVec>,
    pub equalities: Vec<Facet>,
    pub facets: Vec<Facet>,
    /// `incidence[f][v]`: vertex `v` lies on facet `f`.
    pub incidence: Vec<Vec<bool>>,
    pub dim: i32,
}

impl Polytope {
    /// Convex hull of a finite point set.
    pub fn from_vertices(points: &[QVec]) -> Result<Polytope, PolyError> {
        let Some(first) = points.first() else {
            return Err(PolyError::EmptyInput);
        };
        let n = first.len();
        if points.iter().any(|p| p.len() != n) {
            return Err(PolyError::DimensionMismatch);
        }
        let mut pts: Vec<QVec> = points.to_vec();
        pts.sort_by(|a, b| lex_cmp(a, b));
        pts.dedup();
        let homog: Vec<QVec> = pts.iter().map(|p| lift(&Rat::one(), p)).collect();
        let dual = cone_from_constraints(n + 1, &homog);
        let equalities = canonical_affine(dual.lineality.iter().map(to_facet).collect(), n);
        let dim = n as i32 - equalities.len() as i32;
        let mut fs: Vec<Facet> = Vec::new();
        if dim > 0 {
            for r in &dual.rays {
                let f = reduce_facet(to_facet(r), &equalities);
                if !is_zero(&f.normal) && !fs.contains(&f) {
                    fs.push(f);
                }
            }
        }
        fs.sort_by(|a, b| lex_cmp(&a.normal, &b.normal).then_with(|| a.offset.cmp(&b.offset)));
        let eq_normals: Vec<QVec> = equalities.iter().map(|e| e.normal.clone()).collect();
        let vertices: Vec<QVec> = pts
            .into_iter()
            .filter(|p| {
                let mut all: Vec<QVec> =
                    fs.iter().filter(|f| dot(&f.normal, p) == f.offset).map(|f| f.normal.clone()).collect();
                all.extend(eq_normals.iter().cloned());
                rank(&all, n) == n
            })
            .collect();
        let incidence = fs
            .iter()
            .map(|f| vertices.iter().map(|v| dot(&f.normal, v) == f.offset).collect())
            .collect();
        Ok(Polytope { ambient: n, vertices, equalities, facets: fs, incidence, dim })
    }

    /// Polytope `{x : a·x <= b, c·x = d}`.
    pub fn from_hrep(n: usize, ineq: &[(QVec, Rat)], eq: &[(QVec, Rat)]) -> Result<Polytope, PolyError> {
        // cone {(t, x) : t >= 0, b t - a·x >= 0, d t - c·x = 0}
        let mut cons: Vec<QVec> = vec![crate::rat::unit(n + 1, 0)];
        for (a, b) in ineq {
            cons.push(lift(b, &neg(a)));
        }
        for (c, d) in eq {
            cons.push(lift(d, &neg(c)));
            cons.push(lift(&-d, c));
        }
        let g = cone_from_constraints(n + 1, &cons);
        if !g.lineality.is_empty() {
            return Err(PolyError::UnboundedInput);
        }
        let mut verts = Vec::new();
        for r in &g.rays {
            if r[0].is_zero() {
                return Err(PolyError::UnboundedInput);
            }
            verts.push(r[1..].iter().map(|x| x / &r[0]).collect::<QVec>());
        }
        if verts.is_empty() {
            return Err(PolyError::EmptyInput);
        }
        Polytope::from_vertices(&verts)
    }

    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.incidence[f][v]).collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|e| dot(&e.normal, x) == e.offset)
            && self.facets.iter().all(|f| dot(&f.normal, x) <= f.offset)
    }

    pub fn relint_contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|e| dot(&e.normal, x) == e.offset)
            && self.facets.iter().all(|f| dot(&f.normal, x) < f.offset)
    }

    pub fn translate(&self, t: &[Rat]) -> Polytope {
        let shift = |f: &Facet| Facet { normal: f.normal.clone(), offset: &f.offset + dot(&f.normal, t) };
        let mut p = self.clone();
        p.vertices = self.vertices.iter().map(|v| add(v, t)).collect();
        p.equalities = self.equalities.iter().map(shift).collect();
        p.facets = self.facets.iter().map(shift).collect();
        p.equalities = canonical_affine(p.equalities, self.ambient);
        p
    }

    pub fn vertex_index(&self, x: &[Rat]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == x)
    }

    pub fn centroid(&self) -> QVec {
        crate::rat::mean(&self.vertices)
    }

    /// Volume in its ambient coordinates; only for full-dimensional polytopes.
    pub fn volume(&self) -> Rat {
        assert_eq!(self.dim as usize, self.ambient, "volume of a lower-dimensional polytope");
        let fl = super::face::FaceLattice::of(self);
        let top = fl.faces.len() - 1;
        let mut total = Rat::zero();
        for simplex in pulling_triangulation(&fl, top) {
            let v0 = &self.vertices[simplex[0]];
            let rows: Vec<QVec> = simplex[1..].iter().map(|&i| crate::rat::sub(&self.vertices[i], v0)).collect();
            total += crate::linalg::det(&rows).abs();
        }
        let fact: u64 = (1..=self.ambient as u64).product();
        total / Rat::from_integer(fact.into())
    }

    pub fn hrep(&self) -> (Vec<(QVec, Rat)>, Vec<(QVec, Rat)>) {
        (
            self.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect(),
            self.equalities.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect(),
        )
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope, PolyError> {
        let (mut a, mut e) = self.hrep();
        let (b, f) = other.hrep();
        a.extend(b);
        e.extend(f);
        Polytope::from_hrep(self.ambient, &a, &e)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            vertices: self.vertices.iter().map(|v| jvec(v)).collect(),
            facets: self.facets.iter().map(|f| FacetJson { normal: jvec(&f.normal), offset: JRat(f.offset.clone()) }).collect(),
            equalities: self
                .equalities
                .iter()
                .map(|f| FacetJson { normal: jvec(&f.normal), offset: JRat(f.offset.clone()) })
                .collect(),
            dim: self.dim,
        }
    }
}

fn pulling_triangulation(fl: &super::face::FaceLattice, face: usize) -> Vec<Vec<usize>> {
    let f = &fl.faces[face];
    if f.dim == 0 {
        return vec![f.vertices.clone()];
    }
    let apex = f.vertices[0];
    let mut out = Vec::new();
    for &g in &fl.down[face] {
        if fl.faces[g].vertices.contains(&apex) {
            continue;
        }
        for mut s in pulling_triangulation(fl, g) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

fn lift(t: &Rat, x: &[Rat]) -> QVec {
    let mut v = vec![t.clone()];
    v.extend(x.iter().cloned());
    v
}

/// Homogeneous row `(c, a)` meaning `c + a·x >= 0`, turned into `(-a)·x <= c`.
fn to_facet(row: &QVec) -> Facet {
    Facet { normal: neg(&row[1..]), offset: row[0].clone() }
}

/// Canonical basis of an affine equality system: reduced row echelon form of `[normal | offset]`,
/// each row scaled to a primitive integer normal with positive leading entry.
fn canonical_affine(eqs: Vec<Facet>, n: usize) -> Vec<Facet> {
    let rows: Vec<QVec> = eqs.iter().map(|e| {
        let mut r = e.normal.clone();
        r.push(e.offset.clone());
        r
    }).collect();
    let (r, _) = rref(&rows, n + 1);
    r.into_iter()
        .map(|row| {
            let row = primitive_signed(&row);
            Facet { normal: row[..n].to_vec(), offset: row[n].clone() }
        })
        .collect()
}

/// Makes the facet normal orthogonal to the equality normals and primitive, keeping the
/// inequality equivalent on the affine hull.
fn reduce_facet(f: Facet, eqs: &[Facet]) -> Facet {
    let mut normal = f.normal;
    let mut offset = f.offset;
    if !eqs.is_empty() {
        let gram: Vec<QVec> = eqs.iter().map(|a| eqs.iter().map(|b| dot(&a.normal, &b.normal)).collect()).collect();
        let rhs: QVec = eqs.iter().map(|e| dot(&e.normal, &normal)).collect();
        let lam = crate::linalg::solve(&gram, &rhs, eqs.len()).expect("equalities are independent");
        for (l, e) in lam.iter().zip(eqs) {
            normal = crate::rat::axpy(&normal, &-l.clone(), &e.normal);
            offset -= l * &e.offset;
        }
    }
    let p = primitive(&normal);
    if let Some((a, b)) = normal.iter().zip(&p).find(|(a, _)| !a.is_zero()) {
        offset = &offset * (b / a);
    }
    Facet { normal: p, offset }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<JRat>,
    pub offset: JRat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    #[serde(default)]
    pub vertices: Vec<Vec<JRat>>,
    #[serde(default)]
    pub facets: Vec<FacetJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equalities: Vec<FacetJson>,
    #[serde(default)]
    pub dim: i32,
}

impl PolytopeJson {
    /// Rebuild from whichever description is present (vertices preferred).
    pub fn to_polytope(&self) -> Result<Polytope, PolyError> {
        if !self.vertices.is_empty() {
            let pts: Vec<QVec> = self.vertices.iter().map(|v| crate::rat::from_jvec(v)).collect();
            let n = pts[0].len();
            if pts.iter().any(|p| p.len() != n) {
                return Err(PolyError::DimensionMismatch);
            }
            return Polytope::from_vertices(&pts);
        }
        let Some(f0) = self.facets.first() else {
            return Err(PolyError::EmptyInput);
        };
        let n = f0.normal.len();
        let conv = |fs: &[FacetJson]| -> Result<Vec<(QVec, Rat)>, PolyError> {
            fs.iter()
                .map(|f| {
                    if f.normal.len() != n {
                        Err(PolyError::DimensionMismatch)
                    } else {
                        Ok((crate::rat::from_jvec(&f.normal), f.offset.0.clone()))
                    }
                })
                .collect()
        };
        Polytope::from_hrep(n, &conv(&self.facets)?, &conv(&self.equalities)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int, qvec};

    fn square() -> Polytope {
        Polytope::from_vertices(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1]), frac_pt()]).unwrap()
    }

    fn frac_pt() -> QVec {
        vec![frac(1, 2), frac(1, 3)]
    }

    #[test]
    fn unit_square() {
        let sq = square();
        assert_eq!(sq.vertices.len(), 4);
        assert_eq!(sq.facets.len(), 4);
        assert_eq!(sq.dim, 2);
        assert!(sq.relint_contains(&frac_pt()));
        assert!(!sq.relint_contains(&qvec(&[0, 0])));
        assert_eq!(sq.volume(), int(1));
    }

    #[test]
    fn simplex_from_facets() {
        let ineq = vec![
            (qvec(&[-1, 0, 0]), int(0)),
            (qvec(&[0, -1, 0]), int(0)),
            (qvec(&[0, 0, -1]), int(0)),
            (qvec(&[1, 1, 1]), int(1)),
        ];
        let s = Polytope::from_hrep(3, &ineq, &[]).unwrap();
        assert_eq!(s.vertices, vec![qvec(&[0, 0, 0]), qvec(&[0, 0, 1]), qvec(&[0, 1, 0]), qvec(&[1, 0, 0])]);
        assert_eq!(s.volume(), frac(1, 6));
    }

    #[test]
    fn unbounded_and_empty() {
        let half = vec![(qvec(&[1, 0]), int(1))];
        assert_eq!(Polytope::from_hrep(2, &half, &[]), Err(PolyError::UnboundedInput));
        let empty = vec![(qvec(&[1]), int(0)), (qvec(&[-1]), int(-1))];
        assert_eq!(Polytope::from_hrep(1, &empty, &[]), Err(PolyError::EmptyInput));
    }

    #[test]
    fn lower_dimensional() {
        let seg = Polytope::from_vertices(&[qvec(&[0, 0, 1]), qvec(&[2, 2, 1]), qvec(&[1, 1, 1])]).unwrap();
        assert_eq!(seg.dim, 1);
        assert_eq!(seg.vertices.len(), 2);
        assert_eq!(seg.facets.len(), 2);
        assert_eq!(seg.equalities.len(), 2);
        assert!(seg.relint_contains(&qvec(&[1, 1, 1])));
        let pt = Polytope::from_vertices(&[qvec(&[3, 4])]).unwrap();
        assert_eq!(pt.dim, 0);
        assert!(pt.facets.is_empty());
        assert!(pt.relint_contains(&qvec(&[3, 4])));
    }

    #[test]
    fn json_round_trip() {
        let sq = square();
        let s = serde_json::to_string(&sq.to_json()).unwrap();
        let back: PolytopeJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_polytope().unwrap(), sq);
    }
}
