//! Lattices given by Gram matrices, Dirichlet-Voronoi cells, belts and Venkov's conditions.
//!
//! All geometry lives in basis coordinates: the lattice is `Z^d` and distances come from
//! the Gram form.

use crate::linalg::{is_positive_definite, mat_mul, mat_vec, quad_form, transpose, Mat};
use crate::rat::{dot, frac, int, jvec, lex_cmp, scale, sub, JRat, QVec, Rat};
use crate::ratpoly::{FaceLattice, PolyError, Polytope};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const MAX_DIM: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not square of size {0}")]
    Shape(usize),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension {0} is outside 1..=5")]
    DimensionUnsupported(usize),
    #[error("facet {0} is not centrally symmetric")]
    FacetNotCentrallySymmetric(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub dim: usize,
    pub gram: Mat,
    /// Columns of an embedding basis, when the lattice came from one.
    pub basis: Option<Mat>,
}

impl Lattice {
    pub fn from_gram(gram: Mat) -> Result<Lattice, LatticeError> {
        let d = gram.len();
        if d == 0 || d > MAX_DIM {
            return Err(LatticeError::DimensionUnsupported(d));
        }
        if gram.iter().any(|r| r.len() != d) {
            return Err(LatticeError::Shape(d));
        }
        if (0..d).any(|i| (0..d).any(|j| gram[i][j] != gram[j][i])) {
            return Err(LatticeError::NotSymmetric);
        }
        if !is_positive_definite(&gram) {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(Lattice { dim: d, gram, basis: None })
    }

    pub fn from_int_gram(rows: &[&[i64]]) -> Result<Lattice, LatticeError> {
        Lattice::from_gram(crate::linalg::int_mat(rows))
    }

    /// Lattice spanned by the columns of `basis` (rows of the matrix are ambient coordinates).
    pub fn from_basis(basis: Mat) -> Result<Lattice, LatticeError> {
        let d = basis.first().map_or(0, |r| r.len());
        let bt = transpose(&basis, d);
        let mut l = Lattice::from_gram(mat_mul(&bt, &basis))?;
        l.basis = Some(basis);
        Ok(l)
    }

    pub fn cubic(d: usize) -> Lattice {
        Lattice::from_gram(crate::linalg::identity(d)).expect("identity is positive definite")
    }

    pub fn norm(&self, v: &[Rat]) -> Rat {
        quad_form(&self.gram, v)
    }

    pub fn inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        dot(a, &mat_vec(&self.gram, b))
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson { dim: self.dim, gram: self.gram.iter().map(|r| jvec(r)).collect() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub dim: usize,
    pub gram: Vec<Vec<JRat>>,
}

impl LatticeJson {
    pub fn to_lattice(&self) -> Result<Lattice, LatticeError> {
        if self.gram.len() != self.dim {
            return Err(LatticeError::Shape(self.dim));
        }
        Lattice::from_gram(self.gram.iter().map(|r| crate::rat::from_jvec(r)).collect())
    }
}

/// Relevant (facet) vectors in basis coordinates, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantVectorSet {
    pub vectors: Vec<Vec<i64>>,
}

impl RelevantVectorSet {
    pub fn as_qvecs(&self) -> Vec<QVec> {
        self.vectors.iter().map(|v| crate::rat::qvec(v)).collect()
    }
}

/// Unimodular `u` (columns are the new basis in old coordinates) making the Gram matrix size-reduced.
pub fn size_reduce(gram: &Mat) -> (Mat, Mat) {
    let d = gram.len();
    let mut u = crate::linalg::identity(d);
    let mut g = gram.clone();
    loop {
        let mut changed = false;
        for i in 0..d {
            for j in 0..d {
                if i == j || (int(2) * g[i][j].abs()) <= g[j][j] {
                    continue;
                }
                let q = (&g[i][j] / &g[j][j]).round();
                for r in u.iter_mut() {
                    let t = &r[j] * &q;
                    r[i] -= t;
                }
                g = mat_mul(&mat_mul(&transpose(&u, d), gram), &u);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (u, g)
}

/// `LDL^T` factors with `L` unit lower triangular: `x^T G x = sum_k D_k (x_k + sum_{i>k} L_ik x_i)^2`.
fn ldl(g: &Mat) -> (Mat, QVec) {
    let d = g.len();
    let mut l = vec![vec![Rat::zero(); d]; d];
    let mut dd = vec![Rat::zero(); d];
    for j in 0..d {
        let mut s = g[j][j].clone();
        for k in 0..j {
            s -= &l[j][k] * &l[j][k] * &dd[k];
        }
        dd[j] = s;
        l[j][j] = Rat::one();
        for i in j + 1..d {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &dd[k];
            }
            l[i][j] = s / &dd[j];
        }
    }
    (l, dd)
}

fn isqrt_ceil(t: &Rat) -> BigInt {
    let c = t.ceil().to_integer();
    if c.is_negative() {
        return BigInt::zero();
    }
    let mut s = c.sqrt();
    while &s * &s < c {
        s += 1;
    }
    s
}

/// All nonzero integer vectors with `x^T G x <= bound` (Fincke-Pohst).
pub fn short_vectors(g: &Mat, bound: &Rat) -> Vec<Vec<i64>> {
    let d = g.len();
    let (l, dd) = ldl(g);
    let mut out = Vec::new();
    let mut x = vec![0i64; d];
    fn rec(k: usize, rem: Rat, x: &mut Vec<i64>, l: &Mat, dd: &QVec, out: &mut Vec<Vec<i64>>) {
        let d = x.len();
        let mut c = Rat::zero();
        for i in k + 1..d {
            c += &l[i][k] * int(x[i]);
        }
        let t = &rem / &dd[k];
        let m = Rat::from_integer(isqrt_ceil(&t));
        let lo = (-&c - &m).floor().to_integer().to_i64().expect("small");
        let hi = (-&c + &m).ceil().to_integer().to_i64().expect("small");
        for xi in lo..=hi {
            let y = int(xi) + &c;
            let used = &dd[k] * &y * &y;
            if used > rem {
                continue;
            }
            x[k] = xi;
            if k == 0 {
                if x.iter().any(|&v| v != 0) {
                    out.push(x.clone());
                }
            } else {
                rec(k - 1, &rem - &used, x, l, dd, out);
            }
        }
        x[k] = 0;
    }
    rec(d - 1, bound.clone(), &mut x, &l, &dd, &mut out);
    out
}

/// Facet vectors of the Dirichlet-Voronoi cell: for every nonzero class of `Λ/2Λ`, the
/// minimal vectors of the class when they are exactly one `±` pair.
pub fn relevant_vectors(l: &Lattice) -> RelevantVectorSet {
    let d = l.dim;
    let (u, g) = size_reduce(&l.gram);
    let mut bound = Rat::zero();
    for mask in 1u32..(1 << d) {
        let c: QVec = (0..d).map(|i| int(((mask >> i) & 1) as i64)).collect();
        let n = quad_form(&g, &c);
        if n > bound {
            bound = n;
        }
    }
    let mut classes: BTreeMap<u32, (Rat, Vec<Vec<i64>>)> = BTreeMap::new();
    for v in short_vectors(&g, &bound) {
        let key = v.iter().enumerate().fold(0u32, |acc, (i, &x)| acc | ((x.rem_euclid(2) as u32) << i));
        if key == 0 {
            continue;
        }
        let n = quad_form(&g, &crate::rat::qvec(&v));
        let e = classes.entry(key).or_insert_with(|| (n.clone(), Vec::new()));
        if n < e.0 {
            *e = (n, vec![v]);
        } else if n == e.0 {
            e.1.push(v);
        }
    }
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    for (_, (_, mins)) in classes {
        if mins.len() == 2 {
            for v in mins {
                let orig = mat_vec(&u, &crate::rat::qvec(&v));
                vectors.push(crate::rat::to_i64_vec(&orig).expect("unimodular image is integral"));
            }
        }
    }
    vectors.sort();
    RelevantVectorSet { vectors }
}

/// Dirichlet-Voronoi cell in basis coordinates: `(G v)·x <= ½ v^T G v` over relevant `v`.
pub fn dv_cell(l: &Lattice) -> Polytope {
    let ineq: Vec<(QVec, Rat)> = relevant_vectors(l)
        .as_qvecs()
        .into_iter()
        .map(|v| (mat_vec(&l.gram, &v), l.norm(&v) * frac(1, 2)))
        .collect();
    Polytope::from_hrep(l.dim, &ineq, &[]).expect("Voronoi cell is a bounded nonempty polytope")
}

/// Facet vector of each facet: twice the offset of the facet's centroid from the body's centroid.
pub fn facet_vectors(p: &Polytope) -> Vec<QVec> {
    let c = p.centroid();
    (0..p.facets.len())
        .map(|f| {
            let vs: Vec<QVec> = p.facet_vertices(f).iter().map(|&i| p.vertices[i].clone()).collect();
            scale(&sub(&crate::rat::mean(&vs), &c), &int(2))
        })
        .collect()
}

/// Cyclic sequence of facets joined by translates of one (d-2)-face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Belt {
    /// Facet indices into `Polytope::facets`, in walking order.
    pub facets: Vec<usize>,
    /// Face-lattice indices of the visited (d-2)-faces, `ridges[i]` shared by facets `i` and `i+1`.
    pub ridges: Vec<usize>,
}

impl Belt {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }
}

fn reflect_face(p: &Polytope, fl: &FaceLattice, face: usize, center: &[Rat]) -> Option<usize> {
    let two_c = scale(center, &int(2));
    let img: Option<Vec<usize>> =
        fl.faces[face].vertices.iter().map(|&v| p.vertex_index(&sub(&two_c, &p.vertices[v]))).collect();
    fl.find(&img?)
}

/// Belts of a full-dimensional polytope with centrally symmetric facets.
pub fn belts_of(p: &Polytope) -> Result<Vec<Belt>, LatticeError> {
    let d = p.dim;
    if d < 2 {
        return Ok(Vec::new());
    }
    let fl = FaceLattice::of(p);
    let facet_of_face = |fi: usize| -> usize {
        (0..p.facets.len()).find(|&f| p.facet_vertices(f) == fl.faces[fi].vertices).expect("facet face")
    };
    let centers: BTreeMap<usize, QVec> = fl
        .of_dim(d - 1)
        .into_iter()
        .map(|fi| {
            let vs: Vec<QVec> = fl.faces[fi].vertices.iter().map(|&v| p.vertices[v].clone()).collect();
            (fi, crate::rat::mean(&vs))
        })
        .collect();
    let ridges = fl.of_dim(d - 2);
    let mut seen = vec![false; fl.faces.len()];
    let mut belts = Vec::new();
    for &r0 in &ridges {
        if seen[r0] {
            continue;
        }
        let f0 = fl.up[r0][0];
        let (mut f, mut r) = (f0, r0);
        let mut facets = Vec::new();
        let mut visited = Vec::new();
        loop {
            seen[r] = true;
            let r2 = reflect_face(p, &fl, r, &centers[&f])
                .ok_or(LatticeError::FacetNotCentrallySymmetric(facet_of_face(f)))?;
            seen[r2] = true;
            facets.push(facet_of_face(f));
            visited.push(r2);
            let next = *fl.up[r2].iter().find(|&&g| g != f).expect("ridge in two facets");
            f = next;
            r = r2;
            if (f, r) == (f0, r0) || facets.len() > p.facets.len() {
                break;
            }
        }
        belts.push(Belt { facets, ridges: visited });
    }
    Ok(belts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VenkovReport {
    pub centrally_symmetric: bool,
    pub facets_centrally_symmetric: bool,
    pub belts_ok: bool,
    pub belt_lengths: Vec<usize>,
}

impl VenkovReport {
    pub fn passes(&self) -> bool {
        self.centrally_symmetric && self.facets_centrally_symmetric && self.belts_ok
    }
}

fn symmetric_about(points: &[QVec], c: &[Rat]) -> bool {
    let two_c = scale(c, &int(2));
    points.iter().all(|v| points.contains(&sub(&two_c, v)))
}

/// Venkov's conditions: central symmetry of the body and its facets, belts of length 4 or 6.
pub fn venkov_check(p: &Polytope) -> VenkovReport {
    let centrally_symmetric = symmetric_about(&p.vertices, &p.centroid());
    let facets_centrally_symmetric = (0..p.facets.len()).all(|f| {
        let vs: Vec<QVec> = p.facet_vertices(f).iter().map(|&i| p.vertices[i].clone()).collect();
        symmetric_about(&vs, &crate::rat::mean(&vs))
    });
    let (belts_ok, belt_lengths) = match belts_of(p) {
        Ok(bs) => {
            let mut lens: Vec<usize> = bs.iter().map(Belt::len).collect();
            lens.sort_unstable();
            (bs.iter().all(|b| b.len() == 4 || b.len() == 6), lens)
        }
        Err(_) => (false, Vec::new()),
    };
    VenkovReport { centrally_symmetric, facets_centrally_symmetric, belts_ok, belt_lengths }
}

/// Lattice points `λ` with `x - λ` in the closed cell; used for exact point location.
pub fn covering_shifts(cell: &Polytope, x: &[Rat]) -> Vec<QVec> {
    let d = cell.ambient;
    let lo: Vec<i64> = (0..d)
        .map(|i| {
            let m = cell.vertices.iter().map(|v| v[i].clone()).max().expect("nonempty");
            (&x[i] - m).floor().to_integer().to_i64().expect("small")
        })
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| {
            let m = cell.vertices.iter().map(|v| v[i].clone()).min().expect("nonempty");
            (&x[i] - m).ceil().to_integer().to_i64().expect("small")
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let lam = crate::rat::qvec(&cur);
        if cell.contains(&sub(x, &lam)) {
            out.push(lam);
        }
        let mut i = 0;
        loop {
            if i == d {
                out.sort_by(|a, b| lex_cmp(a, b));
                return out;
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

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| a.gcd(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_relevant(l: &Lattice, r: i64) -> Vec<Vec<i64>> {
        let d = l.dim;
        let mut all = Vec::new();
        let mut cur = vec![-r; d];
        loop {
            all.push(cur.clone());
            let mut i = 0;
            while i < d && cur[i] == r {
                cur[i] = -r;
                i += 1;
            }
            if i == d {
                break;
            }
            cur[i] += 1;
        }
        let mut out = Vec::new();
        for v in all.iter().filter(|v| v.iter().any(|&x| x != 0)) {
            let nv = l.norm(&crate::rat::qvec(v));
            let strict = all.iter().all(|w| {
                w == v
                    || w.iter().map(|x| -x).collect::<Vec<_>>() == *v
                    || w.iter().zip(v).any(|(a, b)| (a - b).rem_euclid(2) != 0)
                    || l.norm(&crate::rat::qvec(w)) > nv
            });
            if strict {
                out.push(v.clone());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn relevant_vectors_match_brute_force() {
        for g in [
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![2, 0, 1], vec![0, 2, 1], vec![1, 1, 2]],
            vec![vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]],
            vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 1]],
            vec![vec![5, 4], vec![4, 5]],
        ] {
            let rows: Vec<&[i64]> = g.iter().map(|r| r.as_slice()).collect();
            let l = Lattice::from_int_gram(&rows).unwrap();
            assert_eq!(relevant_vectors(&l).vectors, brute_relevant(&l, 3), "gram {g:?}");
        }
    }

    #[test]
    fn a2_relevant() {
        let l = Lattice::from_int_gram(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(relevant_vectors(&l).vectors, vec![vec![-1, 0], vec![-1, 1], vec![0, -1], vec![0, 1], vec![1, -1], vec![1, 0]]);
    }

    #[test]
    fn rejects_bad_grams() {
        assert_eq!(Lattice::from_int_gram(&[&[1, 1], &[1, 1]]), Err(LatticeError::NotPositiveDefinite));
        assert_eq!(Lattice::from_int_gram(&[&[1, 1], &[0, 1]]), Err(LatticeError::NotSymmetric));
    }

    #[test]
    fn cube_belts() {
        let p = dv_cell(&Lattice::cubic(3));
        assert_eq!(p.vertices.len(), 8);
        let r = venkov_check(&p);
        assert!(r.passes());
        assert_eq!(r.belt_lengths, vec![4, 4, 4]);
    }

    #[test]
    fn tetrahedron_not_symmetric() {
        let t = Polytope::from_vertices(&[
            crate::rat::qvec(&[0, 0, 0]),
            crate::rat::qvec(&[1, 0, 0]),
            crate::rat::qvec(&[0, 1, 0]),
            crate::rat::qvec(&[0, 0, 1]),
        ])
        .unwrap();
        let r = venkov_check(&t);
        assert!(!r.centrally_symmetric);
        assert!(!r.passes());
    }
}
