//! Face lattices of polytopes, as vertex-index sets.

use super::polytope::Polytope;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Sorted vertex indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
    /// Affine dimension; `-1` for the empty face.
    pub dim: i32,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// `up[i]`: faces covering face `i` (one dimension higher).
    pub up: Vec<Vec<usize>>,
    /// `down[i]`: faces covered by face `i`.
    pub down: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub fn of(p: &Polytope) -> FaceLattice {
        let nv = p.vertices.len();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert((0..nv).collect());
        for f in 0..p.facets.len() {
            let fv: Vec<usize> = (0..nv).filter(|&v| p.incidence[f][v]).collect();
            let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
            for s in current {
                let inter: Vec<usize> = s.iter().copied().filter(|v| fv.contains(v)).collect();
                sets.insert(inter);
            }
        }
        sets.insert(Vec::new());
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vs| {
                let dim = if vs.is_empty() {
                    -1
                } else {
                    let pts: Vec<_> = vs.iter().map(|&i| p.vertices[i].clone()).collect();
                    super::affine_rank(&pts) as i32
                };
                Face { vertices: vs, dim }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        let n = faces.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if faces[j].dim == faces[i].dim + 1 && is_subset(&faces[i].vertices, &faces[j].vertices) {
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        FaceLattice { faces, up, down }
    }

    pub fn of_dim(&self, k: i32) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == k).collect()
    }

    pub fn count(&self, k: i32) -> usize {
        self.faces.iter().filter(|f| f.dim == k).count()
    }

    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.faces.iter().position(|f| f.vertices == v)
    }

    /// Faces containing face `i` (including itself).
    pub fn above(&self, i: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&j| is_subset(&self.faces[i].vertices, &self.faces[j].vertices)).collect()
    }

    /// Faces contained in face `i` (including itself and the empty face).
    pub fn below(&self, i: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&j| is_subset(&self.faces[j].vertices, &self.faces[i].vertices)).collect()
    }
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}
