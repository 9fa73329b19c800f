//! 4-uniform hypergraphs, the closure conditions and the degree moment identities.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("hyperedge {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("hyperedge {0} uses unknown vertex {1}")]
    UnknownVertex(usize, usize),
    #[error("hyperedges {0} and {1} coincide")]
    DuplicateEdge(usize, usize),
    #[error("hypergraph is not closed: {0:?}")]
    NotClosed(ClosureViolation),
    #[error("hypergraph is empty")]
    Empty,
    #[error("canonical form needs at most {max} hyperedges, got {got}")]
    TooLarge { max: usize, got: usize },
    #[error("no 5-10 or 6-11 subgraph found")]
    SearchFailure,
}

/// Hypergraph with 4-element hyperedges. Vertices carry arbitrary integer labels;
/// hyperedges are stored as sorted positions into `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph4 {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 4]>,
}

/// JSON form: `{"vertices": [...], "edges": [[a,b,c,d], ...]}` with edges given by vertex labels.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HypergraphJson {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 4]>,
}

impl Hypergraph4 {
    /// Hyperedges given by positions into `vertices`.
    pub fn new(vertices: Vec<usize>, edges: Vec<[usize; 4]>) -> Result<Hypergraph4, HyperError> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            let mut e = e;
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(HyperError::RepeatedVertex(i));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertices.len()) {
                return Err(HyperError::UnknownVertex(i, v));
            }
            if let Some(j) = out.iter().position(|f| *f == e) {
                return Err(HyperError::DuplicateEdge(j, i));
            }
            out.push(e);
        }
        Ok(Hypergraph4 { vertices, edges: out })
    }

    pub fn from_json(j: &HypergraphJson) -> Result<Hypergraph4, HyperError> {
        let pos: BTreeMap<usize, usize> = j.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, e) in j.edges.iter().enumerate() {
            let mut f = [0; 4];
            for (k, v) in e.iter().enumerate() {
                f[k] = *pos.get(v).ok_or(HyperError::UnknownVertex(i, *v))?;
            }
            edges.push(f);
        }
        Hypergraph4::new(j.vertices.clone(), edges)
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| e.map(|v| self.vertices[v])).collect(),
        }
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Hyperedges through vertex `v`.
    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].contains(&v)).collect()
    }

    pub fn common(&self, i: usize, j: usize) -> Vec<usize> {
        self.edges[i].iter().filter(|v| self.edges[j].contains(v)).copied().collect()
    }

    /// Sub-hypergraph formed by the chosen hyperedges and the vertices they cover.
    pub fn restrict(&self, chosen: &[usize]) -> Hypergraph4 {
        let used: BTreeSet<usize> = chosen.iter().flat_map(|&i| self.edges[i]).collect();
        let pos: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let vertices = used.iter().map(|&v| self.vertices[v]).collect();
        let edges = chosen.iter().map(|&i| self.edges[i].map(|v| pos[&v])).collect();
        Hypergraph4::new(vertices, edges).expect("restriction of a valid hypergraph")
    }

    pub fn is_closed(&self) -> ClosureCheck {
        let empty = self.edges.is_empty();
        for (i, j) in (0..self.edges.len()).tuple_combinations() {
            let n = self.common(i, j).len();
            if n != 1 {
                return ClosureCheck { closed: false, empty, violation: Some(ClosureViolation::Intersection { edges: (i, j), size: n }) };
            }
        }
        for (v, &d) in self.degrees().iter().enumerate() {
            if d < 2 {
                return ClosureCheck { closed: false, empty, violation: Some(ClosureViolation::LowDegree { vertex: v, degree: d }) };
            }
        }
        ClosureCheck { closed: true, empty, violation: None }
    }

    /// Lexicographically least sorted list of vertex incidence masks over all orderings of the
    /// hyperedges. Two hypergraphs are isomorphic iff their forms agree.
    pub fn canonical_form(&self) -> Result<Vec<u16>, HyperError> {
        const MAX: usize = 8;
        let r = self.edges.len();
        if r > MAX {
            return Err(HyperError::TooLarge { max: MAX, got: r });
        }
        let member: Vec<Vec<usize>> = (0..self.vertices.len()).map(|v| self.edges_at(v)).collect();
        let mut best: Option<Vec<u16>> = None;
        for perm in (0..r).permutations(r) {
            let mut masks: Vec<u16> = member.iter().map(|es| es.iter().map(|&e| 1u16 << perm[e]).sum()).collect();
            masks.sort_unstable();
            if best.as_ref().is_none_or(|b| masks < *b) {
                best = Some(masks);
            }
        }
        Ok(best.unwrap_or_default())
    }

    pub fn is_isomorphic(&self, other: &Hypergraph4) -> Result<bool, HyperError> {
        if self.edges.len() != other.edges.len() || self.vertices.len() != other.vertices.len() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureViolation {
    Intersection { edges: (usize, usize), size: usize },
    LowDegree { vertex: usize, degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub closed: bool,
    /// Closed vacuously.
    pub empty: bool,
    pub violation: Option<ClosureViolation>,
}

/// Vertex of the 5-10 hypergraph shared by hyperedges `i` and `j` (0-based, `i != j`).
pub fn k5_edge_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    [0, 4, 7, 9][a] + (b - a - 1)
}

/// Label `v{i}{j}` (1-based) of each 5-10 vertex.
pub fn five_ten_labels() -> Vec<String> {
    (1..=5).tuple_combinations().map(|(i, j)| format!("v{i}{j}")).collect()
}

/// The 5-10 hypergraph: vertices are the edges of K5, hyperedges the five vertex stars.
pub fn five_ten() -> Hypergraph4 {
    let edges = (0..5)
        .map(|i| {
            let star: Vec<usize> = (0..5).filter(|&j| j != i).map(|j| k5_edge_index(i, j)).collect();
            [star[0], star[1], star[2], star[3]]
        })
        .collect();
    Hypergraph4::new((0..10).collect(), edges).expect("valid")
}

/// Vertex positions of the 6-11 hypergraph: `s`, then `v_{kl'}` row by row, then `s'`.
pub fn six_eleven_index(k: usize, l: usize) -> usize {
    1 + 3 * k + l
}

pub const SIX_ELEVEN_S: usize = 0;
pub const SIX_ELEVEN_SP: usize = 10;

pub fn six_eleven_labels() -> Vec<String> {
    let mut out = vec!["s".to_string()];
    for k in 1..=3 {
        for l in 1..=3 {
            out.push(format!("v{k}{l}'"));
        }
    }
    out.push("s'".to_string());
    out
}

/// The 6-11 hypergraph: hyperedges `S_k = {s, v_{k1'}, v_{k2'}, v_{k3'}}` and
/// `S'_l = {s', v_{1l'}, v_{2l'}, v_{3l'}}`.
pub fn six_eleven() -> Hypergraph4 {
    let mut edges = Vec::new();
    for k in 0..3 {
        edges.push([SIX_ELEVEN_S, six_eleven_index(k, 0), six_eleven_index(k, 1), six_eleven_index(k, 2)]);
    }
    for l in 0..3 {
        edges.push([SIX_ELEVEN_SP, six_eleven_index(0, l), six_eleven_index(1, l), six_eleven_index(2, l)]);
    }
    Hypergraph4::new((0..11).collect(), edges).expect("valid")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentAudit {
    pub r: usize,
    pub v: usize,
    pub degree_bounds: bool,
    pub vertex_bounds: bool,
    pub identities: Vec<Identity>,
}

impl MomentAudit {
    pub fn all_hold(&self) -> bool {
        self.degree_bounds && self.vertex_bounds && self.identities.iter().all(Identity::holds)
    }
}

/// Number of degree-4 vertices forced by `R` hyperedges on `V` vertices: `R(R-17)/2 + 3V`.
pub fn degree4_count(r: i64, v: i64) -> i64 {
    r * (r - 17) / 2 + 3 * v
}

/// Degree-4 count table for `5 <= R <= 8`, `R <= V <= 2R`; `None` where the count is negative.
pub fn degree4_table() -> Vec<(i64, i64, Option<i64>)> {
    let mut out = Vec::new();
    for r in 5..=8 {
        for v in r..=2 * r {
            let n = degree4_count(r, v);
            out.push((r, v, (n >= 0).then_some(n)));
        }
    }
    out
}

/// Evaluates both sides of the five degree identities of a closed hypergraph.
pub fn moment_audit(h: &Hypergraph4) -> Result<MomentAudit, HyperError> {
    let c = h.is_closed();
    if let Some(v) = c.violation {
        return Err(HyperError::NotClosed(v));
    }
    let m: Vec<i64> = h.degrees().into_iter().map(|d| d as i64).collect();
    let r = h.num_edges() as i64;
    let v = h.num_vertices() as i64;
    let s = |f: &dyn Fn(i64) -> i64| m.iter().map(|&x| f(x)).sum::<i64>();
    let identities = vec![
        Identity { name: "sum m_v = 4R", lhs: s(&|x| x), rhs: 4 * r },
        Identity { name: "sum m_v^2 = R(R+3)", lhs: s(&|x| x * x), rhs: r * (r + 3) },
        Identity { name: "sum (m_v-2) = 4R-2V", lhs: s(&|x| x - 2), rhs: 4 * r - 2 * v },
        Identity { name: "sum (m_v-2)^2 = R(R-13)+4V", lhs: s(&|x| (x - 2) * (x - 2)), rhs: r * (r - 13) + 4 * v },
        Identity { name: "#{m_v = 4} = R(R-17)/2+3V", lhs: s(&|x| i64::from(x == 4)), rhs: degree4_count(r, v) },
    ];
    Ok(MomentAudit {
        r: r as usize,
        v: v as usize,
        degree_bounds: m.iter().all(|&x| (2..=4).contains(&x)),
        vertex_bounds: r <= v && v <= 2 * r,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_graphs_are_closed() {
        assert!(five_ten().is_closed().closed);
        assert!(six_eleven().is_closed().closed);
        assert_eq!(five_ten().degrees(), vec![2; 10]);
        let empty = Hypergraph4::new(vec![], vec![]).unwrap();
        let c = empty.is_closed();
        assert!(c.closed && c.empty);
    }

    #[test]
    fn disjoint_edges_are_not_closed() {
        let h = Hypergraph4::new((0..8).collect(), vec![[0, 1, 2, 3], [4, 5, 6, 7]]).unwrap();
        let c = h.is_closed();
        assert!(!c.closed);
        assert_eq!(c.violation, Some(ClosureViolation::Intersection { edges: (0, 1), size: 0 }));
    }

    #[test]
    fn invalid_edges_rejected() {
        assert_eq!(Hypergraph4::new((0..4).collect(), vec![[0, 0, 1, 2]]), Err(HyperError::RepeatedVertex(0)));
        assert_eq!(
            Hypergraph4::new((0..4).collect(), vec![[0, 1, 2, 3], [3, 2, 1, 0]]),
            Err(HyperError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn json_round_trip() {
        let h = six_eleven();
        assert_eq!(Hypergraph4::from_json(&h.to_json()).unwrap(), h);
    }
}
