//! Snow ploughing schemes of K5: edge-disjoint cycle covers, classified up to relabeling.
//!
//! A scheme is determined by its transitions: at each vertex the four incident edges are
//! paired into (entering, exiting) pairs. There are 3 pairings per vertex, so 3^5 candidates.

use super::hypergraph::{five_ten, k5_edge_index, Hypergraph4};
use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Cycles on the vertices `1..=5`, each written as a cyclic vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PloughingScheme {
    pub cycles: Vec<Vec<usize>>,
}

/// For each hyperedge, its four vertices split into two diagonal pairs. Pairs are sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexMatching {
    pub pairs: Vec<[[usize; 2]; 2]>,
}

impl VertexMatching {
    pub fn new(raw: Vec<[[usize; 2]; 2]>) -> VertexMatching {
        let pairs = raw
            .into_iter()
            .map(|[mut a, mut b]| {
                a.sort_unstable();
                b.sort_unstable();
                if a <= b {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect();
        VertexMatching { pairs }
    }

    /// Each hyperedge's pairs use exactly its four vertices.
    pub fn is_valid_for(&self, h: &Hypergraph4) -> bool {
        self.pairs.len() == h.num_edges()
            && self.pairs.iter().zip(&h.edges).all(|(p, e)| {
                let mut vs = [p[0][0], p[0][1], p[1][0], p[1][1]];
                vs.sort_unstable();
                vs == *e
            })
    }

    /// The pair of hyperedge `e` containing vertex `v`, and the other pair.
    pub fn split(&self, e: usize, v: usize) -> Option<([usize; 2], [usize; 2])> {
        let [a, b] = self.pairs[e];
        if a.contains(&v) {
            Some((a, b))
        } else if b.contains(&v) {
            Some((b, a))
        } else {
            None
        }
    }
}

/// A transition `a - v - b` with `a < b`, vertices 0-based.
type Transition = (usize, usize, usize);

fn transitions(p: &PloughingScheme) -> BTreeSet<Transition> {
    let mut out = BTreeSet::new();
    for c in &p.cycles {
        let m = c.len();
        for t in 0..m {
            let (prev, cur, next) = (c[(t + m - 1) % m] - 1, c[t] - 1, c[(t + 1) % m] - 1);
            out.insert((prev.min(next), cur, prev.max(next)));
        }
    }
    out
}

impl PloughingScheme {
    /// Cycles are closed walks of length at least 3 that together use every K5 edge once.
    pub fn is_valid(&self) -> bool {
        let mut used = BTreeSet::new();
        for c in &self.cycles {
            if c.len() < 3 || c.iter().any(|&v| !(1..=5).contains(&v)) {
                return false;
            }
            for t in 0..c.len() {
                let (a, b) = (c[t], c[(t + 1) % c.len()]);
                if a == b || !used.insert((a.min(b), a.max(b))) {
                    return false;
                }
            }
        }
        used.len() == 10
    }

    pub fn is_single_circuit(&self) -> bool {
        self.cycles.len() == 1
    }

    /// Relabels vertex `v` as `perm[v - 1] + 1`.
    pub fn relabel(&self, perm: &[usize]) -> PloughingScheme {
        PloughingScheme { cycles: self.cycles.iter().map(|c| c.iter().map(|&v| perm[v - 1] + 1).collect()).collect() }
    }

    /// Least transition list over all 120 relabelings.
    pub fn canonical(&self) -> Vec<Transition> {
        canonical_transitions(&transitions(self))
    }
}

fn canonical_transitions(ts: &BTreeSet<Transition>) -> Vec<Transition> {
    (0..5)
        .permutations(5)
        .map(|p| {
            let mut v: Vec<Transition> = ts
                .iter()
                .map(|&(a, c, b)| {
                    let (x, y) = (p[a], p[b]);
                    (x.min(y), p[c], x.max(y))
                })
                .collect();
            v.sort_unstable();
            v
        })
        .min()
        .expect("nonempty")
}

/// Follows the transitions into cycles, starting each at the least unused edge.
fn cycles_of(ts: &BTreeSet<Transition>) -> Vec<Vec<usize>> {
    let mut next: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(a, v, b) in ts {
        next.insert((a, v), b);
        next.insert((b, v), a);
    }
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b) in (0..5).tuple_combinations() {
        if used.contains(&(a, b)) {
            continue;
        }
        let mut cyc = vec![a];
        let (mut prev, mut cur) = (a, b);
        loop {
            used.insert((prev.min(cur), prev.max(cur)));
            if cur == a && next[&(prev, cur)] == b {
                break;
            }
            cyc.push(cur);
            let n = next[&(prev, cur)];
            prev = cur;
            cur = n;
        }
        out.push(cyc.into_iter().map(|v| v + 1).collect());
    }
    out
}

/// The eight schemes listed with the existence argument, in order.
pub fn reference_schemes() -> Vec<PloughingScheme> {
    let raw: [&[&[usize]]; 8] = [
        &[&[1, 2, 3, 1, 4, 2, 5, 4, 3, 5]],
        &[&[1, 3, 5, 1, 2, 5, 4, 2, 3, 4]],
        &[&[1, 2, 3, 1, 4, 2, 5, 3, 4, 5]],
        &[&[1, 2, 3, 1, 4, 5, 2, 4, 3, 5]],
        &[&[1, 4, 2, 5, 3, 4, 5], &[1, 2, 3]],
        &[&[1, 2, 3, 4], &[1, 5, 2, 4, 5, 3]],
        &[&[1, 2, 3, 4, 5], &[1, 3, 5, 2, 4]],
        &[&[1, 5, 2, 4], &[1, 2, 3], &[3, 4, 5]],
    ];
    raw.iter().map(|cs| PloughingScheme { cycles: cs.iter().map(|c| c.to_vec()).collect() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeClass {
    /// Representative traced from the canonical transitions.
    pub representative: PloughingScheme,
    pub single_circuit: bool,
    /// Number of the 243 transition systems in the class.
    pub size: usize,
    /// Reference schemes (1-based) falling in the class.
    pub reference_items: Vec<usize>,
    pub canonical: Vec<(usize, usize, usize)>,
}

/// All 243 transition systems of K5, grouped by relabeling. Classes are ordered by their
/// least reference item, then by canonical form.
pub fn enumerate_k5_schemes() -> Vec<SchemeClass> {
    let pairings = |v: usize| -> Vec<[Transition; 2]> {
        let n: Vec<usize> = (0..5).filter(|&u| u != v).collect();
        [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
            .iter()
            .map(|&(a, b, c, d)| [(n[a], v, n[b]), (n[c], v, n[d])])
            .collect()
    };
    let local: Vec<Vec<[Transition; 2]>> = (0..5).map(pairings).collect();
    let mut classes: BTreeMap<Vec<Transition>, usize> = BTreeMap::new();
    for choice in (0..5).map(|_| 0..3).multi_cartesian_product() {
        let ts: BTreeSet<Transition> = (0..5).flat_map(|v| local[v][choice[v]]).collect();
        let key = canonical_transitions(&ts);
        *classes.entry(key).or_insert(0) += 1;
    }
    let refs: Vec<Vec<Transition>> = reference_schemes().iter().map(|s| s.canonical()).collect();
    let mut out: Vec<SchemeClass> = classes
        .into_iter()
        .map(|(key, size)| {
            let ts: BTreeSet<Transition> = key.iter().copied().collect();
            let representative = PloughingScheme { cycles: cycles_of(&ts) };
            SchemeClass {
                single_circuit: representative.is_single_circuit(),
                representative,
                size,
                reference_items: (0..refs.len()).filter(|&i| refs[i] == key).map(|i| i + 1).collect(),
                canonical: key,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        let ka = a.reference_items.first().copied().unwrap_or(usize::MAX);
        let kb = b.reference_items.first().copied().unwrap_or(usize::MAX);
        (ka, &a.canonical).cmp(&(kb, &b.canonical))
    });
    out
}

/// Diagonal pairs on the 5-10 hypergraph: at K5 vertex `v`, the edges entering and leaving
/// `v` on one pass form a pair of vertices of the star `Π_v`.
pub fn scheme_to_matching(p: &PloughingScheme) -> VertexMatching {
    let mut at: Vec<Vec<[usize; 2]>> = vec![Vec::new(); 5];
    for (a, v, b) in transitions(p) {
        at[v].push([k5_edge_index(a, v), k5_edge_index(v, b)]);
    }
    let m = VertexMatching::new(at.into_iter().map(|ps| [ps[0], ps[1]]).collect());
    debug_assert!(m.is_valid_for(&five_ten()));
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references_are_valid() {
        for s in reference_schemes() {
            assert!(s.is_valid(), "{s:?}");
        }
        assert!(!PloughingScheme { cycles: vec![vec![1, 2, 3]] }.is_valid());
    }

    #[test]
    fn first_scheme_matches_v12_with_v15() {
        let m = scheme_to_matching(&reference_schemes()[0]);
        // v12 + v15 = v13 + v14 at vertex 1
        assert_eq!(m.pairs[0], [[0, 3], [1, 2]]);
    }
}
