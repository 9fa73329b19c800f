//! Locating a 5-10 or 6-11 subgraph inside a nonempty closed hypergraph.

use super::hypergraph::{five_ten, k5_edge_index, six_eleven, six_eleven_index, HyperError, Hypergraph4, SIX_ELEVEN_S, SIX_ELEVEN_SP};
use itertools::Itertools;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FoundKind {
    FiveTen,
    SixEleven,
}

/// Which step of the constructive argument produced the subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaCase {
    /// Two vertices of degree 4.
    TwoDegreeFour,
    /// Two vertices of degree at least 3 with no common hyperedge.
    DisjointDegreeThree,
    /// Every vertex has degree 2.
    AllDegreeTwo,
    /// At least 9 hyperedges: five hyperedges avoiding a vertex of top degree.
    AvoidTopVertex,
    /// Six hyperedges, two degree-3 vertices on a common hyperedge `Q`: `Q` and one more
    /// hyperedge at each vertex of `Q`.
    SharedHyperedge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Found {
    pub kind: FoundKind,
    pub case: LemmaCase,
    /// Hyperedges of the input playing the reference hyperedges, in reference order.
    pub edges: Vec<usize>,
    /// `vertex_map[k]`: input vertex playing reference vertex `k`.
    pub vertex_map: Vec<usize>,
    /// Hyperedges dropped while passing to a minimal closed subgraph.
    pub minimalized: bool,
}

/// Embedding of the 5-10 hypergraph onto five hyperedges, or `None` if they do not form one.
fn embed_five_ten(h: &Hypergraph4, es: &[usize]) -> Option<Vec<usize>> {
    if es.len() != 5 {
        return None;
    }
    let mut map = vec![usize::MAX; 10];
    for (a, b) in (0..5).tuple_combinations() {
        let c = h.common(es[a], es[b]);
        if c.len() != 1 {
            return None;
        }
        map[k5_edge_index(a, b)] = c[0];
    }
    let distinct = map.iter().all_unique();
    distinct.then_some(map)
}

/// Embedding of the 6-11 hypergraph with `S_k = es[k]` through `s` and `S'_l = es[3 + l]` through `s'`.
fn embed_six_eleven(h: &Hypergraph4, es: &[usize], s: usize, sp: usize) -> Option<Vec<usize>> {
    if es.len() != 6 {
        return None;
    }
    let mut map = vec![usize::MAX; 11];
    map[SIX_ELEVEN_S] = s;
    map[SIX_ELEVEN_SP] = sp;
    for k in 0..3 {
        if !h.edges[es[k]].contains(&s) || h.edges[es[k]].contains(&sp) {
            return None;
        }
        if !h.edges[es[3 + k]].contains(&sp) || h.edges[es[3 + k]].contains(&s) {
            return None;
        }
    }
    for k in 0..3 {
        for l in 0..3 {
            let c = h.common(es[k], es[3 + l]);
            if c.len() != 1 {
                return None;
            }
            map[six_eleven_index(k, l)] = c[0];
        }
    }
    map.iter().all_unique().then_some(map)
}

/// Checks that `map` carries every reference hyperedge onto the matching chosen hyperedge.
fn is_embedding(h: &Hypergraph4, reference: &Hypergraph4, edges: &[usize], map: &[usize]) -> bool {
    reference.edges.iter().zip(edges).all(|(re, &e)| {
        let mut img: Vec<usize> = re.iter().map(|&v| map[v]).collect();
        img.sort_unstable();
        img == h.edges[e]
    })
}

fn six_eleven_from(h: &Hypergraph4, v1: usize, v2: usize, case: LemmaCase) -> Option<Found> {
    let at1: Vec<usize> = h.edges_at(v1).into_iter().filter(|&e| !h.edges[e].contains(&v2)).take(3).collect();
    let at2: Vec<usize> = h.edges_at(v2).into_iter().filter(|&e| !h.edges[e].contains(&v1)).take(3).collect();
    if at1.len() < 3 || at2.len() < 3 {
        return None;
    }
    let edges: Vec<usize> = at1.into_iter().chain(at2).collect();
    let vertex_map = embed_six_eleven(h, &edges, v1, v2)?;
    Some(Found { kind: FoundKind::SixEleven, case, edges, vertex_map, minimalized: false })
}

fn five_ten_from(h: &Hypergraph4, edges: Vec<usize>, case: LemmaCase) -> Option<Found> {
    let vertex_map = embed_five_ten(h, &edges)?;
    Some(Found { kind: FoundKind::FiveTen, case, edges, vertex_map, minimalized: false })
}

fn constructive(h: &Hypergraph4) -> Option<Found> {
    let deg = h.degrees();
    let nv = h.num_vertices();
    if deg.iter().all(|&d| d == 2) {
        return five_ten_from(h, (0..h.num_edges()).collect(), LemmaCase::AllDegreeTwo);
    }
    let four: Vec<usize> = (0..nv).filter(|&v| deg[v] == 4).collect();
    if four.len() >= 2 {
        return six_eleven_from(h, four[0], four[1], LemmaCase::TwoDegreeFour);
    }
    let high: Vec<usize> = (0..nv).filter(|&v| deg[v] >= 3).collect();
    for (&a, &b) in high.iter().tuple_combinations() {
        if !h.edges.iter().any(|e| e.contains(&a) && e.contains(&b)) {
            return six_eleven_from(h, a, b, LemmaCase::DisjointDegreeThree);
        }
    }
    let top = *high.iter().max_by_key(|&&v| (deg[v], std::cmp::Reverse(v)))?;
    if h.num_edges() >= 9 {
        let avoid: Vec<usize> = (0..h.num_edges()).filter(|&e| !h.edges[e].contains(&top)).take(5).collect();
        return five_ten_from(h, avoid, LemmaCase::AvoidTopVertex);
    }
    if h.num_edges() == 6 && high.len() == 2 && four.is_empty() {
        let (a, b) = (high[0], high[1]);
        let q = (0..h.num_edges()).find(|&e| h.edges[e].contains(&a) && h.edges[e].contains(&b))?;
        let mut edges = vec![q];
        for &w in &h.edges[q] {
            let other = h.edges_at(w).into_iter().find(|e| *e != q && !edges.contains(e))?;
            edges.push(other);
        }
        return five_ten_from(h, edges, LemmaCase::SharedHyperedge);
    }
    None
}

/// Smallest proper closed sub-hypergraph, as a list of hyperedges.
fn proper_closed_subset(h: &Hypergraph4) -> Option<Vec<usize>> {
    let r = h.num_edges();
    (5..r).find_map(|k| {
        (0..r).combinations(k).find(|c| {
            let sub = h.restrict(c);
            sub.degrees().iter().all(|&d| d >= 2)
        })
    })
}

/// A 5-10 or 6-11 subgraph of a nonempty closed hypergraph, following the constructive cases
/// of the existence argument. Where none applies the hypergraph is replaced by a proper closed
/// subgraph and the search repeats. The result is verified as an explicit embedding and by
/// canonical forms.
pub fn find_5_10_or_6_11(h: &Hypergraph4) -> Result<Found, HyperError> {
    if let Some(v) = h.is_closed().violation {
        return Err(HyperError::NotClosed(v));
    }
    if h.edges.is_empty() {
        return Err(HyperError::Empty);
    }
    let mut current: Vec<usize> = (0..h.num_edges()).collect();
    let mut minimalized = false;
    let found = loop {
        let sub = h.restrict(&current);
        if let Some(mut f) = constructive(&sub) {
            f.edges = f.edges.iter().map(|&e| current[e]).collect();
            let used: Vec<usize> = {
                let mut u: Vec<usize> = current.iter().flat_map(|&e| h.edges[e]).collect();
                u.sort_unstable();
                u.dedup();
                u
            };
            f.vertex_map = f.vertex_map.iter().map(|&v| used[v]).collect();
            f.minimalized = minimalized;
            break f;
        }
        match proper_closed_subset(&sub) {
            Some(c) => {
                current = c.iter().map(|&e| current[e]).collect();
                minimalized = true;
            }
            None => return Err(HyperError::SearchFailure),
        }
    };
    let reference = match found.kind {
        FoundKind::FiveTen => five_ten(),
        FoundKind::SixEleven => six_eleven(),
    };
    if !is_embedding(h, &reference, &found.edges, &found.vertex_map)
        || !h.restrict(&found.edges).is_isomorphic(&reference)?
    {
        return Err(HyperError::SearchFailure);
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_graphs_find_themselves() {
        let f = find_5_10_or_6_11(&five_ten()).unwrap();
        assert_eq!((f.kind, f.case), (FoundKind::FiveTen, LemmaCase::AllDegreeTwo));
        assert_eq!(f.edges, vec![0, 1, 2, 3, 4]);
        assert_eq!(f.vertex_map, (0..10).collect::<Vec<_>>());
        let g = find_5_10_or_6_11(&six_eleven()).unwrap();
        assert_eq!(g.kind, FoundKind::SixEleven);
        assert_eq!(g.vertex_map, (0..11).collect::<Vec<_>>());
    }

    #[test]
    fn empty_and_open_inputs_rejected() {
        let empty = Hypergraph4::new(vec![], vec![]).unwrap();
        assert_eq!(find_5_10_or_6_11(&empty), Err(HyperError::Empty));
        let open = Hypergraph4::new((0..4).collect(), vec![[0, 1, 2, 3]]).unwrap();
        assert!(matches!(find_5_10_or_6_11(&open), Err(HyperError::NotClosed(_))));
    }
}
