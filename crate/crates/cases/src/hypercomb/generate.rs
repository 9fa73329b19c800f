//! Closed hypergraphs on `R` hyperedges.
//!
//! Two hyperedges meet in exactly one vertex, so the vertices partition the pairs of
//! hyperedges: a closed hypergraph is a decomposition of the complete graph on the `R`
//! hyperedges into cliques of size at least 2 (the vertices), with every hyperedge lying
//! in exactly 4 cliques.

use super::hypergraph::Hypergraph4;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

struct Search {
    r: usize,
    covered: Vec<Vec<bool>>,
    load: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Search {
    fn new(r: usize) -> Search {
        Search { r, covered: vec![vec![false; r]; r], load: vec![0; r], blocks: Vec::new() }
    }

    fn first_uncovered(&self) -> Option<(usize, usize)> {
        (0..self.r).flat_map(|i| (i + 1..self.r).map(move |j| (i, j))).find(|&(i, j)| !self.covered[i][j])
    }

    /// Cliques containing `i < j` whose pairs are all uncovered and whose points have spare load.
    /// Cliques through point 0 are taken as runs of consecutive points with nonincreasing sizes,
    /// which fixes the labels of the other points up to the symmetries of that pattern.
    fn candidates(&self, i: usize, j: usize) -> Vec<Vec<usize>> {
        if i == 0 {
            let cap = self.blocks.last().map_or(self.r, Vec::len);
            return (2..=cap.min(self.r - j + 1)).map(|m| std::iter::once(0).chain(j..j + m - 1).collect()).collect();
        }
        let ext: Vec<usize> = (j + 1..self.r)
            .filter(|&k| self.load[k] < 4 && !self.covered[i][k] && !self.covered[j][k])
            .collect();
        let mut out = Vec::new();
        let mut block = vec![i, j];
        self.extend(&ext, 0, &mut block, &mut out);
        out
    }

    fn extend(&self, ext: &[usize], from: usize, block: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(block.clone());
        for t in from..ext.len() {
            let k = ext[t];
            if block.iter().all(|&b| !self.covered[b][k]) {
                block.push(k);
                self.extend(ext, t + 1, block, out);
                block.pop();
            }
        }
    }

    fn apply(&mut self, block: &[usize], on: bool) {
        for (a, &x) in block.iter().enumerate() {
            for &y in &block[a + 1..] {
                self.covered[x][y] = on;
                self.covered[y][x] = on;
            }
            if on {
                self.load[x] += 1;
            } else {
                self.load[x] -= 1;
            }
        }
        if on {
            self.blocks.push(block.to_vec());
        } else {
            self.blocks.pop();
        }
    }

    /// Points whose remaining uncovered pairs cannot fit into their remaining blocks.
    fn hopeless(&self) -> bool {
        (0..self.r).any(|x| {
            let open = (0..self.r).filter(|&y| y != x && !self.covered[x][y]).count();
            let spare = 4 - self.load[x];
            (spare == 0 && open > 0) || (open < spare)
        })
    }

    fn hypergraph(&self) -> Hypergraph4 {
        blocks_to_hypergraph(self.r, &self.blocks)
    }
}

fn blocks_to_hypergraph(r: usize, blocks: &[Vec<usize>]) -> Hypergraph4 {
    let edges: Vec<[usize; 4]> = (0..r)
        .map(|p| {
            let vs: Vec<usize> = (0..blocks.len()).filter(|&b| blocks[b].contains(&p)).collect();
            [vs[0], vs[1], vs[2], vs[3]]
        })
        .collect();
    Hypergraph4::new((0..blocks.len()).collect(), edges).expect("clique decomposition gives distinct hyperedges")
}

fn exhaust(s: &mut Search, seen: &mut BTreeSet<Vec<u16>>, out: &mut Vec<Hypergraph4>) {
    if s.hopeless() {
        return;
    }
    let Some((i, j)) = s.first_uncovered() else {
        if s.load.iter().all(|&l| l == 4) {
            let h = s.hypergraph();
            if seen.insert(h.canonical_form().expect("small")) {
                out.push(h);
            }
        }
        return;
    };
    if s.load[i] == 4 || s.load[j] == 4 {
        return;
    }
    for b in s.candidates(i, j) {
        s.apply(&b, true);
        exhaust(s, seen, out);
        s.apply(&b, false);
    }
}

/// All closed hypergraphs with `r` hyperedges, one per isomorphism class.
pub fn closed_hypergraphs(r: usize) -> Vec<Hypergraph4> {
    let mut s = Search::new(r);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    exhaust(&mut s, &mut seen, &mut out);
    out
}

fn sample<R: Rng>(s: &mut Search, rng: &mut R, budget: &mut usize) -> bool {
    if *budget == 0 || s.hopeless() {
        return false;
    }
    *budget -= 1;
    let Some((i, j)) = s.first_uncovered() else {
        return s.load.iter().all(|&l| l == 4);
    };
    if s.load[i] == 4 || s.load[j] == 4 {
        return false;
    }
    let mut cands = s.candidates(i, j);
    cands.shuffle(rng);
    for b in cands {
        s.apply(&b, true);
        if sample(s, rng, budget) {
            return true;
        }
        s.apply(&b, false);
    }
    false
}

/// A closed hypergraph with `r` hyperedges found by randomized backtracking, with hyperedges
/// and vertices shuffled. `None` when none exists or the search budget runs out.
pub fn random_closed<R: Rng>(r: usize, rng: &mut R) -> Option<Hypergraph4> {
    let mut s = Search::new(r);
    let mut budget = 200_000;
    if !sample(&mut s, rng, &mut budget) {
        return None;
    }
    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = s.blocks.iter().map(|b| b.iter().map(|&p| perm[p]).collect()).collect();
    blocks.shuffle(rng);
    Some(blocks_to_hypergraph(r, &blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomb::hypergraph::{five_ten, six_eleven};

    #[test]
    fn small_counts() {
        for r in 1..5 {
            assert!(closed_hypergraphs(r).is_empty());
        }
        let five = closed_hypergraphs(5);
        assert_eq!(five.len(), 1);
        assert!(five[0].is_isomorphic(&five_ten()).unwrap());
        let six = closed_hypergraphs(6);
        assert_eq!(six.len(), 1);
        assert!(six[0].is_isomorphic(&six_eleven()).unwrap());
    }
}
