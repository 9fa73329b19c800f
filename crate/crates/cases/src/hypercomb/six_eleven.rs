//! Diagonal matchings of the 6-11 hypergraph.
//!
//! In `S_k` the vertex `s` is matched with one `v_{kl'}`, which defines `σ(k) = l`; in `S'_l`
//! the vertex `s'` is matched with one `v_{kl'}`, which defines `σ'(l) = k`. Relabeling the
//! `S_k` by `π` and the `S'_l` by `ρ` acts by `σ ↦ ρ∘σ∘π⁻¹`, `σ' ↦ π∘σ'∘ρ⁻¹`; exchanging the
//! two families swaps `σ` and `σ'`.

use super::hypergraph::{six_eleven, six_eleven_index, SIX_ELEVEN_S, SIX_ELEVEN_SP};
use super::k5::VertexMatching;
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeSet;

/// `sigma[k] = l` and `sigma_p[l] = k`, all 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SigmaPair {
    pub sigma: [usize; 3],
    pub sigma_p: [usize; 3],
}

fn compose(a: &[usize; 3], b: &[usize; 3]) -> [usize; 3] {
    [a[b[0]], a[b[1]], a[b[2]]]
}

fn invert(p: &[usize; 3]) -> [usize; 3] {
    let mut q = [0; 3];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn perms3() -> Vec<[usize; 3]> {
    (0..3).permutations(3).map(|p| [p[0], p[1], p[2]]).collect()
}

impl SigmaPair {
    /// From 1-based image lists, as the items are written.
    pub fn from_images(sigma: [usize; 3], sigma_p: [usize; 3]) -> SigmaPair {
        SigmaPair { sigma: sigma.map(|x| x - 1), sigma_p: sigma_p.map(|x| x - 1) }
    }

    pub fn images(&self) -> ([usize; 3], [usize; 3]) {
        (self.sigma.map(|x| x + 1), self.sigma_p.map(|x| x + 1))
    }

    /// Image sizes `(|Im σ|, |Im σ'|)`.
    pub fn image_sizes(&self) -> (usize, usize) {
        let n = |a: &[usize; 3]| a.iter().collect::<BTreeSet<_>>().len();
        (n(&self.sigma), n(&self.sigma_p))
    }

    pub fn relabel(&self, pi: &[usize; 3], rho: &[usize; 3]) -> SigmaPair {
        SigmaPair {
            sigma: compose(&compose(rho, &self.sigma), &invert(pi)),
            sigma_p: compose(&compose(pi, &self.sigma_p), &invert(rho)),
        }
    }

    pub fn mirror(&self) -> SigmaPair {
        SigmaPair { sigma: self.sigma_p, sigma_p: self.sigma }
    }

    /// Least member of the relabeling orbit.
    pub fn orbit_key(&self) -> SigmaPair {
        let ps = perms3();
        ps.iter().flat_map(|pi| ps.iter().map(move |rho| self.relabel(pi, rho))).min().expect("nonempty")
    }

    /// The induced pairs on the 6-11 hypergraph, hyperedges in the order `S_1..S_3, S'_1..S'_3`.
    pub fn to_matching(&self) -> VertexMatching {
        let mut raw = Vec::new();
        for k in 0..3 {
            let m = self.sigma[k];
            let o: Vec<usize> = (0..3).filter(|&l| l != m).collect();
            raw.push([[SIX_ELEVEN_S, six_eleven_index(k, m)], [six_eleven_index(k, o[0]), six_eleven_index(k, o[1])]]);
        }
        for l in 0..3 {
            let m = self.sigma_p[l];
            let o: Vec<usize> = (0..3).filter(|&k| k != m).collect();
            raw.push([[SIX_ELEVEN_SP, six_eleven_index(m, l)], [six_eleven_index(o[0], l), six_eleven_index(o[1], l)]]);
        }
        let m = VertexMatching::new(raw);
        debug_assert!(m.is_valid_for(&six_eleven()));
        m
    }
}

/// The 18 listed items as 1-based images `(σ(1..3), σ'(1..3))`.
pub const REFERENCE_ITEMS: [([usize; 3], [usize; 3]); 18] = [
    ([1, 1, 1], [1, 1, 1]),
    ([1, 1, 1], [1, 1, 2]),
    ([1, 1, 1], [1, 2, 2]),
    ([1, 1, 1], [1, 2, 3]),
    ([1, 1, 2], [1, 1, 2]),
    ([1, 2, 1], [1, 1, 2]),
    ([2, 1, 1], [1, 1, 2]),
    ([1, 1, 2], [1, 2, 1]),
    ([1, 2, 1], [1, 2, 1]),
    ([2, 1, 1], [1, 2, 1]),
    ([1, 1, 2], [2, 1, 1]),
    ([1, 2, 1], [2, 1, 1]),
    ([2, 1, 1], [2, 1, 1]),
    ([1, 1, 2], [1, 2, 3]),
    ([1, 2, 1], [1, 2, 3]),
    ([2, 1, 1], [1, 2, 3]),
    ([1, 2, 3], [1, 2, 3]),
    ([1, 2, 3], [2, 1, 3]),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SixElevenClass {
    /// 1-based item number; supplementary classes continue after the listed items.
    pub item: usize,
    pub pair: SigmaPair,
    pub image_sizes: (usize, usize),
    /// Item whose class is this one's mirror image, when that item comes first.
    pub reduces_to: Option<usize>,
    pub supplementary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SixElevenClassification {
    /// The listed items with their reduction tags.
    pub items: Vec<SixElevenClass>,
    /// Relabeling orbits reached by neither a listed item nor its mirror.
    pub supplementary: Vec<SixElevenClass>,
    /// Number of relabeling orbits among all 27 × 27 pairs.
    pub orbit_count: usize,
    pub image_census: Vec<(usize, usize)>,
}

/// Classifies all `(σ, σ')` pairs up to relabeling, tags the listed items whose mirror is an
/// earlier item, and appends a representative for each orbit the list misses.
pub fn enumerate_6_11_matchings() -> SixElevenClassification {
    let maps: Vec<[usize; 3]> = (0..3).map(|_| 0..3usize).multi_cartesian_product().map(|v| [v[0], v[1], v[2]]).collect();
    let orbits: BTreeSet<SigmaPair> = maps
        .iter()
        .flat_map(|s| maps.iter().map(move |t| SigmaPair { sigma: *s, sigma_p: *t }.orbit_key()))
        .collect();
    let listed: Vec<SigmaPair> = REFERENCE_ITEMS.iter().map(|&(s, t)| SigmaPair::from_images(s, t)).collect();
    let keys: Vec<SigmaPair> = listed.iter().map(SigmaPair::orbit_key).collect();
    let items: Vec<SixElevenClass> = listed
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mk = p.mirror().orbit_key();
            let reduces_to = if mk == keys[i] { None } else { (0..i).find(|&j| keys[j] == mk).map(|j| j + 1) };
            SixElevenClass { item: i + 1, pair: *p, image_sizes: p.image_sizes(), reduces_to, supplementary: false }
        })
        .collect();
    let covered: BTreeSet<SigmaPair> = listed.iter().flat_map(|p| [p.orbit_key(), p.mirror().orbit_key()]).collect();
    let mut supplementary = Vec::new();
    for o in &orbits {
        if covered.contains(o) || supplementary.iter().any(|c: &SixElevenClass| c.pair.mirror().orbit_key() == *o) {
            continue;
        }
        supplementary.push(SixElevenClass {
            item: listed.len() + supplementary.len() + 1,
            pair: *o,
            image_sizes: o.image_sizes(),
            reduces_to: None,
            supplementary: true,
        });
    }
    let census: BTreeSet<(usize, usize)> = items
        .iter()
        .chain(&supplementary)
        .map(|c| {
            let (a, b) = c.image_sizes;
            (a.min(b), a.max(b))
        })
        .collect();
    SixElevenClassification { items, supplementary, orbit_count: orbits.len(), image_census: census.into_iter().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_is_a_group_action() {
        let p = SigmaPair::from_images([1, 1, 2], [1, 2, 3]);
        let ps = perms3();
        for a in &ps {
            for b in &ps {
                let twice = p.relabel(a, b).relabel(b, a);
                let once = p.relabel(&compose(b, a), &compose(a, b));
                assert_eq!(twice, once);
            }
        }
    }
}
