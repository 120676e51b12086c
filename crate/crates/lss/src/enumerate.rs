//! Small-graph enumeration for the verification suites.
//!
//! Graphs up to isomorphism are built by vertex extension: every graph on `n`
//! vertices arises from one on `n − 1` by adding a vertex with some
//! neighbourhood (for forests, a neighbourhood of size at most one). Each
//! extension is reduced to a canonical labelling by trying every permutation,
//! which is cheap for the sizes used here (`n ≤ 8`).

use std::collections::BTreeSet;

use lss_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adjacency as a bitmask over the `n(n−1)/2` vertex pairs.
type PairMask = u64;

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    // 0-based a < b
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn to_mask(n: usize, edges: &[(usize, usize)]) -> PairMask {
    edges
        .iter()
        .fold(0, |m, &(a, b)| m | 1 << pair_index(n, a.min(b), a.max(b)))
}

fn from_mask(n: usize, mask: PairMask) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if mask >> pair_index(n, a, b) & 1 == 1 {
                edges.push((a + 1, b + 1));
            }
        }
    }
    Graph::new(n, edges).expect("valid by construction")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Smallest pair mask over all relabellings; vertices are sorted by degree
/// first so only degree-preserving permutations need to be tried.
fn canonical_mask(n: usize, edges: &[(usize, usize)]) -> PairMask {
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    // classes of equal degree, in decreasing degree order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut perms: Vec<Vec<usize>> = classes.clone();
    for p in &mut perms {
        p.sort_unstable();
    }
    let mut best = PairMask::MAX;
    loop {
        let mut label = vec![0usize; n];
        let mut next = 0;
        for p in &perms {
            for &v in p {
                label[v] = next;
                next += 1;
            }
        }
        let relabelled: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (label[a], label[b])).collect();
        best = best.min(to_mask(n, &relabelled));
        // odometer over the per-class permutations
        let mut k = perms.len();
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            if next_permutation(&mut perms[k]) {
                break;
            }
            perms[k].sort_unstable();
        }
    }
}

fn extend(n: usize, base: &BTreeSet<PairMask>, max_nbrs: usize) -> BTreeSet<PairMask> {
    let mut out = BTreeSet::new();
    let new = n; // 0-based index of the added vertex
    for &mask in base {
        let g = from_mask(n, mask);
        let old: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u - 1, e.v - 1)).collect();
        for nbrs in 0u32..(1 << n) {
            if nbrs.count_ones() as usize > max_nbrs {
                continue;
            }
            let mut edges = old.clone();
            edges.extend((0..n).filter(|v| nbrs >> v & 1 == 1).map(|v| (v, new)));
            out.insert(canonical_mask(n + 1, &edges));
        }
    }
    out
}

fn by_extension(max_n: usize, max_nbrs: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<BTreeSet<PairMask>> = vec![BTreeSet::new(), BTreeSet::from([0])];
    for n in 1..max_n {
        let next = extend(n, &levels[n], max_nbrs);
        levels.push(next);
    }
    levels
        .iter()
        .enumerate()
        .map(|(n, set)| set.iter().map(|&m| from_mask(n, m)).collect())
        .collect()
}

/// All graphs with `1 ≤ n ≤ max_n` up to isomorphism (`max_n ≤ 8`), in a
/// fixed order: by `n`, then by canonical mask.
pub fn graphs_up_to_iso(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 8, "pair masks hold at most 8 vertices");
    by_extension(max_n, usize::MAX).into_iter().flatten().collect()
}

pub fn connected_graphs_up_to_iso(max_n: usize) -> Vec<Graph> {
    graphs_up_to_iso(max_n)
        .into_iter()
        .filter(|g| g.n() >= 2 && g.is_connected())
        .collect()
}

/// All forests with `1 ≤ n ≤ max_n` up to isomorphism.
pub fn forests_up_to_iso(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 11, "pair masks hold at most 11 vertices");
    by_extension(max_n, 1).into_iter().flatten().collect()
}

/// All trees with `1 ≤ n ≤ max_n` up to isomorphism.
pub fn trees_up_to_iso(max_n: usize) -> Vec<Graph> {
    forests_up_to_iso(max_n)
        .into_iter()
        .filter(|g| g.is_connected())
        .collect()
}

/// Every graph obtained from one of `gs` by adding a single new edge, up to
/// isomorphism, ordered by `n` and then by canonical mask.
pub fn add_one_edge(gs: &[Graph]) -> Vec<Graph> {
    let mut out: BTreeSet<(usize, PairMask)> = BTreeSet::new();
    for g in gs {
        let n = g.n();
        assert!(n <= 11, "pair masks hold at most 11 vertices");
        let old: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u - 1, e.v - 1)).collect();
        for a in 0..n {
            for b in a + 1..n {
                if !g.has_edge(a + 1, b + 1) {
                    let mut edges = old.clone();
                    edges.push((a, b));
                    out.insert((n, canonical_mask(n, &edges)));
                }
            }
        }
    }
    out.into_iter().map(|(n, m)| from_mask(n, m)).collect()
}

/// Connected unicyclic graphs with `3 ≤ n ≤ max_n` up to isomorphism.
pub fn unicyclic_up_to_iso(max_n: usize) -> Vec<Graph> {
    add_one_edge(&trees_up_to_iso(max_n))
}

/// Connected graphs with cyclomatic number 2 and `n ≤ max_n` up to isomorphism.
pub fn bicyclic_up_to_iso(max_n: usize) -> Vec<Graph> {
    add_one_edge(&unicyclic_up_to_iso(max_n))
}

/// Every labelled graph on exactly `n` vertices (`n ≤ 6` in practice).
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |m| from_mask(n, m))
}

/// Every matching of `g`, including the empty one, in edge-index order.
pub fn matchings(g: &Graph) -> Vec<lss_core::Matching> {
    fn go(g: &Graph, from: usize, used: u64, cur: &mut Vec<lss_core::Edge>, out: &mut Vec<lss_core::Matching>) {
        out.push(lss_core::Matching::new(cur.iter().copied()));
        for (k, e) in g.edges().iter().enumerate().skip(from) {
            let bits = 1u64 << (e.u - 1) | 1u64 << (e.v - 1);
            if used & bits == 0 {
                cur.push(*e);
                go(g, k + 1, used | bits, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Tree from a Prüfer sequence over `1..=n`.
pub fn prufer_tree(n: usize, code: &[usize]) -> Graph {
    assert!(n >= 2 && code.len() == n - 2);
    let mut degree = vec![1usize; n + 1];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).expect("valid tree")
}

/// `count` labelled trees on `n` vertices from uniform Prüfer codes.
pub fn random_trees(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
            prufer_tree(n, &code)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequences() {
        // graphs: 1, 2, 4, 11, 34, 156
        let all = graphs_up_to_iso(6);
        let per_n: Vec<usize> = (1..=6).map(|n| all.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_n, vec![1, 2, 4, 11, 34, 156]);
        // connected: 1, 2, 6, 21, 112 for n = 2..6
        let conn = connected_graphs_up_to_iso(6);
        let per_n: Vec<usize> = (2..=6).map(|n| conn.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_n, vec![1, 2, 6, 21, 112]);
        // trees: 1, 1, 1, 2, 3, 6, 11, 23
        let trees = trees_up_to_iso(8);
        let per_n: Vec<usize> = (1..=8).map(|n| trees.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_n, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        // forests: 1, 2, 3, 6, 10, 20, 37, 76
        let forests = forests_up_to_iso(8);
        let per_n: Vec<usize> = (1..=8).map(|n| forests.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_n, vec![1, 2, 3, 6, 10, 20, 37, 76]);
    }

    #[test]
    fn cyclic_counts_match_known_sequences() {
        // connected unicyclic: 1, 2, 5, 13, 33, 89 for n = 3..8
        let uni = unicyclic_up_to_iso(8);
        let per_n: Vec<usize> = (3..=8).map(|n| uni.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_n, vec![1, 2, 5, 13, 33, 89]);
        assert!(uni.iter().all(|g| g.is_connected() && g.cyclomatic_number() == 1));
        // connected bicyclic: 1, 5, 19, 67 for n = 4..7
        let bi = bicyclic_up_to_iso(7);
        let per_n: Vec<usize> = (4..=7).map(|n| bi.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_n, vec![1, 5, 19, 67]);
    }

    #[test]
    fn matchings_of_a_triangle() {
        let k3 = lss_core::graph::named_graph("K3").unwrap();
        assert_eq!(matchings(&k3).len(), 4);
    }

    #[test]
    fn random_trees_are_reproducible() {
        let a = random_trees(9, 5, 7);
        assert_eq!(a, random_trees(9, 5, 7));
        assert!(a.iter().all(|t| t.num_edges() == 8 && t.is_connected()));
    }
}
