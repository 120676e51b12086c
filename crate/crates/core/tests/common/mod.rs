#![allow(dead_code)]

use lss_core::{Graph, Matching};

/// Every labelled graph on `n` vertices, one per subset of the `n(n−1)/2` pairs.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let chosen = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p);
        Graph::new(n, chosen).unwrap()
    })
}

/// Every nonempty matching of `g`.
pub fn matchings(g: &Graph) -> Vec<Matching> {
    let edges = g.edges();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << edges.len()) {
        let chosen: Vec<_> = (0..edges.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| edges[k])
            .collect();
        let disjoint = chosen
            .iter()
            .enumerate()
            .all(|(i, a)| chosen[i + 1..].iter().all(|b| !a.shares_vertex(b)));
        if disjoint {
            out.push(Matching::new(chosen));
        }
    }
    out
}

/// Tree from a Prüfer sequence over `1..=n` (`n ≥ 2`, `code.len() = n − 2`).
pub fn prufer_tree(n: usize, code: &[usize]) -> Graph {
    let mut degree = vec![1usize; n + 1];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (1..=n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).unwrap()
}

/// Every labelled tree on `n` vertices.
pub fn labelled_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1)];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let code: Vec<usize> = (0..len)
                .map(|_| {
                    let c = idx % n + 1;
                    idx /= n;
                    c
                })
                .collect();
            prufer_tree(n, &code)
        })
        .collect()
}

/// Brute-force search for a closed walk that alternates between edges of `m`
/// and the other edges of `g` inside `V(m)`, starting with an edge of `m`.
pub fn brute_alternating_walk(g: &Graph, m: &Matching) -> bool {
    let inside = m.vertices();
    let max_len = 4 * m.len();
    fn go(
        g: &Graph,
        m: &Matching,
        inside: &[usize],
        start: usize,
        at: usize,
        use_matched: bool,
        len: usize,
        max_len: usize,
    ) -> bool {
        if len > 0 && len % 2 == 0 && at == start {
            return true;
        }
        if len == max_len {
            return false;
        }
        for &y in inside {
            if !g.has_edge(at, y) {
                continue;
            }
            let e = lss_core::Edge::new(at, y);
            if m.contains(&e) == use_matched
                && go(g, m, inside, start, y, !use_matched, len + 1, max_len)
            {
                return true;
            }
        }
        false
    }
    inside
        .iter()
        .any(|&s| go(g, m, &inside, s, s, true, 0, max_len))
}
