//! Positive matching decompositions and the exact `pmd` search.
//!
//! A pm-decomposition partitions `E(G)` into `M_1, ..., M_p` such that each
//! `M_k` is a positive matching of the residual graph `(V, E ∖ (M_1 ∪ ... ∪ M_{k-1}))`.
//!
//! The exact search builds decompositions part by part. Two facts keep it small:
//!
//! - positivity is hereditary (a sub-matching of a positive matching is
//!   positive), and enlarging an earlier part only shrinks later residuals, so
//!   it suffices to try *maximal* positive matchings of each residual;
//! - `pmd(R) ≥ Δ(R)`, so with `k` parts left every vertex of degree `k` must be
//!   covered by the current part.
//!
//! Residual graphs are edge bitmasks over the host's canonical edge list and
//! failed `(residual, budget)` pairs are memoised.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{classify_shape, Edge, Graph, GraphError, ShapeKind, Vertex};
use crate::limits::Limits;
use crate::matching::{self, is_positive_unchecked, Matching, MatchingError, WeightCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PmdError {
    #[error("graph with {actual} {what} exceeds the exact-search limit of {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("no constructive bound for a graph of shape `{}`", .0.name())]
    UnsupportedShape(ShapeKind),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// An ordered partition of `E(G)` into matchings, optionally with a weight
/// certificate per part (valid on that part's residual graph).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PmDecomposition {
    pub parts: Vec<Matching>,
    pub certificates: Vec<Option<WeightCertificate>>,
}

impl PmDecomposition {
    pub fn new(parts: Vec<Matching>) -> Self {
        let certificates = vec![None; parts.len()];
        PmDecomposition {
            parts,
            certificates,
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Residual graph seen by part `k` (0-based): `G` minus parts `0..k`.
    pub fn residual(&self, g: &Graph, k: usize) -> Graph {
        let removed: Vec<Edge> = self.parts[..k]
            .iter()
            .flat_map(|m| m.edges().iter().copied())
            .collect();
        g.without_edges(&removed)
    }

    /// Fills in LP certificates for every part.
    pub fn certify(&mut self, g: &Graph) -> Result<(), PmdError> {
        let mut certs = Vec::with_capacity(self.parts.len());
        for k in 0..self.parts.len() {
            let residual = self.residual(g, k);
            let cert = matching::find_weight_certificate(&residual, &self.parts[k])?;
            if cert.is_none() {
                return Err(PmdError::InvalidDecomposition(format!(
                    "part {} is not a positive matching of its residual graph",
                    k + 1
                )));
            }
            certs.push(cert);
        }
        self.certificates = certs;
        Ok(())
    }
}

/// Re-verifies a decomposition from scratch: partition, matchings, and
/// positivity of every part on its residual (walk criterion).
pub fn check_pm_decomposition(g: &Graph, pm: &PmDecomposition) -> Result<(), PmdError> {
    let mut seen = vec![false; g.num_edges()];
    for (k, part) in pm.parts.iter().enumerate() {
        part.validate(g)?;
        for e in part.edges() {
            let i = g.edge_index(*e).expect("validated");
            if seen[i] {
                return Err(PmdError::InvalidDecomposition(format!(
                    "edge {e} appears in two parts"
                )));
            }
            seen[i] = true;
        }
        let residual = pm.residual(g, k);
        if !matching::is_positive_matching(&residual, part)? {
            return Err(PmdError::InvalidDecomposition(format!(
                "part {} is not positive on its residual graph",
                k + 1
            )));
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(PmdError::InvalidDecomposition(format!(
            "edge {} is not covered",
            g.edges()[i]
        )));
    }
    Ok(())
}

/// Lower bound Δ(G).
pub fn pmd_lower_bound(g: &Graph) -> usize {
    g.max_degree()
}

/// Exact `pmd(G)` with a witness decomposition (certificates included).
///
/// The witness is deterministic: parts are tried in lexicographic order of their
/// sorted edge-index lists, so it is the lexicographically least optimal
/// decomposition built from maximal positive matchings.
pub fn pmd_exact(g: &Graph, limits: &Limits) -> Result<(usize, PmDecomposition), PmdError> {
    check_size(g, limits.pmd_max_n, limits.pmd_max_edges)?;
    let mut search = Search::new(g);
    let full = search.full_mask();
    let mut p = g.max_degree();
    loop {
        if let Some(masks) = search.feasible(full, p) {
            let parts: Vec<Matching> = masks.iter().map(|&m| search.matching_of(m)).collect();
            let mut pm = PmDecomposition::new(parts);
            debug_assert!(check_pm_decomposition(g, &pm).is_ok());
            pm.certify(g)?;
            return Ok((p, pm));
        }
        p += 1;
    }
}

pub(crate) fn check_size(g: &Graph, max_n: usize, max_edges: usize) -> Result<(), PmdError> {
    if g.n() > max_n {
        return Err(PmdError::SizeLimit {
            what: "vertices",
            actual: g.n(),
            limit: max_n,
        });
    }
    let cap = max_edges.min(64);
    if g.num_edges() > cap {
        return Err(PmdError::SizeLimit {
            what: "edges",
            actual: g.num_edges(),
            limit: cap,
        });
    }
    Ok(())
}

struct Search<'g> {
    g: &'g Graph,
    /// endpoints (0-based) per edge index
    ends: Vec<(usize, usize)>,
    /// largest budget known to fail, per residual mask
    failed: BTreeMap<u64, usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        Search {
            g,
            ends: g.edges().iter().map(|e| (e.u - 1, e.v - 1)).collect(),
            failed: BTreeMap::new(),
        }
    }

    fn full_mask(&self) -> u64 {
        mask_of_len(self.ends.len())
    }

    fn matching_of(&self, mask: u64) -> Matching {
        Matching::new(bits(mask).map(|i| self.g.edges()[i]))
    }

    fn degrees(&self, residual: u64) -> Vec<usize> {
        let mut deg = vec![0; self.g.n()];
        for i in bits(residual) {
            let (a, b) = self.ends[i];
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn is_positive(&self, residual: u64, part: u64) -> bool {
        let mut matched = Vec::new();
        let mut others = Vec::new();
        for i in bits(residual) {
            if part >> i & 1 == 1 {
                matched.push(self.ends[i]);
            } else {
                others.push(self.ends[i]);
            }
        }
        is_positive_unchecked(self.g.n(), &matched, &others)
    }

    fn feasible(&mut self, residual: u64, budget: usize) -> Option<Vec<u64>> {
        if residual == 0 {
            return Some(Vec::new());
        }
        if budget == 0 {
            return None;
        }
        if self.failed.get(&residual).is_some_and(|&b| b >= budget) {
            return None;
        }
        let deg = self.degrees(residual);
        let max_deg = deg.iter().copied().max().unwrap_or(0);
        if max_deg > budget {
            return None;
        }
        let must_cover: Vec<bool> = deg.iter().map(|&d| d == budget).collect();
        for part in self.maximal_positive_matchings(residual, &must_cover) {
            if let Some(mut rest) = self.feasible(residual & !part, budget - 1) {
                rest.insert(0, part);
                return Some(rest);
            }
        }
        let entry = self.failed.entry(residual).or_insert(0);
        *entry = (*entry).max(budget);
        None
    }

    /// Maximal positive matchings of the residual covering every flagged vertex,
    /// in lexicographic order of their edge-index lists.
    fn maximal_positive_matchings(&self, residual: u64, must_cover: &[bool]) -> Vec<u64> {
        let idx: Vec<usize> = bits(residual).collect();
        let mut last_at = vec![usize::MAX; self.g.n()];
        for (pos, &i) in idx.iter().enumerate() {
            let (a, b) = self.ends[i];
            last_at[a] = pos;
            last_at[b] = pos;
        }
        let mut out = Vec::new();
        let mut st = EnumState {
            residual,
            idx: &idx,
            last_at: &last_at,
            must_cover,
            out: &mut out,
        };
        self.enumerate(&mut st, 0, 0, 0);
        out
    }

    fn enumerate(&self, st: &mut EnumState<'_>, pos: usize, chosen: u64, used: u64) {
        if pos == st.idx.len() {
            if self.is_maximal(st.residual, chosen, used) {
                st.out.push(chosen);
            }
            return;
        }
        let i = st.idx[pos];
        let (a, b) = self.ends[i];
        let touch = (1u64 << a) | (1u64 << b);
        if used & touch == 0 && self.is_positive(st.residual, chosen | 1 << i) {
            self.enumerate(st, pos + 1, chosen | 1 << i, used | touch);
        }
        // skipping edge i strands a required vertex whose last chance this was
        let strands = |x: usize| st.must_cover[x] && used >> x & 1 == 0 && st.last_at[x] == pos;
        if !strands(a) && !strands(b) {
            self.enumerate(st, pos + 1, chosen, used);
        }
    }

    fn is_maximal(&self, residual: u64, chosen: u64, used: u64) -> bool {
        bits(residual & !chosen).all(|i| {
            let (a, b) = self.ends[i];
            used & ((1u64 << a) | (1u64 << b)) != 0 || !self.is_positive(residual, chosen | 1 << i)
        })
    }
}

struct EnumState<'a> {
    residual: u64,
    idx: &'a [usize],
    last_at: &'a [usize],
    must_cover: &'a [bool],
    out: &'a mut Vec<u64>,
}

pub(crate) fn mask_of_len(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Constructive upper bound for forests, unicyclic and bicyclic graphs.
///
/// Forests are edge-coloured with Δ colours (every matching of a forest is
/// positive). Otherwise a first part takes one cycle edge plus bridges covering
/// the maximum-degree vertices, and the residual graph (one cycle fewer) is
/// handled recursively. Every produced part is re-checked for positivity and the
/// number of parts is returned together with the decomposition.
pub fn pmd_upper_bound(g: &Graph, limits: &Limits) -> Result<(usize, PmDecomposition), PmdError> {
    let shape = classify_shape(g, limits.shape_max_n)?;
    match shape.kind {
        ShapeKind::Forest | ShapeKind::Tree | ShapeKind::Unicyclic | ShapeKind::Bicyclic => {}
        other => return Err(PmdError::UnsupportedShape(other)),
    }
    let mut parts = Vec::new();
    let mut residual = g.clone();
    while !residual.is_forest() {
        let part = peel_cycle_part(&residual);
        residual = residual.without_edges(part.edges());
        parts.push(part);
    }
    parts.extend(forest_coloring(&residual));
    let pm = PmDecomposition::new(parts);
    check_pm_decomposition(g, &pm)?;
    Ok((pm.len(), pm))
}

/// Proper Δ-edge-colouring of a forest by rooted DFS; colour classes are the parts.
fn forest_coloring(f: &Graph) -> Vec<Matching> {
    let delta = f.max_degree();
    let adj = f.adjacency();
    let mut color_of: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut visited = vec![false; f.n() + 1];
    for root in 1..=f.n() {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        // (vertex, colour of the edge to its parent)
        let mut stack: Vec<(Vertex, Option<usize>)> = vec![(root, None)];
        while let Some((x, parent_color)) = stack.pop() {
            let mut next = 0;
            for &y in &adj[x] {
                if visited[y] {
                    continue;
                }
                if Some(next) == parent_color {
                    next += 1;
                }
                visited[y] = true;
                color_of.insert(Edge::new(x, y), next);
                stack.push((y, Some(next)));
                next += 1;
            }
        }
    }
    let mut parts = vec![Vec::new(); delta];
    for (e, c) in color_of {
        parts[c].push(e);
    }
    parts.into_iter().map(Matching::new).collect()
}

/// One cycle edge plus a set of bridges covering as many maximum-degree
/// vertices as possible; the cycle edge is chosen to maximise coverage.
fn peel_cycle_part(g: &Graph) -> Matching {
    let bridges: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| g.without_edges(&[*e]).components().1 > g.components().1)
        .collect();
    let cycle_edges: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !bridges.contains(e))
        .collect();
    let deg = g.degrees();
    let delta = g.max_degree();
    let target: Vec<bool> = deg.iter().map(|&d| d == delta && delta > 0).collect();
    let bridge_forest = Graph::new(g.n(), bridges.iter().map(|e| (e.u, e.v))).expect("subgraph");

    let mut best: Option<(usize, Matching)> = None;
    for e1 in &cycle_edges {
        let mut blocked = vec![false; g.n() + 1];
        blocked[e1.u] = true;
        blocked[e1.v] = true;
        let mut covered_target = target.clone();
        covered_target[e1.u] = false;
        covered_target[e1.v] = false;
        let chosen = cover_in_forest(&bridge_forest, &covered_target, &blocked);
        let mut edges = chosen;
        edges.push(*e1);
        let m = Matching::new(edges);
        let covered = m
            .vertices()
            .iter()
            .filter(|&&x| target[x])
            .count();
        if best.as_ref().is_none_or(|(c, _)| covered > *c) {
            best = Some((covered, m));
        }
    }
    best.expect("graph has a cycle").1
}

/// Tree DP: a matching of the forest avoiding `blocked` vertices that covers
/// the maximum number of `target` vertices.
fn cover_in_forest(f: &Graph, target: &[bool], blocked: &[bool]) -> Vec<Edge> {
    let adj = f.adjacency();
    let n = f.n();
    let mut parent = vec![0usize; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n + 1];
    for root in 1..=n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
    }
    // free[x]: best in subtree(x) with x not matched downward;
    // down[x]: best with x matched to a child, and which child
    let mut free = vec![0usize; n + 1];
    let mut down: Vec<Option<(usize, Vertex)>> = vec![None; n + 1];
    let best = |free: &[usize], down: &[Option<(usize, Vertex)>], x: usize| {
        free[x].max(down[x].map_or(0, |d| d.0))
    };
    for &x in order.iter().rev() {
        let children: Vec<Vertex> = adj[x].iter().copied().filter(|&y| parent[y] == x && y != x).collect();
        let children: Vec<Vertex> = children.into_iter().filter(|&y| parent[y] == x).collect();
        let base: usize = children.iter().map(|&c| best(&free, &down, c)).sum();
        free[x] = base;
        if blocked[x] {
            continue;
        }
        for &c in &children {
            if blocked[c] {
                continue;
            }
            let gain = base - best(&free, &down, c)
                + free[c]
                + usize::from(target[x])
                + usize::from(target[c]);
            if down[x].is_none_or(|d| gain > d.0) {
                down[x] = Some((gain, c));
            }
        }
    }
    // reconstruct top-down
    let mut chosen = Vec::new();
    let mut matched_down = vec![false; n + 1];
    let mut forced_free = vec![false; n + 1];
    for &x in &order {
        let is_root = parent[x] == 0;
        let use_down = !forced_free[x]
            && down[x].is_some_and(|d| d.0 > free[x])
            && (is_root || !matched_down[x]);
        if use_down {
            let (_, c) = down[x].expect("checked");
            chosen.push(Edge::new(x, c));
            matched_down[x] = true;
            forced_free[c] = true;
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, parse_graph};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn single_edge_and_forests() {
        let (p, w) = pmd_exact(&named_graph("P2").unwrap(), &limits()).unwrap();
        assert_eq!(p, 1);
        assert_eq!(w.len(), 1);
        for spec in ["P5", "K1,4", "P3"] {
            let g = named_graph(spec).unwrap();
            assert_eq!(pmd_exact(&g, &limits()).unwrap().0, g.max_degree(), "{spec}");
        }
    }

    #[test]
    fn four_cycle_needs_three_parts() {
        let c4 = named_graph("C4").unwrap();
        let (p, w) = pmd_exact(&c4, &limits()).unwrap();
        assert_eq!(p, 3);
        check_pm_decomposition(&c4, &w).unwrap();
        assert!(w.certificates.iter().all(Option::is_some));
    }

    #[test]
    fn edgeless_graph_has_pmd_zero() {
        assert_eq!(pmd_exact(&Graph::empty(3), &limits()).unwrap().0, 0);
        assert_eq!(pmd_lower_bound(&Graph::empty(3)), 0);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(pmd_lower_bound(&named_graph("K4").unwrap()), 3);
        let ex = parse_graph("4\n1 2\n1 3\n1 4\n2 3\n2 4").unwrap();
        assert_eq!(pmd_lower_bound(&ex), 3);
    }

    #[test]
    fn size_limit() {
        let g = named_graph("K7").unwrap();
        assert!(matches!(
            pmd_exact(&g, &limits()),
            Err(PmdError::SizeLimit { what: "edges", .. })
        ));
    }

    #[test]
    fn upper_bounds_follow_the_shape() {
        // unicyclic with Δ = 5: C4 with three pendant leaves on vertex 1
        let g = Graph::new(7, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (1, 6), (1, 7)]).unwrap();
        assert_eq!(pmd_upper_bound(&g, &limits()).unwrap().0, 5);
        // tree with Δ = 2
        assert_eq!(pmd_upper_bound(&named_graph("P6").unwrap(), &limits()).unwrap().0, 2);
        // bicyclic with Δ = 3: two triangles joined by an edge
        let b = Graph::new(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)]).unwrap();
        assert_eq!(pmd_upper_bound(&b, &limits()).unwrap().0, 4);
        assert!(matches!(
            pmd_upper_bound(&named_graph("K4").unwrap(), &limits()),
            Err(PmdError::UnsupportedShape(ShapeKind::Other))
        ));
    }

    #[test]
    fn rejects_broken_decompositions() {
        let c4 = named_graph("C4").unwrap();
        let pm = PmDecomposition::new(vec![
            Matching::from_pairs(&[(1, 2), (3, 4)]),
            Matching::from_pairs(&[(2, 3), (1, 4)]),
        ]);
        assert!(check_pm_decomposition(&c4, &pm).is_err());
        let pm = PmDecomposition::new(vec![Matching::from_pairs(&[(1, 2)])]);
        assert!(check_pm_decomposition(&c4, &pm).is_err());
    }
}
