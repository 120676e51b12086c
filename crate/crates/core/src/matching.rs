//! Matchings, positive matchings and their weight certificates.
//!
//! A matching `M` of `G` is *positive* when some vertex weighting is positive on
//! every edge of `M` and negative on every other edge. Two independent routes
//! decide this:
//!
//! - the combinatorial route: `M` is positive iff `G[V(M)]` has no closed walk
//!   alternating between `M`-edges and non-`M`-edges;
//! - the LP route: an exact-rational search for the weighting itself.
//!
//! The walk route drives the searches; the LP route produces certificates.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::lp::{self, Sense, StrictConstraint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edges {0} and {1} share a vertex")]
    NotAMatching(Edge, Edge),
    #[error("edge {0} is not an edge of the graph")]
    NotInGraph(Edge),
}

/// A set of edges, kept sorted. Disjointness is checked against a host graph
/// by [`Matching::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Matching {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    pub fn from_pairs(pairs: &[(Vertex, Vertex)]) -> Matching {
        Matching::new(pairs.iter().map(|&(a, b)| Edge::new(a, b)))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Vertices covered by the matching.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.edges.iter().flat_map(|e| [e.u, e.v]).collect();
        vs.sort_unstable();
        vs
    }

    /// First pair of edges sharing a vertex, if any.
    pub fn conflict(&self) -> Option<(Edge, Edge)> {
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                if a.shares_vertex(b) {
                    return Some((*a, *b));
                }
            }
        }
        None
    }

    pub fn validate(&self, g: &Graph) -> Result<(), MatchingError> {
        if let Some(e) = self.edges.iter().find(|e| g.edge_index(**e).is_none()) {
            return Err(MatchingError::NotInGraph(*e));
        }
        match self.conflict() {
            Some((a, b)) => Err(MatchingError::NotAMatching(a, b)),
            None => Ok(()),
        }
    }
}

/// Exact vertex weights `w(1), ..., w(n)` (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCertificate {
    pub weights: Vec<BigRational>,
}

impl WeightCertificate {
    pub fn weight(&self, x: Vertex) -> &BigRational {
        &self.weights[x - 1]
    }

    /// Direct evaluation of both strict inequality families.
    pub fn certifies(&self, g: &Graph, m: &Matching) -> bool {
        if self.weights.len() != g.n() {
            return false;
        }
        g.edges().iter().all(|e| {
            let s = self.weight(e.u) + self.weight(e.v);
            if m.contains(e) {
                s.is_positive()
            } else {
                s.is_negative()
            }
        })
    }
}

/// Does a closed walk alternate between `matched` and `others` edges inside the
/// subgraph induced by the matched vertices?
///
/// Vertices are `0..num_vertices`; `matched` must be pairwise disjoint. The walk
/// is found as a directed cycle among the oriented traversals of matched edges:
/// traversal `x→y` has an arc to traversal `z→mate(z)` whenever `{y, z}` is in
/// `others`.
pub fn alternating_cycle_exists(
    num_vertices: usize,
    matched: &[(usize, usize)],
    others: &[(usize, usize)],
) -> bool {
    const FREE: usize = usize::MAX;
    // start_of[v] = index of the traversal that starts at v
    let mut start_of = vec![FREE; num_vertices];
    let mut exit_of = Vec::with_capacity(2 * matched.len());
    for (k, &(a, b)) in matched.iter().enumerate() {
        debug_assert!(start_of[a] == FREE && start_of[b] == FREE, "not a matching");
        start_of[a] = 2 * k;
        start_of[b] = 2 * k + 1;
        exit_of.push(b); // traversal 2k: a→b
        exit_of.push(a); // traversal 2k+1: b→a
    }
    let nodes = exit_of.len();
    if nodes < 4 {
        // a directed cycle needs two distinct matched edges
        return false;
    }
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); num_vertices];
    for &(x, y) in others {
        if start_of[x] != FREE && start_of[y] != FREE {
            nbrs[x].push(y);
            nbrs[y].push(x);
        }
    }
    let succ = |node: usize| nbrs[exit_of[node]].iter().map(|&z| start_of[z]);
    // Kahn's algorithm: a cycle exists iff not every node can be peeled
    let mut indeg = vec![0usize; nodes];
    for v in 0..nodes {
        for w in succ(v) {
            indeg[w] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..nodes).filter(|&v| indeg[v] == 0).collect();
    let mut peeled = 0;
    while let Some(v) = queue.pop() {
        peeled += 1;
        for w in succ(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    peeled < nodes
}

fn split_edges(g: &Graph, m: &Matching) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut matched = Vec::with_capacity(m.len());
    let mut others = Vec::with_capacity(g.num_edges());
    for e in g.edges() {
        if m.contains(e) {
            matched.push((e.u - 1, e.v - 1));
        } else {
            others.push((e.u - 1, e.v - 1));
        }
    }
    (matched, others)
}

/// True iff `G[V(M)]` contains a closed walk alternating between edges of `M`
/// and edges outside `M`.
pub fn has_alternating_closed_walk(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    m.validate(g)?;
    let (matched, others) = split_edges(g, m);
    Ok(alternating_cycle_exists(g.n(), &matched, &others))
}

pub fn is_positive_matching(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    Ok(!has_alternating_closed_walk(g, m)?)
}

/// Unchecked positivity test used inside the searches (no validation).
pub(crate) fn is_positive_unchecked(n: usize, matched: &[(usize, usize)], others: &[(usize, usize)]) -> bool {
    !alternating_cycle_exists(n, matched, others)
}

/// The strict system whose solutions are weight certificates for `(g, m)`.
pub fn certificate_constraints(g: &Graph, m: &Matching) -> Vec<StrictConstraint> {
    g.edges()
        .iter()
        .map(|e| {
            let sense = if m.contains(e) {
                Sense::Positive
            } else {
                Sense::Negative
            };
            StrictConstraint::new(vec![(e.u - 1, 1), (e.v - 1, 1)], sense)
        })
        .collect()
}

/// Searches for an exact weight certificate by linear programming.
///
/// Returns `Some` iff `m` is a positive matching of `g`; the weights are
/// integers (as rationals) with no common factor.
pub fn find_weight_certificate(
    g: &Graph,
    m: &Matching,
) -> Result<Option<WeightCertificate>, MatchingError> {
    m.validate(g)?;
    let weights = lp::solve_strict(g.n(), &certificate_constraints(g, m));
    Ok(weights.map(|weights| {
        let cert = WeightCertificate { weights };
        debug_assert!(cert.certifies(g, m));
        cert
    }))
}
