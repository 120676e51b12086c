//! Cited verdicts for the complete-intersection family of properties of `L_G(d)`
//! and for the twisted ideal.
//!
//! Each property has a ladder of rules. A rule either fires (Yes or No, with a
//! citation) or stays silent; [`classify_all_rules`] returns every rule that
//! fires so that tests can check they never disagree, and the `classify_*`
//! functions return the first one (or Unknown).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{classify_shape, Edge, Graph, GraphShape, ShapeKind, Vertex};
use crate::limits::Limits;
use crate::pmd::{pmd_exact, pmd_upper_bound};
use crate::twisted::{tpmd_exact, TwistedError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Radical,
    CompleteIntersection,
    AlmostCompleteIntersection,
    Prime,
    TwistedRadicalCI,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Radical => "radical",
            Property::CompleteIntersection => "ci",
            Property::AlmostCompleteIntersection => "aci",
            Property::Prime => "prime",
            Property::TwistedRadicalCI => "twisted-ci",
        }
    }

    pub fn parse(s: &str) -> Option<Property> {
        Some(match s {
            "radical" => Property::Radical,
            "ci" => Property::CompleteIntersection,
            "aci" => Property::AlmostCompleteIntersection,
            "prime" => Property::Prime,
            "twisted-ci" => Property::TwistedRadicalCI,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Yes => "Yes",
            Status::No => "No",
            Status::Unknown => "Unknown",
        }
    }

    fn from_bool(b: bool) -> Status {
        if b {
            Status::Yes
        } else {
            Status::No
        }
    }
}

/// Structural data backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A vertex of degree above the threshold.
    HighDegreeVertex(Vertex),
    /// `e` with `Δ(G ∖ e) ≤ d`.
    DistinguishedEdge(Edge),
    ObstructionSet(Vec<Vertex>),
    /// Number of parts of the (twisted) decomposition that was used.
    Pmd(usize),
    PmdUpperBound(usize),
    Tpmd(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::HighDegreeVertex(v) => write!(f, "vertex {v}"),
            Witness::DistinguishedEdge(e) => write!(f, "edge {e}"),
            Witness::ObstructionSet(t) => write!(f, "T = {t:?}"),
            Witness::Pmd(p) => write!(f, "pmd = {p}"),
            Witness::PmdUpperBound(p) => write!(f, "pmd <= {p}"),
            Witness::Tpmd(p) => write!(f, "tpmd = {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub status: Status,
    pub citation: String,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(property: Property, status: Status, citation: &str, witness: Option<Witness>) -> Self {
        Verdict {
            property,
            status,
            citation: citation.into(),
            witness,
        }
    }

    fn unknown(property: Property, citation: &str) -> Self {
        Verdict::new(property, Status::Unknown, citation, None)
    }
}

pub mod cite {
    pub const NOT_CI_DEGREE: &str =
        "L_G(d) is not a complete intersection when d < max degree (a vertex of degree >= d+1 gives a prime of small height)";
    pub const FOREST_CI: &str = "forest: L_G(d) is a complete intersection iff d >= max degree";
    pub const FOREST_RADICAL: &str = "forest: L_G(d) is radical for all d";
    pub const FOREST_PRIME: &str = "forest: L_G(d) is prime iff d >= max degree + 1";
    pub const UNICYCLIC_CI: &str =
        "unicyclic, d >= 3: L_G(d) is a complete intersection iff d >= max degree";
    pub const BICYCLIC_CI: &str =
        "bicyclic, d >= 4: L_G(d) is a complete intersection iff d >= max degree";
    pub const UNICYCLIC_RADICAL: &str =
        "unicyclic: L_G(d) is a radical complete intersection for d >= max(3, max degree)";
    pub const BICYCLIC_RADICAL: &str =
        "bicyclic: L_G(d) is a radical complete intersection for d >= max(4, max degree)";
    pub const PMD_RADICAL_CI: &str = "L_G(d) is a radical complete intersection for d >= pmd(G)";
    pub const PMD_PRIME: &str = "L_G(d) is prime for d >= pmd(G) + 1";
    pub const EXCEPTION_C4: &str =
        "C4 with d = 2: not a complete intersection by the known computation for the 4-cycle";
    pub const EXCEPTION_K23: &str =
        "K_{2,3} with d = 3: mu(L_G(3)) > ht(L_G(3)) = 5, so not a complete intersection";
    pub const NOT_ACI_DEGREE: &str =
        "L_G(d) is not an almost complete intersection when d < max degree - 1";
    pub const CI_NOT_ACI: &str =
        "L_G(d) is a complete intersection, so it is not an almost complete intersection";
    pub const ACI_TREE: &str =
        "tree with max degree > d: L_G(d) is an almost complete intersection iff G is two trees of max degree <= d joined by an edge";
    pub const ACI_UNICYCLIC: &str =
        "connected C3-free unicyclic, d >= 3, max degree > d: almost complete intersection iff G is a tree or tree plus unicyclic graph of max degree <= d plus one edge";
    pub const ACI_BICYCLIC: &str =
        "connected C3-free bicyclic, d >= 4, max degree > d: almost complete intersection iff G is a unicyclic, two unicyclic, or tree plus bicyclic graph of max degree <= d plus one edge";
    pub const ACI_C3_QUESTION: &str =
        "unicyclic graph containing C3: open question whether L_G(d) is an almost complete intersection";
    pub const TWISTED_NOT_CI: &str =
        "twisted ideal is not a complete intersection when 2d < max degree";
    pub const TWISTED_TPMD: &str =
        "twisted ideal is a radical complete intersection for d >= tpmd(G)";
    pub const NO_RULE: &str = "no characterization applies";
}

/// Context shared by the rules: shape and (when within limits) pmd.
struct Facts {
    delta: usize,
    shape: Option<GraphShape>,
    pmd: Option<(usize, bool)>,
}

impl Facts {
    fn gather(g: &Graph, limits: &Limits, want_pmd: bool) -> Facts {
        let shape = classify_shape(g, limits.shape_max_n).ok();
        let pmd = if want_pmd {
            match pmd_exact(g, limits) {
                Ok((p, _)) => Some((p, true)),
                Err(_) => pmd_upper_bound(g, limits).ok().map(|(p, _)| (p, false)),
            }
        } else {
            None
        };
        Facts {
            delta: g.max_degree(),
            shape,
            pmd,
        }
    }

    fn kind(&self) -> Option<ShapeKind> {
        self.shape.map(|s| s.kind)
    }

    fn pmd_witness(&self) -> Option<(usize, Witness)> {
        self.pmd.map(|(p, exact)| {
            (
                p,
                if exact {
                    Witness::Pmd(p)
                } else {
                    Witness::PmdUpperBound(p)
                },
            )
        })
    }
}

fn max_degree_vertex(g: &Graph) -> Option<Vertex> {
    let delta = g.max_degree();
    g.vertices().find(|&v| g.degree(v) == delta && delta > 0)
}

/// Is the graph, ignoring isolated vertices, the 4-cycle?
fn is_c4_core(g: &Graph) -> bool {
    let (core, _) = g.induced_subgraph(&g.non_isolated()).expect("own vertices");
    core.n() == 4 && core.num_edges() == 4 && core.vertices().all(|v| core.degree(v) == 2) && core.is_connected()
}

fn is_k23_core(g: &Graph) -> bool {
    let (core, _) = g.induced_subgraph(&g.non_isolated()).expect("own vertices");
    matches!(core.complete_bipartite_parts(), Some((2, 3)) | Some((3, 2)))
}

fn ci_rules(g: &Graph, d: usize, facts: &Facts) -> Vec<Verdict> {
    let p = Property::CompleteIntersection;
    let mut out = Vec::new();
    let delta = facts.delta;
    if d < delta {
        out.push(Verdict::new(
            p,
            Status::No,
            cite::NOT_CI_DEGREE,
            max_degree_vertex(g).map(Witness::HighDegreeVertex),
        ));
    }
    match facts.kind() {
        Some(k) if k.is_acyclic() => {
            out.push(Verdict::new(p, Status::from_bool(d >= delta), cite::FOREST_CI, None));
        }
        Some(ShapeKind::Unicyclic) if d >= 3 => {
            out.push(Verdict::new(p, Status::from_bool(d >= delta), cite::UNICYCLIC_CI, None));
        }
        Some(ShapeKind::Bicyclic) if d >= 4 => {
            out.push(Verdict::new(p, Status::from_bool(d >= delta), cite::BICYCLIC_CI, None));
        }
        _ => {}
    }
    if let Some((pm, w)) = facts.pmd_witness() {
        if d >= pm {
            out.push(Verdict::new(p, Status::Yes, cite::PMD_RADICAL_CI, Some(w)));
        }
    }
    if d == 2 && is_c4_core(g) {
        out.push(Verdict::new(p, Status::No, cite::EXCEPTION_C4, None));
    }
    if d == 3 && is_k23_core(g) {
        out.push(Verdict::new(p, Status::No, cite::EXCEPTION_K23, None));
    }
    out
}

fn radical_rules(_g: &Graph, d: usize, facts: &Facts) -> Vec<Verdict> {
    let p = Property::Radical;
    let mut out = Vec::new();
    let delta = facts.delta;
    match facts.kind() {
        Some(k) if k.is_acyclic() => out.push(Verdict::new(p, Status::Yes, cite::FOREST_RADICAL, None)),
        Some(ShapeKind::Unicyclic) if d >= delta.max(3) => {
            out.push(Verdict::new(p, Status::Yes, cite::UNICYCLIC_RADICAL, None))
        }
        Some(ShapeKind::Bicyclic) if d >= delta.max(4) => {
            out.push(Verdict::new(p, Status::Yes, cite::BICYCLIC_RADICAL, None))
        }
        _ => {}
    }
    if let Some((pm, w)) = facts.pmd_witness() {
        if d >= pm {
            out.push(Verdict::new(p, Status::Yes, cite::PMD_RADICAL_CI, Some(w)));
        }
    }
    out
}

fn prime_rules(_g: &Graph, d: usize, facts: &Facts) -> Vec<Verdict> {
    let p = Property::Prime;
    let mut out = Vec::new();
    if facts.kind().is_some_and(ShapeKind::is_acyclic) {
        out.push(Verdict::new(
            p,
            Status::from_bool(d > facts.delta),
            cite::FOREST_PRIME,
            None,
        ));
    }
    if let Some((pm, w)) = facts.pmd_witness() {
        if d > pm {
            out.push(Verdict::new(p, Status::Yes, cite::PMD_PRIME, Some(w)));
        }
    }
    out
}

/// Degree-profile form of the ACI structural condition: at most two vertices of
/// degree `d + 1`, adjacent if there are two, none of degree `d + 2` or more.
/// Returns an edge `e` with `Δ(G ∖ e) ≤ d`.
pub fn aci_profile_edge(g: &Graph, d: usize) -> Option<Edge> {
    let high: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) > d).collect();
    if high.iter().any(|&v| g.degree(v) > d + 1) {
        return None;
    }
    match high.as_slice() {
        [] => None,
        [v] => {
            // any edge at v works; prefer one to another high vertex (none here)
            let u = g.adjacency()[*v][0];
            Some(Edge::new(*v, u))
        }
        [u, v] if g.has_edge(*u, *v) => Some(Edge::new(*u, *v)),
        _ => None,
    }
}

/// Direct check: the first edge whose removal leaves max degree `≤ d`, when `Δ(G) > d`.
pub fn aci_edge_removal_witness(g: &Graph, d: usize) -> Option<Edge> {
    if g.max_degree() <= d {
        return None;
    }
    g.edges()
        .iter()
        .copied()
        .find(|e| g.without_edges(&[*e]).max_degree() <= d)
}

fn aci_rules(g: &Graph, d: usize, facts: &Facts, ci: &[Verdict]) -> Vec<Verdict> {
    let p = Property::AlmostCompleteIntersection;
    let mut out = Vec::new();
    let delta = facts.delta;
    if d + 1 < delta {
        out.push(Verdict::new(
            p,
            Status::No,
            cite::NOT_ACI_DEGREE,
            max_degree_vertex(g).map(Witness::HighDegreeVertex),
        ));
    }
    if ci.first().is_some_and(|v| v.status == Status::Yes) {
        out.push(Verdict::new(p, Status::No, cite::CI_NOT_ACI, None));
    }
    if delta > d {
        let profile = |citation| {
            let e = aci_profile_edge(g, d);
            Verdict::new(
                p,
                Status::from_bool(e.is_some()),
                citation,
                e.map(Witness::DistinguishedEdge),
            )
        };
        if let Some(shape) = facts.shape {
            match shape.kind {
                ShapeKind::Tree => out.push(profile(cite::ACI_TREE)),
                ShapeKind::Unicyclic if shape.connected && shape.c3_free && d >= 3 => {
                    out.push(profile(cite::ACI_UNICYCLIC))
                }
                ShapeKind::Bicyclic if shape.connected && shape.c3_free && d >= 4 => {
                    out.push(profile(cite::ACI_BICYCLIC))
                }
                _ => {}
            }
        }
    }
    out
}

fn twisted_rules(g: &Graph, d: usize, limits: &Limits) -> Result<Vec<Verdict>, TwistedError> {
    let p = Property::TwistedRadicalCI;
    let mut out = Vec::new();
    if 2 * d < g.max_degree() {
        out.push(Verdict::new(
            p,
            Status::No,
            cite::TWISTED_NOT_CI,
            max_degree_vertex(g).map(Witness::HighDegreeVertex),
        ));
        return Ok(out);
    }
    let (t, _) = tpmd_exact(g, limits)?;
    if d >= t {
        out.push(Verdict::new(p, Status::Yes, cite::TWISTED_TPMD, Some(Witness::Tpmd(t))));
    }
    Ok(out)
}

/// Every rule of the property's ladder that fires, in ladder order.
pub fn classify_all_rules(
    g: &Graph,
    d: usize,
    property: Property,
    limits: &Limits,
) -> Result<Vec<Verdict>, TwistedError> {
    let needs_pmd = property != Property::TwistedRadicalCI;
    let facts = Facts::gather(g, limits, needs_pmd);
    Ok(match property {
        Property::CompleteIntersection => ci_rules(g, d, &facts),
        Property::Radical => radical_rules(g, d, &facts),
        Property::Prime => prime_rules(g, d, &facts),
        Property::AlmostCompleteIntersection => {
            let ci = ci_rules(g, d, &facts);
            aci_rules(g, d, &facts, &ci)
        }
        Property::TwistedRadicalCI => twisted_rules(g, d, limits)?,
    })
}

fn first_or_unknown(property: Property, rules: Vec<Verdict>, fallback: &str) -> Verdict {
    rules
        .into_iter()
        .next()
        .unwrap_or_else(|| Verdict::unknown(property, fallback))
}

pub fn classify_ci(g: &Graph, d: usize, limits: &Limits) -> Verdict {
    let facts = Facts::gather(g, limits, true);
    first_or_unknown(Property::CompleteIntersection, ci_rules(g, d, &facts), cite::NO_RULE)
}

pub fn classify_radical(g: &Graph, d: usize, limits: &Limits) -> Verdict {
    let facts = Facts::gather(g, limits, true);
    first_or_unknown(Property::Radical, radical_rules(g, d, &facts), cite::NO_RULE)
}

pub fn classify_prime(g: &Graph, d: usize, limits: &Limits) -> Verdict {
    let facts = Facts::gather(g, limits, true);
    first_or_unknown(Property::Prime, prime_rules(g, d, &facts), cite::NO_RULE)
}

pub fn classify_aci(g: &Graph, d: usize, limits: &Limits) -> Verdict {
    let facts = Facts::gather(g, limits, true);
    let ci = ci_rules(g, d, &facts);
    let rules = aci_rules(g, d, &facts, &ci);
    let fallback = match facts.shape {
        Some(s) if s.kind == ShapeKind::Unicyclic && !s.c3_free => cite::ACI_C3_QUESTION,
        _ => cite::NO_RULE,
    };
    first_or_unknown(Property::AlmostCompleteIntersection, rules, fallback)
}

pub fn classify_twisted_radical_ci(g: &Graph, d: usize, limits: &Limits) -> Result<Verdict, TwistedError> {
    Ok(first_or_unknown(
        Property::TwistedRadicalCI,
        twisted_rules(g, d, limits)?,
        cite::NO_RULE,
    ))
}

pub fn classify(g: &Graph, d: usize, property: Property, limits: &Limits) -> Result<Verdict, TwistedError> {
    Ok(match property {
        Property::CompleteIntersection => classify_ci(g, d, limits),
        Property::Radical => classify_radical(g, d, limits),
        Property::Prime => classify_prime(g, d, limits),
        Property::AlmostCompleteIntersection => classify_aci(g, d, limits),
        Property::TwistedRadicalCI => classify_twisted_radical_ci(g, d, limits)?,
    })
}

/// Grows `seed` by the lowest-numbered vertex of degree `≥ d` in `G ∖ T` until
/// none is left; the result satisfies `Δ(G ∖ T) ≤ d − 1`.
pub fn build_obstruction_set(g: &Graph, d: usize, seed: &[Vertex]) -> Vec<Vertex> {
    let mut in_t = vec![false; g.n() + 1];
    for &v in seed {
        in_t[v] = true;
    }
    loop {
        let rest: Vec<Vertex> = g.vertices().filter(|&v| !in_t[v]).collect();
        let h = g.delete_vertices(&g.vertices().filter(|&v| in_t[v]).collect::<Vec<_>>());
        match rest.into_iter().find(|&v| h.degree(v) >= d) {
            Some(u) => in_t[u] = true,
            None => break,
        }
    }
    g.vertices().filter(|&v| in_t[v]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("neither the complete intersection nor the almost complete intersection verdict is Yes")]
pub struct NotClassified;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCount {
    pub mu: usize,
    pub height: usize,
    pub citation: String,
}

/// `μ(L_G(d)) = |E|`; the height follows from a Yes verdict (CI: `|E|`, ACI: `|E| − 1`).
pub fn generator_count_and_heights(g: &Graph, d: usize, limits: &Limits) -> Result<GeneratorCount, NotClassified> {
    let mu = g.num_edges();
    let ci = classify_ci(g, d, limits);
    if ci.status == Status::Yes {
        return Ok(GeneratorCount {
            mu,
            height: mu,
            citation: ci.citation,
        });
    }
    let aci = classify_aci(g, d, limits);
    if aci.status == Status::Yes {
        return Ok(GeneratorCount {
            mu,
            height: mu - 1,
            citation: aci.citation,
        });
    }
    Err(NotClassified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, parse_graph};

    fn lim() -> Limits {
        Limits::default()
    }

    fn g(spec: &str) -> Graph {
        named_graph(spec).unwrap()
    }

    #[test]
    fn ci_examples() {
        assert_eq!(classify_ci(&g("K1,3"), 3, &lim()).status, Status::Yes);
        assert_eq!(classify_ci(&g("C4"), 2, &lim()).status, Status::No);
        assert_eq!(classify_ci(&g("C4"), 2, &lim()).citation, cite::EXCEPTION_C4);
        assert_eq!(classify_ci(&g("C4"), 3, &lim()).status, Status::Yes);
        assert_eq!(classify_ci(&g("K2,3"), 3, &lim()).status, Status::No);
        assert_eq!(classify_ci(&g("K5"), 2, &lim()).status, Status::No);
    }

    #[test]
    fn aci_examples() {
        // double star, centres 1 and 2 of degree 3, d = 2
        let ds = Graph::new(6, [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let v = classify_aci(&ds, 2, &lim());
        assert_eq!(v.status, Status::Yes);
        assert_eq!(v.witness, Some(Witness::DistinguishedEdge(Edge::new(1, 2))));
        assert_eq!(classify_aci(&g("K1,4"), 2, &lim()).status, Status::No);
        // two non-adjacent degree-3 vertices
        let t = parse_graph("7\n1 2\n1 3\n1 4\n4 5\n5 6\n5 7").unwrap();
        assert_eq!(classify_aci(&t, 2, &lim()).status, Status::No);
    }

    #[test]
    fn radical_prime_twisted_examples() {
        assert_eq!(classify_radical(&g("P4"), 1, &lim()).status, Status::Yes);
        let uni = parse_graph("6\n1 2\n2 3\n3 4\n1 4\n1 5\n1 6").unwrap();
        assert_eq!(classify_radical(&uni, 4, &lim()).status, Status::Yes);
        assert_eq!(classify_radical(&g("K5"), 2, &lim()).status, Status::Unknown);
        assert_eq!(classify_prime(&g("P3"), 3, &lim()).status, Status::Yes);
        assert_eq!(classify_prime(&g("P3"), 2, &lim()).status, Status::No);
        assert_eq!(classify_prime(&g("C4"), 4, &lim()).status, Status::Yes);
        let ex = parse_graph("4\n1 2\n1 3\n1 4\n2 3\n2 4").unwrap();
        assert_eq!(classify_twisted_radical_ci(&ex, 2, &lim()).unwrap().status, Status::Yes);
        assert_eq!(classify_twisted_radical_ci(&g("K1,5"), 2, &lim()).unwrap().status, Status::No);
        assert_eq!(classify_twisted_radical_ci(&g("P3"), 2, &lim()).unwrap().status, Status::Yes);
    }

    #[test]
    fn obstruction_sets() {
        let t = parse_graph("7\n1 2\n1 3\n1 4\n4 5\n5 6\n5 7").unwrap();
        let set = build_obstruction_set(&t, 2, &[1, 5]);
        let rest = t.delete_vertices(&set);
        assert!(rest.max_degree() <= 1);
        assert!(build_obstruction_set(&g("P3"), 3, &[]).is_empty());
        let k4 = build_obstruction_set(&g("K4"), 2, &[1]);
        assert_eq!(k4, vec![1, 2]);
        assert_eq!(g("K4").delete_vertices(&k4).max_degree(), 1);
    }

    #[test]
    fn generator_counts() {
        let r = generator_count_and_heights(&g("P5"), 2, &lim()).unwrap();
        assert_eq!((r.mu, r.height), (4, 4));
        let ds = Graph::new(6, [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let r = generator_count_and_heights(&ds, 2, &lim()).unwrap();
        assert_eq!((r.mu, r.height), (5, 4));
        assert_eq!(generator_count_and_heights(&g("K2,3"), 3, &lim()), Err(NotClassified));
    }
}
