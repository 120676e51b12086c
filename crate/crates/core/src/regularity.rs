//! Regularity of powers of `L_G(d)` and Koszulness of `S/L_G(d)`.
//!
//! Graph-level values are regularities of the quotient `S/L_G(d)^s`;
//! [`reg_power_ci_generic`] is the regularity of the ideal power of a complete
//! intersection.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::classify::aci_profile_edge;
use crate::graph::{classify_shape, Edge, Graph, ShapeKind};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("L_G(d) is not a recognised almost complete intersection")]
    NotACI,
    #[error("graph with {actual} vertices exceeds the induced-subgraph limit of {limit}")]
    SizeLimit { actual: usize, limit: usize },
    #[error("graph is not in a family with a Koszul criterion")]
    UnknownFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Numeric(i64),
    /// An expression in `reg(S/L_G(d))`, which is not computed in-process.
    Symbolic(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub s: usize,
    pub value: Option<i64>,
    pub lower: i64,
    pub upper: Option<UpperBound>,
    pub citation: String,
    pub notes: Vec<String>,
}

pub mod cite {
    pub const CI_GENERIC: &str =
        "complete intersection of n forms of degree d: reg(I^s) = ds + (d-1)(n-1)";
    pub const CI_TREE: &str = "tree with max degree <= d, d >= 3: reg(S/L_G(d)^s) = 2s + n - 3";
    pub const CI_UNICYCLIC: &str =
        "connected unicyclic with max degree <= d, d >= 3: reg(S/L_G(d)^s) = 2s + n - 2";
    pub const LOWER: &str =
        "induced subgraphs: reg(S/L_G(d)^s) >= 2(s-1) + max(t(G), u(G))";
    pub const ACI_TREE: &str =
        "almost complete intersection tree: 2s + n - 4 <= reg(S/L_G(d)^s) <= 2(s-1) + reg(S/L_G(d))";
    pub const ACI_FORMS: &str =
        "one edge added to a complete intersection graph: 2s + n - 3 <= reg(S/L_G(d)^s) <= 2(s-1) + max(reg(S/L_G(d)), n-1)";
}

/// `reg(I^s) = d·s + (d − 1)(n − 1)` for a complete intersection `I` of `n`
/// forms of degree `d` (ideal, not quotient).
pub fn reg_power_ci_generic(num_gens: usize, gen_degree: usize, s: usize) -> i64 {
    let (n, d, s) = (num_gens as i64, gen_degree as i64, s as i64);
    d * s + (d - 1) * (n - 1)
}

/// Exact regularity for trees and connected unicyclic graphs with `Δ ≤ d`, `d ≥ 3`.
pub fn reg_power_ci_graph(g: &Graph, d: usize, s: usize, limits: &Limits) -> Result<RegularityReport, RegError> {
    if s == 0 {
        return Err(RegError::NotApplicable("s must be at least 1".into()));
    }
    if d < 3 {
        return Err(RegError::NotApplicable(format!("needs d >= 3, got d = {d}")));
    }
    if g.max_degree() > d {
        return Err(RegError::NotApplicable(format!(
            "needs max degree <= d, got {} > {d}",
            g.max_degree()
        )));
    }
    let not_family = || RegError::NotApplicable("needs a tree or a connected unicyclic graph".into());
    if g.cyclomatic_number() > 1 {
        return Err(not_family());
    }
    let shape = classify_shape(g, limits.shape_max_n).map_err(|_| RegError::SizeLimit {
        actual: g.n(),
        limit: limits.shape_max_n,
    })?;
    let n = g.n() as i64;
    let s_i = s as i64;
    let (value, citation) = match shape.kind {
        ShapeKind::Tree => (2 * s_i + n - 3, cite::CI_TREE),
        ShapeKind::Unicyclic if shape.connected => (2 * s_i + n - 2, cite::CI_UNICYCLIC),
        _ => return Err(not_family()),
    };
    Ok(RegularityReport {
        s,
        value: Some(value),
        lower: value,
        upper: Some(UpperBound::Numeric(value)),
        citation: citation.into(),
        notes: Vec::new(),
    })
}

/// `𝔱(G)` and `𝔲(G)` from one pass over all vertex subsets. `𝔲` is `None`
/// when no induced unicyclic subgraph with `Δ ≤ d` exists.
pub fn induced_invariants(g: &Graph, d: usize, limits: &Limits) -> Result<(usize, Option<usize>), RegError> {
    if d < 3 {
        return Err(RegError::NotApplicable(format!(
            "t(G) and u(G) are defined for d >= 3, got d = {d}"
        )));
    }
    let n = g.n();
    if n > limits.induced_max_n.min(30) {
        return Err(RegError::SizeLimit {
            actual: n,
            limit: limits.induced_max_n.min(30),
        });
    }
    let mut adj = alloc::vec![0u32; n];
    for e in g.edges() {
        adj[e.u - 1] |= 1 << (e.v - 1);
        adj[e.v - 1] |= 1 << (e.u - 1);
    }
    let mut t = 0usize;
    let mut u: Option<usize> = None;
    for mask in 0u32..(1u32 << n) {
        let mut edges2 = 0usize;
        let mut ok = true;
        for v in 0..n {
            if mask >> v & 1 == 1 {
                let deg = (adj[v] & mask).count_ones() as usize;
                if deg > d {
                    ok = false;
                    break;
                }
                edges2 += deg;
            }
        }
        if !ok {
            continue;
        }
        let edges = edges2 / 2;
        let verts = mask.count_ones() as usize;
        let comps = components_in(&adj, mask);
        // cyclomatic number: 0 forest, 1 exactly one cycle
        match (edges + comps).checked_sub(verts) {
            Some(0) => t = t.max(edges),
            Some(1) => u = Some(u.map_or(edges, |x| x.max(edges))),
            _ => {}
        }
    }
    Ok((t, u))
}

fn components_in(adj: &[u32], mask: u32) -> usize {
    let mut left = mask;
    let mut count = 0;
    while left != 0 {
        count += 1;
        let mut frontier = left & left.wrapping_neg();
        let mut seen = frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & mask & !seen;
            seen |= new;
            frontier |= new;
        }
        left &= !seen;
    }
    count
}

pub fn t_invariant(g: &Graph, d: usize, limits: &Limits) -> Result<usize, RegError> {
    Ok(induced_invariants(g, d, limits)?.0)
}

/// `𝔲(G)`, taken as 0 when no qualifying subgraph exists.
pub fn u_invariant(g: &Graph, d: usize, limits: &Limits) -> Result<usize, RegError> {
    Ok(induced_invariants(g, d, limits)?.1.unwrap_or(0))
}

pub fn reg_lower_bound(g: &Graph, d: usize, s: usize, limits: &Limits) -> Result<i64, RegError> {
    Ok(lower_bound_report(g, d, s, limits)?.lower)
}

/// The induced-subgraph lower bound as a report, flagging a missing `𝔲`.
pub fn lower_bound_report(g: &Graph, d: usize, s: usize, limits: &Limits) -> Result<RegularityReport, RegError> {
    if s == 0 {
        return Err(RegError::NotApplicable("s must be at least 1".into()));
    }
    let (t, u) = induced_invariants(g, d, limits)?;
    let mut notes = Vec::new();
    notes.push(format!("t(G) = {t}"));
    match u {
        Some(u) => notes.push(format!("u(G) = {u}")),
        None => notes.push("u(G) = 0 (no induced unicyclic subgraph with max degree <= d)".into()),
    }
    let lower = 2 * (s as i64 - 1) + t.max(u.unwrap_or(0)) as i64;
    Ok(RegularityReport {
        s,
        value: None,
        lower,
        upper: None,
        citation: cite::LOWER.into(),
        notes,
    })
}

/// Which of the five one-edge-extension forms `G` has, by removing `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionForm {
    /// 1: tree; 2: tree + unicyclic; 3: unicyclic; 4: two unicyclic; 5: tree + bicyclic.
    pub form: u8,
    pub edge: Edge,
}

impl ExtensionForm {
    pub fn min_d(self) -> usize {
        if self.form <= 2 {
            3
        } else {
            4
        }
    }
}

/// All edges `e` of a connected `G` with `Δ(G ∖ e) ≤ d` whose removal leaves one
/// of the five structures, in edge order.
pub fn extension_forms(g: &Graph, d: usize, limits: &Limits) -> Vec<ExtensionForm> {
    if !g.is_connected() || g.num_edges() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &e in g.edges() {
        let h = g.without_edges(&[e]);
        if h.max_degree() > d {
            continue;
        }
        let (labels, count) = h.components();
        let mut kinds: Vec<u8> = Vec::with_capacity(count);
        for c in 0..count {
            let verts: Vec<usize> = h.vertices().filter(|&v| labels[v] == c).collect();
            let (comp, _) = h.induced_subgraph(&verts).expect("own vertices");
            let cycles = if comp.cyclomatic_number() > 2 {
                usize::MAX
            } else {
                match classify_shape(&comp, limits.shape_max_n) {
                    Ok(shape) => shape.cycle_count,
                    Err(_) => usize::MAX,
                }
            };
            kinds.push(match cycles {
                0 => 0,
                1 => 1,
                2 => 2,
                _ => 9,
            });
        }
        kinds.sort_unstable();
        let form = match kinds.as_slice() {
            [0] => 1,
            [0, 1] => 2,
            [1] => 3,
            [1, 1] => 4,
            [0, 2] => 5,
            _ => continue,
        };
        out.push(ExtensionForm { form, edge: e });
    }
    out
}

/// Bounds for almost complete intersections: ACI trees, then the five
/// one-edge-extension forms. `reg_base` is a known value of `reg(S/L_G(d))`.
pub fn reg_power_aci_bounds(
    g: &Graph,
    d: usize,
    s: usize,
    reg_base: Option<i64>,
    limits: &Limits,
) -> Result<RegularityReport, RegError> {
    if s == 0 {
        return Err(RegError::NotApplicable("s must be at least 1".into()));
    }
    let n = g.n() as i64;
    let s_i = s as i64;
    let shape = classify_shape(g, limits.shape_max_n).map_err(|_| RegError::SizeLimit {
        actual: g.n(),
        limit: limits.shape_max_n,
    })?;
    let mut notes = Vec::new();
    let (lower, upper, citation) = if shape.kind == ShapeKind::Tree
        && g.max_degree() > d
        && aci_profile_edge(g, d).is_some()
    {
        let e = aci_profile_edge(g, d).expect("checked");
        notes.push(format!("distinguished edge {e}"));
        let upper = match reg_base {
            Some(r) => UpperBound::Numeric(2 * (s_i - 1) + r),
            None => UpperBound::Symbolic(format!("2*{} + reg(S/L_G({d}))", s - 1)),
        };
        (2 * s_i + n - 4, upper, cite::ACI_TREE)
    } else {
        let forms = extension_forms(g, d, limits);
        let Some(form) = forms.iter().find(|f| d >= f.min_d()) else {
            return match forms.first() {
                Some(f) => Err(RegError::NotApplicable(format!(
                    "form ({}) via edge {} needs d >= {}, got d = {d}",
                    f.form,
                    f.edge,
                    f.min_d()
                ))),
                None => Err(RegError::NotACI),
            };
        };
        notes.push(format!("form ({}) via edge {}", form.form, form.edge));
        let upper = match reg_base {
            Some(r) => UpperBound::Numeric(2 * (s_i - 1) + r.max(n - 1)),
            None => UpperBound::Symbolic(format!("2*{} + max(reg(S/L_G({d})), {})", s - 1, n - 1)),
        };
        (2 * s_i + n - 3, upper, cite::ACI_FORMS)
    };
    let value = match upper {
        UpperBound::Numeric(u) if u == lower => Some(u),
        _ => None,
    };
    Ok(RegularityReport {
        s,
        value,
        lower,
        upper: Some(upper),
        citation: citation.into(),
        notes,
    })
}

/// `S/L_G(d)` is Koszul iff `r ≤ nd` or `4r ≥ n²d² + 2nd`, with `r = |E|`.
/// Edgeless graphs count as Koszul.
pub fn koszul_classify(g: &Graph, d: usize) -> bool {
    koszul_numbers(g.n(), g.num_edges(), d)
}

pub fn koszul_numbers(n: usize, r: usize, d: usize) -> bool {
    if r == 0 {
        return true;
    }
    let (n, r, d) = (n as u128, r as u128, d as u128);
    r <= n * d || 4 * r >= n * n * d * d + 2 * n * d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulFamily {
    pub family: &'static str,
    pub clause: &'static str,
    /// `Some(true)` when the family clause asserts Koszulness, `Some(false)`
    /// when it is an iff that fails, `None` when the clause is silent.
    pub clause_says: Option<bool>,
    pub koszul: bool,
}

/// The family clause that applies to `g` together with the exact criterion.
pub fn koszul_family(g: &Graph, d: usize, limits: &Limits) -> Result<KoszulFamily, RegError> {
    let koszul = koszul_classify(g, d);
    let n = g.n();
    // only graphs with cyclomatic number at most 2 can be tree, unicyclic or bicyclic
    let kind = if g.cyclomatic_number() <= 2 {
        classify_shape(g, limits.shape_max_n).ok().map(|s| s.kind)
    } else {
        None
    };
    let fam = |family, clause, clause_says| {
        Ok(KoszulFamily {
            family,
            clause,
            clause_says,
            koszul,
        })
    };
    if g.num_edges() == 0 {
        return fam("edgeless", "no generators: the quotient is a polynomial ring", Some(true));
    }
    match kind {
        Some(ShapeKind::Tree) => return fam("tree", "trees are Koszul for all d", Some(true)),
        Some(ShapeKind::Unicyclic) => {
            return fam("unicyclic", "unicyclic graphs are Koszul for all d", Some(true))
        }
        Some(ShapeKind::Bicyclic) => {
            return fam(
                "bicyclic",
                "bicyclic graphs are Koszul for all d >= 2",
                if d >= 2 { Some(true) } else { None },
            )
        }
        _ => {}
    }
    if g.is_complete() && n >= 3 {
        if n == 3 {
            return fam("complete", "K_3 is Koszul for all d", Some(true));
        }
        return fam(
            "complete",
            "K_n, n >= 4: Koszul iff d = 1 or d >= (n-1)/2",
            Some(d == 1 || 2 * d + 1 >= n),
        );
    }
    if let Some((a, b)) = g.complete_bipartite_parts() {
        if a.abs_diff(b) <= 1 && a + b == n {
            return if n % 2 == 0 {
                fam(
                    "complete bipartite (even)",
                    "balanced complete bipartite, n even: Koszul for d >= n/4",
                    if 4 * d >= n { Some(true) } else { None },
                )
            } else {
                fam(
                    "complete bipartite (odd)",
                    "near-balanced complete bipartite, n odd: Koszul for d >= (n-1)/2",
                    if 2 * d + 1 >= n { Some(true) } else { None },
                )
            };
        }
    }
    Err(RegError::UnknownFamily)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn generic_ci_formula() {
        assert_eq!(reg_power_ci_generic(4, 2, 3), 9);
        assert_eq!(reg_power_ci_generic(1, 2, 1), 2);
        assert_eq!(reg_power_ci_generic(5, 2, 1), 6);
    }

    #[test]
    fn ci_graph_values() {
        let p5 = named_graph("P5").unwrap();
        assert_eq!(reg_power_ci_graph(&p5, 3, 2, &lim()).unwrap().value, Some(6));
        let c4 = named_graph("C4").unwrap();
        assert_eq!(reg_power_ci_graph(&c4, 3, 1, &lim()).unwrap().value, Some(4));
        let p2 = named_graph("P2").unwrap();
        assert_eq!(reg_power_ci_graph(&p2, 3, 1, &lim()).unwrap().value, Some(1));
        assert!(matches!(
            reg_power_ci_graph(&p5, 2, 1, &lim()),
            Err(RegError::NotApplicable(_))
        ));
    }

    #[test]
    fn induced_invariants_examples() {
        let c4 = named_graph("C4").unwrap();
        assert_eq!(u_invariant(&c4, 3, &lim()).unwrap(), 4);
        assert_eq!(reg_lower_bound(&c4, 3, 2, &lim()).unwrap(), 6);
        let p6 = named_graph("P6").unwrap();
        assert_eq!(t_invariant(&p6, 3, &lim()).unwrap(), 5);
        assert_eq!(u_invariant(&p6, 3, &lim()).unwrap(), 0);
        assert!(matches!(t_invariant(&p6, 2, &lim()), Err(RegError::NotApplicable(_))));
    }

    #[test]
    fn aci_tree_bounds() {
        // centres 1, 2 of degree 3, d = 2, n = 6
        let ds = Graph::new(6, [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let r = reg_power_aci_bounds(&ds, 2, 3, None, &lim()).unwrap();
        assert_eq!(r.lower, 8);
        assert_eq!(r.upper, Some(UpperBound::Symbolic("2*2 + reg(S/L_G(2))".into())));
    }

    #[test]
    fn form_one_collapses() {
        // C5: removing any edge leaves a spanning path; n = 5, d = 3
        let c5 = named_graph("C5").unwrap();
        let r = reg_power_aci_bounds(&c5, 3, 1, Some(4), &lim()).unwrap();
        assert_eq!((r.lower, r.value), (4, Some(4)));
        let r = reg_power_aci_bounds(&c5, 3, 1, Some(7), &lim()).unwrap();
        assert_eq!(r.upper, Some(UpperBound::Numeric(7)));
        assert!(matches!(
            reg_power_aci_bounds(&named_graph("K4").unwrap(), 3, 1, None, &lim()),
            Err(RegError::NotACI)
        ));
    }

    #[test]
    fn koszul_examples() {
        assert!(koszul_classify(&named_graph("K4").unwrap(), 1));
        assert!(!koszul_classify(&named_graph("K6").unwrap(), 2));
        assert!(koszul_classify(&Graph::empty(3), 1));
        let f = koszul_family(&named_graph("K3,3").unwrap(), 2, &lim()).unwrap();
        assert_eq!(f.clause_says, Some(true));
        assert!(f.koszul);
        let b = Graph::new(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)]).unwrap();
        let f = koszul_family(&b, 2, &lim()).unwrap();
        assert_eq!((f.family, f.koszul), ("bicyclic", true));
        assert!(koszul_family(&named_graph("K3").unwrap(), 5, &lim()).unwrap().koszul);
    }
}
