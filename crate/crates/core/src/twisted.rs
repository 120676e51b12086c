//! Twisted matching decompositions, the stage graphs `H_q`, twisted positive
//! mappings and the exact `tpmd` search.
//!
//! Doubled-vertex layout: vertex `i` of layer `2q−1` ("odd") is index `i − 1`,
//! vertex `i` of layer `2q` ("even") is index `n + i − 1`.
//!
//! For a stage `(A, B) = (M_{2q−1}, M_{2q})` over the residual edge set `R`
//! (edges not used by earlier stages), every `{i, j} ∈ R` with `i < j` has two
//! orientations `(i_o, j_e)` and `(j_o, i_e)`. The stage selects `(i_o, j_e)`
//! for edges of `A` and `(j_o, i_e)` for edges of `B`; the twisted positive
//! mapping asks for weights positive on selected orientations and negative on
//! all others. That is exactly a positive matching of the doubled graph `D(R)`
//! on all orientations, which gives the combinatorial fast path.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::limits::Limits;
use crate::lp::{self, Sense, StrictConstraint};
use crate::matching::{is_positive_unchecked, Matching};
use crate::pmd::{self, bits, mask_of_len, PmDecomposition, PmdError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistedError {
    #[error("stage {q} is out of range 1..={p}")]
    StageOutOfRange { q: usize, p: usize },
    #[error("part {0} of the pm-decomposition has no weight certificate")]
    MissingCertificate(usize),
    #[error("invalid twisted decomposition: {0}")]
    Invalid(TwistedViolation),
    #[error(transparent)]
    Pmd(#[from] PmdError),
}

/// The first broken invariant found by [`check_twisted_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistedViolation {
    NotInGraph { q: usize, edge: Edge },
    NotAMatching { q: usize, odd: bool, a: Edge, b: Edge },
    Repeated(Edge),
    Uncovered(Edge),
    Compatibility { q: usize, odd_edge: Edge, even_edge: Edge },
}

impl fmt::Display for TwistedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layer = |q: usize, odd: bool| if odd { 2 * q - 1 } else { 2 * q };
        match self {
            TwistedViolation::NotInGraph { q, edge } => {
                write!(f, "stage {q}: edge {edge} is not an edge of the graph")
            }
            TwistedViolation::NotAMatching { q, odd, a, b } => {
                write!(f, "M_{}: edges {a} and {b} share a vertex", layer(*q, *odd))
            }
            TwistedViolation::Repeated(e) => write!(f, "edge {e} is used twice"),
            TwistedViolation::Uncovered(e) => write!(f, "edge {e} is not covered"),
            TwistedViolation::Compatibility {
                q,
                odd_edge,
                even_edge,
            } => write!(
                f,
                "M_{} contains {odd_edge} but M_{} contains {even_edge}",
                2 * q - 1,
                2 * q
            ),
        }
    }
}

/// Weights on `V(H_q)`: `odd[i−1] = w(i_{2q−1})`, `even[i−1] = w(i_{2q})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedWeightCertificate {
    pub odd: Vec<BigRational>,
    pub even: Vec<BigRational>,
}

impl TwistedWeightCertificate {
    pub fn from_integers(odd: &[i64], even: &[i64]) -> Self {
        let conv = |xs: &[i64]| xs.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        TwistedWeightCertificate {
            odd: conv(odd),
            even: conv(even),
        }
    }

    fn flat(&self) -> Vec<BigRational> {
        self.odd.iter().chain(&self.even).cloned().collect()
    }

    /// Direct evaluation of every strict inequality of stage `q`.
    pub fn certifies(&self, g: &Graph, td: &TwistedDecomposition, q: usize) -> Result<bool, TwistedError> {
        let system = stage_constraints(g, td, q)?;
        if self.odd.len() != g.n() || self.even.len() != g.n() {
            return Ok(false);
        }
        let w = self.flat();
        Ok(system.iter().all(|c| c.holds(&w)))
    }
}

/// One stage pair `(M_{2q−1}, M_{2q})`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stage {
    pub odd: Matching,
    pub even: Matching,
}

impl Stage {
    pub fn new(odd: Matching, even: Matching) -> Self {
        Stage { odd, even }
    }

    /// Flagged in reports: the definitions allow an empty odd part next to a
    /// nonempty even part.
    pub fn odd_empty_even_nonempty(&self) -> bool {
        self.odd.is_empty() && !self.even.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedDecomposition {
    pub host: Graph,
    pub stages: Vec<Stage>,
    /// Per-stage certificates, when known.
    pub certificates: Vec<Option<TwistedWeightCertificate>>,
}

impl TwistedDecomposition {
    pub fn new(host: Graph, stages: Vec<Stage>) -> Self {
        let certificates = vec![None; stages.len()];
        TwistedDecomposition {
            host,
            stages,
            certificates,
        }
    }

    pub fn from_pairs(host: Graph, pairs: &[(&[(Vertex, Vertex)], &[(Vertex, Vertex)])]) -> Self {
        let stages = pairs
            .iter()
            .map(|(a, b)| Stage::new(Matching::from_pairs(a), Matching::from_pairs(b)))
            .collect();
        TwistedDecomposition::new(host, stages)
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    fn stage(&self, q: usize) -> Result<&Stage, TwistedError> {
        if q == 0 || q > self.stages.len() {
            return Err(TwistedError::StageOutOfRange {
                q,
                p: self.stages.len(),
            });
        }
        Ok(&self.stages[q - 1])
    }

    /// Edges not used by stages `1..q` (1-based, exclusive).
    pub fn residual_before(&self, g: &Graph, q: usize) -> Graph {
        let used: Vec<Edge> = self.stages[..q - 1]
            .iter()
            .flat_map(|s| s.odd.edges().iter().chain(s.even.edges()).copied())
            .collect();
        g.without_edges(&used)
    }

    /// Fills in an LP certificate for every feasible stage.
    pub fn certify(&mut self, g: &Graph) -> Result<(), TwistedError> {
        let mut certs = Vec::with_capacity(self.stages.len());
        for q in 1..=self.stages.len() {
            certs.push(twisted_mapping_feasible(g, self, q)?);
        }
        self.certificates = certs;
        Ok(())
    }
}

/// Checks partition, matchings and the compatibility condition, stopping at
/// the first violation.
pub fn check_twisted_decomposition(g: &Graph, td: &TwistedDecomposition) -> Result<(), TwistedViolation> {
    let mut seen = vec![false; g.num_edges()];
    for (k, stage) in td.stages.iter().enumerate() {
        let q = k + 1;
        for (odd, m) in [(true, &stage.odd), (false, &stage.even)] {
            for &edge in m.edges() {
                let Some(i) = g.edge_index(edge) else {
                    return Err(TwistedViolation::NotInGraph { q, edge });
                };
                if seen[i] {
                    return Err(TwistedViolation::Repeated(edge));
                }
                seen[i] = true;
            }
            if let Some((a, b)) = m.conflict() {
                return Err(TwistedViolation::NotAMatching { q, odd, a, b });
            }
        }
        for &odd_edge in stage.odd.edges() {
            let (i, j) = (odd_edge.u, odd_edge.v);
            let clash = stage
                .even
                .edges()
                .iter()
                .find(|e| e.v == i || e.u == j);
            if let Some(&even_edge) = clash {
                return Err(TwistedViolation::Compatibility {
                    q,
                    odd_edge,
                    even_edge,
                });
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(TwistedViolation::Uncovered(g.edges()[i]));
    }
    Ok(())
}

/// A doubled vertex `(i, layer)` with layer `2q−1` or `2q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayerVertex {
    pub vertex: Vertex,
    pub layer: usize,
}

impl fmt::Display for LayerVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.vertex, self.layer)
    }
}

/// The stage graph `H_q`: two layers of `n` vertices and one edge per stage edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HqGraph {
    pub q: usize,
    pub n: usize,
    /// `(a_{2q−1}, b_{2q})`, sorted.
    pub matched_edges: Vec<(LayerVertex, LayerVertex)>,
}

impl HqGraph {
    pub fn odd_layer(&self) -> usize {
        2 * self.q - 1
    }

    pub fn even_layer(&self) -> usize {
        2 * self.q
    }
}

pub fn build_hq(g: &Graph, td: &TwistedDecomposition, q: usize) -> Result<HqGraph, TwistedError> {
    let stage = td.stage(q)?;
    let (lo, le) = (2 * q - 1, 2 * q);
    let lv = |vertex, layer| LayerVertex { vertex, layer };
    let mut matched_edges: Vec<(LayerVertex, LayerVertex)> = stage
        .odd
        .edges()
        .iter()
        .map(|e| (lv(e.u, lo), lv(e.v, le)))
        .chain(stage.even.edges().iter().map(|e| (lv(e.v, lo), lv(e.u, le))))
        .collect();
    matched_edges.sort_unstable();
    Ok(HqGraph {
        q,
        n: g.n(),
        matched_edges,
    })
}

/// The strict system of stage `q`, over the flat doubled-vertex indices.
pub fn stage_constraints(
    g: &Graph,
    td: &TwistedDecomposition,
    q: usize,
) -> Result<Vec<StrictConstraint>, TwistedError> {
    let stage = td.stage(q)?;
    Ok(stage_system(&td.residual_before(g, q), stage))
}

/// Constraints of one stage over its residual graph: selected orientations
/// positive, every other orientation of a residual edge negative.
pub fn stage_system(residual: &Graph, stage: &Stage) -> Vec<StrictConstraint> {
    let n = residual.n();
    // forward: (i_o, j_e); backward: (j_o, i_e)
    let forward = |e: &Edge| vec![(e.u - 1, 1), (n + e.v - 1, 1)];
    let backward = |e: &Edge| vec![(e.v - 1, 1), (n + e.u - 1, 1)];
    let mut out = Vec::with_capacity(2 * residual.num_edges());
    for e in residual.edges() {
        let (f, b) = if stage.odd.contains(e) {
            (Sense::Positive, Sense::Negative)
        } else if stage.even.contains(e) {
            (Sense::Negative, Sense::Positive)
        } else {
            (Sense::Negative, Sense::Negative)
        };
        out.push(StrictConstraint::new(forward(e), f));
        out.push(StrictConstraint::new(backward(e), b));
    }
    out
}

/// LP decision of stage `q` (normative); returns an integer-scaled certificate.
pub fn twisted_mapping_feasible(
    g: &Graph,
    td: &TwistedDecomposition,
    q: usize,
) -> Result<Option<TwistedWeightCertificate>, TwistedError> {
    let stage = td.stage(q)?;
    Ok(stage_lp(&td.residual_before(g, q), stage))
}

/// LP decision for a stage given directly by its residual graph.
pub fn stage_lp(residual: &Graph, stage: &Stage) -> Option<TwistedWeightCertificate> {
    let n = residual.n();
    lp::solve_strict(2 * n, &stage_system(residual, stage)).map(|w| {
        let (odd, even) = w.split_at(n);
        TwistedWeightCertificate {
            odd: odd.to_vec(),
            even: even.to_vec(),
        }
    })
}

/// Fast path: is the set of selected orientations a positive matching of the
/// doubled graph of the residual? Agrees with [`twisted_mapping_feasible`].
pub fn twisted_stage_fast(g: &Graph, td: &TwistedDecomposition, q: usize) -> Result<bool, TwistedError> {
    let stage = td.stage(q)?;
    let residual = td.residual_before(g, q);
    let n = g.n();
    let mut matched = Vec::new();
    let mut others = Vec::new();
    let mut used = vec![false; 2 * n];
    for e in residual.edges() {
        let fwd = (e.u - 1, n + e.v - 1);
        let bwd = (e.v - 1, n + e.u - 1);
        let (sel, rest): (Vec<_>, Vec<_>) = if stage.odd.contains(e) && stage.even.contains(e) {
            (vec![fwd, bwd], vec![])
        } else if stage.odd.contains(e) {
            (vec![fwd], vec![bwd])
        } else if stage.even.contains(e) {
            (vec![bwd], vec![fwd])
        } else {
            (vec![], vec![fwd, bwd])
        };
        for (a, b) in sel {
            if used[a] || used[b] {
                // two selected orientations meet: their sums cannot both be positive
                // while every other sum is negative, so fall back to the LP
                return Ok(twisted_mapping_feasible(g, td, q)?.is_some());
            }
            used[a] = true;
            used[b] = true;
            matched.push((a, b));
        }
        others.extend(rest);
    }
    Ok(is_positive_unchecked(2 * n, &matched, &others))
}

/// One stage feasibility decision made by [`tpmd_exact_observed`].
#[derive(Clone, Debug)]
pub struct StageCheck {
    pub residual: Graph,
    pub odd: Matching,
    pub even: Matching,
    pub feasible: bool,
}

impl StageCheck {
    /// Re-decides the check with the LP.
    pub fn lp_feasible(&self) -> bool {
        stage_lp(&self.residual, &Stage::new(self.odd.clone(), self.even.clone())).is_some()
    }
}

/// Exact `tpmd(G)` with a certified witness.
pub fn tpmd_exact(g: &Graph, limits: &Limits) -> Result<(usize, TwistedDecomposition), TwistedError> {
    tpmd_exact_observed(g, limits, None)
}

/// [`tpmd_exact`] reporting every stage check (feasible or not) to `observer`.
pub fn tpmd_exact_observed(
    g: &Graph,
    limits: &Limits,
    mut observer: Option<&mut dyn FnMut(&StageCheck)>,
) -> Result<(usize, TwistedDecomposition), TwistedError> {
    pmd::check_size(g, limits.tpmd_max_n, limits.tpmd_max_edges)?;
    let mut search = TwistedSearch::new(g);
    let full = mask_of_len(g.num_edges());
    let mut p = g.max_degree().div_ceil(2);
    loop {
        if let Some(stages) = search.feasible(full, p, &mut observer) {
            let stages = stages
                .into_iter()
                .map(|sel| search.stage_of(sel))
                .collect();
            let mut td = TwistedDecomposition::new(g.clone(), stages);
            debug_assert!(check_twisted_decomposition(g, &td).is_ok());
            td.certify(g)?;
            debug_assert!(td.certificates.iter().all(Option::is_some));
            return Ok((p, td));
        }
        p += 1;
    }
}

struct TwistedSearch<'g> {
    g: &'g Graph,
    n: usize,
    ends: Vec<(usize, usize)>,
    failed: BTreeMap<u64, usize>,
}

struct StageEnum<'a> {
    residual: u64,
    /// doubled-edge ids in order: 2·e is forward, 2·e + 1 backward
    slots: &'a [usize],
    last_at: &'a [usize],
    need: &'a [usize],
    out: &'a mut Vec<u128>,
}

impl<'g> TwistedSearch<'g> {
    fn new(g: &'g Graph) -> Self {
        TwistedSearch {
            g,
            n: g.n(),
            ends: g.edges().iter().map(|e| (e.u - 1, e.v - 1)).collect(),
            failed: BTreeMap::new(),
        }
    }

    /// Doubled endpoints of slot `s`.
    fn slot_ends(&self, s: usize) -> (usize, usize) {
        let (u, v) = self.ends[s / 2];
        if s % 2 == 0 {
            (u, self.n + v)
        } else {
            (v, self.n + u)
        }
    }

    fn stage_of(&self, sel: u128) -> Stage {
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for s in bits128(sel) {
            let e = self.g.edges()[s / 2];
            if s % 2 == 0 {
                odd.push(e);
            } else {
                even.push(e);
            }
        }
        Stage::new(Matching::new(odd), Matching::new(even))
    }

    fn stage_positive(&self, residual: u64, sel: u128) -> bool {
        let mut matched = Vec::new();
        let mut others = Vec::new();
        for e in bits(residual) {
            for s in [2 * e, 2 * e + 1] {
                if sel >> s & 1 == 1 {
                    matched.push(self.slot_ends(s));
                } else {
                    others.push(self.slot_ends(s));
                }
            }
        }
        is_positive_unchecked(2 * self.n, &matched, &others)
    }

    fn feasible(
        &mut self,
        residual: u64,
        budget: usize,
        observer: &mut Option<&mut dyn FnMut(&StageCheck)>,
    ) -> Option<Vec<u128>> {
        if residual == 0 {
            return Some(Vec::new());
        }
        if budget == 0 {
            return None;
        }
        if self.failed.get(&residual).is_some_and(|&b| b >= budget) {
            return None;
        }
        let mut deg = vec![0usize; self.n];
        for e in bits(residual) {
            let (a, b) = self.ends[e];
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d > 2 * budget) {
            return None;
        }
        let need: Vec<usize> = deg.iter().map(|&d| d.saturating_sub(2 * (budget - 1))).collect();
        for sel in self.maximal_stages(residual, &need, observer) {
            let used = edges_of(sel);
            if let Some(mut rest) = self.feasible(residual & !used, budget - 1, observer) {
                rest.insert(0, sel);
                return Some(rest);
            }
        }
        let entry = self.failed.entry(residual).or_insert(0);
        *entry = (*entry).max(budget);
        None
    }

    fn maximal_stages(
        &self,
        residual: u64,
        need: &[usize],
        observer: &mut Option<&mut dyn FnMut(&StageCheck)>,
    ) -> Vec<u128> {
        let slots: Vec<usize> = bits(residual).flat_map(|e| [2 * e, 2 * e + 1]).collect();
        let mut last_at = vec![usize::MAX; self.n];
        for (pos, &s) in slots.iter().enumerate() {
            let (u, v) = self.ends[s / 2];
            last_at[u] = pos;
            last_at[v] = pos;
        }
        let mut out = Vec::new();
        let mut st = StageEnum {
            residual,
            slots: &slots,
            last_at: &last_at,
            need,
            out: &mut out,
        };
        self.enumerate(&mut st, 0, 0, 0, observer);
        out
    }

    /// `used` marks doubled vertices (bits 0..2n) of the selection.
    fn enumerate(
        &self,
        st: &mut StageEnum<'_>,
        pos: usize,
        sel: u128,
        used: u128,
        observer: &mut Option<&mut dyn FnMut(&StageCheck)>,
    ) {
        if pos == st.slots.len() {
            if self.is_maximal(st.residual, sel, used) {
                st.out.push(sel);
            }
            return;
        }
        let s = st.slots[pos];
        let (a, b) = self.slot_ends(s);
        let touch = (1u128 << a) | (1u128 << b);
        if used & touch == 0 && self.can_add(st.residual, sel, s, observer) {
            let next = sel | 1u128 << s;
            if self.coverage_ok(st, pos, used | touch) {
                self.enumerate(st, pos + 1, next, used | touch, observer);
            }
        }
        if self.coverage_ok(st, pos, used) {
            self.enumerate(st, pos + 1, sel, used, observer);
        }
    }

    /// After deciding slot `pos`, vertices whose last slot it was must be covered enough.
    fn coverage_ok(&self, st: &StageEnum<'_>, pos: usize, used: u128) -> bool {
        let (u, v) = self.ends[st.slots[pos] / 2];
        [u, v].iter().all(|&x| {
            st.last_at[x] != pos || {
                let cov = (used >> x & 1) + (used >> (self.n + x) & 1);
                cov as usize >= st.need[x]
            }
        })
    }

    /// Slot `s` can join `sel`: same-edge exclusion, both parts stay matchings
    /// of `G`, and the stage stays feasible.
    fn can_add(
        &self,
        residual: u64,
        sel: u128,
        s: usize,
        observer: &mut Option<&mut dyn FnMut(&StageCheck)>,
    ) -> bool {
        if sel >> (s ^ 1) & 1 == 1 {
            return false;
        }
        let (u, v) = self.ends[s / 2];
        let same_parity_clash = bits128(sel).any(|t| {
            t % 2 == s % 2 && {
                let (x, y) = self.ends[t / 2];
                x == u || x == v || y == u || y == v
            }
        });
        if same_parity_clash {
            return false;
        }
        let next = sel | 1u128 << s;
        let feasible = self.stage_positive(residual, next);
        if let Some(obs) = observer.as_mut() {
            let stage = self.stage_of(next);
            obs(&StageCheck {
                residual: self.residual_graph(residual),
                odd: stage.odd,
                even: stage.even,
                feasible,
            });
        }
        feasible
    }

    fn is_maximal(&self, residual: u64, sel: u128, used: u128) -> bool {
        bits(residual).flat_map(|e| [2 * e, 2 * e + 1]).all(|s| {
            if sel >> s & 1 == 1 {
                return true;
            }
            let (a, b) = self.slot_ends(s);
            used & ((1u128 << a) | (1u128 << b)) != 0 || !self.can_add(residual, sel, s, &mut None)
        })
    }

    fn residual_graph(&self, residual: u64) -> Graph {
        let keep: Vec<Edge> = bits(residual).map(|e| self.g.edges()[e]).collect();
        Graph::new(self.n, keep.iter().map(|e| (e.u, e.v))).expect("subgraph")
    }
}

fn edges_of(sel: u128) -> u64 {
    bits128(sel).fold(0u64, |acc, s| acc | 1u64 << (s / 2))
}

fn bits128(mut mask: u128) -> impl Iterator<Item = usize> {
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

/// Turns a certified pm-decomposition into a twisted one with empty even
/// parts: `w'(i_o) = w(i)`, `w'(j_e) = w(j)` for `{i, j} ∈ E_q`, and `−t` on
/// every other doubled vertex, `t = max w + 1`.
pub fn tpmd_from_pmd(g: &Graph, pm: &PmDecomposition) -> Result<TwistedDecomposition, TwistedError> {
    let mut stages = Vec::with_capacity(pm.len());
    let mut certs = Vec::with_capacity(pm.len());
    for (k, part) in pm.parts.iter().enumerate() {
        let w = pm
            .certificates
            .get(k)
            .and_then(Option::as_ref)
            .ok_or(TwistedError::MissingCertificate(k + 1))?;
        let max = w
            .weights
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::one);
        let low = -(max.abs() + BigRational::one());
        let mut odd = vec![low.clone(); g.n()];
        let mut even = vec![low.clone(); g.n()];
        for e in part.edges() {
            odd[e.u - 1] = w.weight(e.u).clone();
            even[e.v - 1] = w.weight(e.v).clone();
        }
        stages.push(Stage::new(part.clone(), Matching::default()));
        certs.push(Some(TwistedWeightCertificate { odd, even }));
    }
    let mut td = TwistedDecomposition::new(g.clone(), stages);
    td.certificates = certs;
    Ok(td)
}

/// Every stage has a stored certificate that verifies; returns the first failing stage.
pub fn first_uncertified_stage(g: &Graph, td: &TwistedDecomposition) -> Result<Option<usize>, TwistedError> {
    for q in 1..=td.len() {
        let ok = match td.certificates.get(q - 1).and_then(Option::as_ref) {
            Some(c) => c.certifies(g, td, q)?,
            None => false,
        };
        if !ok {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// `"(w(1_o), ..., w(n_o) | w(1_e), ..., w(n_e))"`
pub fn format_certificate(c: &TwistedWeightCertificate) -> String {
    let join = |xs: &[BigRational]| {
        xs.iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("({} | {})", join(&c.odd), join(&c.even))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, parse_graph};
    use crate::pmd::pmd_exact;

    fn example() -> Graph {
        parse_graph("4\n1 2\n1 3\n1 4\n2 3\n2 4").unwrap()
    }

    fn example_td() -> TwistedDecomposition {
        TwistedDecomposition::from_pairs(
            example(),
            &[(&[(1, 2)], &[(1, 4)]), (&[(2, 3)], &[(1, 3), (2, 4)])],
        )
    }

    #[test]
    fn example_decomposition_is_valid() {
        assert_eq!(check_twisted_decomposition(&example(), &example_td()), Ok(()));
        for q in 1..=2 {
            assert!(twisted_mapping_feasible(&example(), &example_td(), q).unwrap().is_some());
            assert!(twisted_stage_fast(&example(), &example_td(), q).unwrap());
        }
    }

    #[test]
    fn moving_2_3_into_m2_breaks_compatibility() {
        let td = TwistedDecomposition::from_pairs(
            example(),
            &[(&[(1, 2)], &[(1, 4), (2, 3)]), (&[], &[(1, 3), (2, 4)])],
        );
        assert!(matches!(
            check_twisted_decomposition(&example(), &td),
            Err(TwistedViolation::Compatibility { q: 1, .. })
        ));
    }

    #[test]
    fn empty_graph_empty_decomposition() {
        let g = Graph::empty(3);
        let td = TwistedDecomposition::new(g.clone(), vec![]);
        assert_eq!(check_twisted_decomposition(&g, &td), Ok(()));
        assert_eq!(tpmd_exact(&g, &Limits::default()).unwrap().0, 0);
    }

    #[test]
    fn hq_edges_match_the_figures() {
        let g = example();
        let h1 = build_hq(&g, &example_td(), 1).unwrap();
        let lv = |vertex, layer| LayerVertex { vertex, layer };
        assert_eq!(
            h1.matched_edges,
            vec![(lv(1, 1), lv(2, 2)), (lv(4, 1), lv(1, 2))]
        );
        let h2 = build_hq(&g, &example_td(), 2).unwrap();
        assert_eq!(
            h2.matched_edges,
            vec![(lv(2, 3), lv(3, 4)), (lv(3, 3), lv(1, 4)), (lv(4, 3), lv(2, 4))]
        );
        assert!(matches!(
            build_hq(&g, &example_td(), 3),
            Err(TwistedError::StageOutOfRange { q: 3, p: 2 })
        ));
    }

    #[test]
    fn second_figure_weights_verify() {
        let w2 = TwistedWeightCertificate::from_integers(&[-3, 2, -2, 2], &[3, -1, -1, -3]);
        assert!(w2.certifies(&example(), &example_td(), 2).unwrap());
    }

    #[test]
    fn single_edge_stage() {
        let g = named_graph("P2").unwrap();
        let td = TwistedDecomposition::from_pairs(g.clone(), &[(&[(1, 2)], &[])]);
        let c = twisted_mapping_feasible(&g, &td, 1).unwrap().unwrap();
        assert!(c.certifies(&g, &td, 1).unwrap());
        let h = build_hq(&g, &td, 1).unwrap();
        assert_eq!(h.matched_edges.len(), 1);
    }

    #[test]
    fn small_tpmd_values() {
        let lim = Limits::default();
        assert_eq!(tpmd_exact(&example(), &lim).unwrap().0, 2);
        assert_eq!(tpmd_exact(&named_graph("P3").unwrap(), &lim).unwrap().0, 2);
        assert_eq!(tpmd_exact(&named_graph("P2").unwrap(), &lim).unwrap().0, 1);
        for m in 2..=5 {
            let star = named_graph(&format!("K1,{m}")).unwrap();
            assert_eq!(tpmd_exact(&star, &lim).unwrap().0, (m as usize).div_ceil(2), "K1,{m}");
        }
    }

    #[test]
    fn from_pmd_keeps_part_count_and_certifies() {
        for spec in ["C4", "P2", "K1,3", "P5"] {
            let g = named_graph(spec).unwrap();
            let (p, pm) = pmd_exact(&g, &Limits::default()).unwrap();
            let td = tpmd_from_pmd(&g, &pm).unwrap();
            assert_eq!(td.len(), p);
            assert!(td.stages.iter().all(|s| s.even.is_empty()));
            assert_eq!(check_twisted_decomposition(&g, &td), Ok(()));
            assert_eq!(first_uncertified_stage(&g, &td).unwrap(), None, "{spec}");
        }
    }

    #[test]
    fn from_pmd_needs_certificates() {
        let g = named_graph("P2").unwrap();
        let pm = PmDecomposition::new(vec![Matching::from_pairs(&[(1, 2)])]);
        assert_eq!(tpmd_from_pmd(&g, &pm), Err(TwistedError::MissingCertificate(1)));
    }
}
