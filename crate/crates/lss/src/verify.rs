//! Cross-oracle verification suites over enumerated small graphs.
//!
//! Each suite maps a fixed, ordered list of inputs through a checker in
//! parallel; results are collected in input order, so reports do not depend on
//! the number of worker threads.

use std::str::FromStr;

use lss_core::classify::{
    aci_edge_removal_witness, aci_profile_edge, classify, classify_all_rules, Property, Status,
};
use lss_core::matching::{find_weight_certificate, is_positive_matching};
use lss_core::pmd::{check_pm_decomposition, pmd_exact, pmd_lower_bound, pmd_upper_bound};
use lss_core::poly::verify_coprime_leading_terms;
use lss_core::twisted::{check_twisted_decomposition, tpmd_exact_observed, StageCheck};
use lss_core::{Graph, Limits};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::enumerate::{connected_graphs_up_to_iso, forests_up_to_iso, graphs_up_to_iso, matchings, trees_up_to_iso};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Matching,
    Pmd,
    Tpmd,
    LeadingTerms,
    Classifier,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Matching,
        Suite::Pmd,
        Suite::Tpmd,
        Suite::LeadingTerms,
        Suite::Classifier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Matching => "matching",
            Suite::Pmd => "pmd",
            Suite::Tpmd => "tpmd",
            Suite::LeadingTerms => "leading-terms",
            Suite::Classifier => "classifier",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Matching => "alternating-walk positivity agrees with the exact LP on every matching",
            Suite::Pmd => "pmd witnesses verify and respect the lower and structural upper bounds",
            Suite::Tpmd => "ceil(max degree / 2) <= tpmd <= pmd, and the stage fast path agrees with the LP",
            Suite::LeadingTerms => "leading terms at d = tpmd are squarefree, pairwise coprime and of closed form",
            Suite::Classifier => "forest ladders, ACI degree profile against edge removal, and rule consistency",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub max_n: usize,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        const SHOWN: usize = 20;
        json!({
            "suite": self.suite.name(),
            "max_n": self.max_n,
            "cases": self.cases,
            "passed": self.cases - self.failures.len().min(self.cases),
            "failed": self.failures.len(),
            "failures": self.failures.iter().take(SHOWN).collect::<Vec<_>>(),
        })
    }
}

/// Per-input outcome: number of checks made and failure messages.
type Outcome = (usize, Vec<String>);

fn collect(suite: Suite, max_n: usize, outcomes: Vec<Outcome>) -> SuiteResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for (c, f) in outcomes {
        cases += c;
        failures.extend(f);
    }
    SuiteResult {
        suite,
        max_n,
        cases,
        failures,
    }
}

fn label(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|e| format!("{}-{}", e.u, e.v)).collect();
    format!("n={} [{}]", g.n(), edges.join(" "))
}

fn check_matchings(g: &Graph) -> Outcome {
    let mut fails = Vec::new();
    let ms = matchings(g);
    for m in &ms {
        let walk = match is_positive_matching(g, m) {
            Ok(b) => b,
            Err(e) => {
                fails.push(format!("{}: {e}", label(g)));
                continue;
            }
        };
        match find_weight_certificate(g, m) {
            Ok(cert) => {
                if cert.is_some() != walk {
                    fails.push(format!("{}: walk says {walk}, LP disagrees on {:?}", label(g), m.edges()));
                }
                if let Some(c) = cert {
                    if !c.certifies(g, m) {
                        fails.push(format!("{}: LP certificate fails direct check", label(g)));
                    }
                }
            }
            Err(e) => fails.push(format!("{}: {e}", label(g))),
        }
    }
    (ms.len(), fails)
}

fn check_pmd(g: &Graph, limits: &Limits) -> Outcome {
    let mut fails = Vec::new();
    match pmd_exact(g, limits) {
        Ok((p, pm)) => {
            if let Err(e) = check_pm_decomposition(g, &pm) {
                fails.push(format!("{}: witness rejected: {e}", label(g)));
            }
            if pmd_lower_bound(g) > p {
                fails.push(format!("{}: pmd {p} below lower bound", label(g)));
            }
            if let Ok((u, _)) = pmd_upper_bound(g, limits) {
                if p > u {
                    fails.push(format!("{}: pmd {p} above structural bound {u}", label(g)));
                }
            }
            if g.is_forest() && p != g.max_degree() {
                fails.push(format!("{}: forest with pmd {p} != max degree", label(g)));
            }
        }
        Err(e) => fails.push(format!("{}: {e}", label(g))),
    }
    (1, fails)
}

/// Sandwich check plus fast-path/LP agreement on every observed stage check.
/// Returns the outcome and the number of stage checks compared.
pub fn check_tpmd(g: &Graph, limits: &Limits) -> (Outcome, usize) {
    let mut fails = Vec::new();
    let p = match pmd_exact(g, limits) {
        Ok((p, _)) => p,
        Err(e) => return ((1, vec![format!("{}: {e}", label(g))]), 0),
    };
    let mut seen: Vec<StageCheck> = Vec::new();
    let mut obs = |c: &StageCheck| seen.push(c.clone());
    let result = tpmd_exact_observed(g, limits, Some(&mut obs));
    let stage_checks = seen.len();
    match result {
        Ok((t, td)) => {
            let lo = g.max_degree().div_ceil(2);
            if !(lo <= t && t <= p) {
                fails.push(format!("{}: sandwich {lo} <= {t} <= {p} fails", label(g)));
            }
            if let Err(v) = check_twisted_decomposition(g, &td) {
                fails.push(format!("{}: twisted witness rejected: {v}", label(g)));
            }
            if td.certificates.iter().any(Option::is_none) {
                fails.push(format!("{}: twisted witness lacks a certificate", label(g)));
            }
        }
        Err(e) => fails.push(format!("{}: {e}", label(g))),
    }
    for c in &seen {
        if c.feasible != c.lp_feasible() {
            fails.push(format!(
                "{}: fast path says {} on stage odd {:?} even {:?}, LP disagrees",
                label(g),
                c.feasible,
                c.odd.edges(),
                c.even.edges()
            ));
        }
    }
    ((1, fails), stage_checks)
}

fn check_leading_terms(g: &Graph, limits: &Limits) -> Outcome {
    let d = match lss_core::twisted::tpmd_exact(g, limits) {
        Ok((t, _)) => t,
        Err(e) => return (1, vec![format!("{}: {e}", label(g))]),
    };
    let fails = match verify_coprime_leading_terms(g, d, limits) {
        Ok(r) if r.pairwise_coprime && r.squarefree && r.matches_closed_form => Vec::new(),
        Ok(r) => vec![format!(
            "{}: coprime {} squarefree {} closed form {}",
            label(g),
            r.pairwise_coprime,
            r.squarefree,
            r.matches_closed_form
        )],
        Err(e) => vec![format!("{}: {e}", label(g))],
    };
    (1, fails)
}

fn check_forest_ladder(f: &Graph, limits: &Limits) -> Outcome {
    let mut fails = Vec::new();
    let delta = f.max_degree();
    let mut cases = 0;
    for d in 1..=6 {
        cases += 1;
        let get = |p| classify(f, d, p, limits).map(|v| v.status);
        let (ci, prime, radical) = match (
            get(Property::CompleteIntersection),
            get(Property::Prime),
            get(Property::Radical),
        ) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => {
                fails.push(format!("{}: classification error", label(f)));
                continue;
            }
        };
        let want = |b: bool| if b { Status::Yes } else { Status::No };
        if ci != want(d >= delta) || prime != want(d > delta) || radical != Status::Yes {
            fails.push(format!(
                "{} d={d}: ci {} prime {} radical {}",
                label(f),
                ci.name(),
                prime.name(),
                radical.name()
            ));
        }
    }
    (cases, fails)
}

fn check_aci_profile(t: &Graph) -> Outcome {
    let mut fails = Vec::new();
    let top = t.max_degree().max(1);
    for d in 1..=top {
        let profile = aci_profile_edge(t, d);
        let removal = aci_edge_removal_witness(t, d);
        if profile.is_some() != removal.is_some() {
            fails.push(format!("{} d={d}: profile {profile:?} removal {removal:?}", label(t)));
        }
        if let Some(e) = profile {
            if t.without_edges(&[e]).max_degree() > d {
                fails.push(format!("{} d={d}: profile edge {e} does not work", label(t)));
            }
        }
    }
    (top, fails)
}

fn check_rule_consistency(g: &Graph, limits: &Limits) -> Outcome {
    let mut fails = Vec::new();
    let mut cases = 0;
    for d in 1..=4 {
        for p in [
            Property::CompleteIntersection,
            Property::AlmostCompleteIntersection,
            Property::Radical,
            Property::Prime,
        ] {
            cases += 1;
            match classify_all_rules(g, d, p, limits) {
                Ok(rules) => {
                    let yes = rules.iter().any(|v| v.status == Status::Yes);
                    let no = rules.iter().any(|v| v.status == Status::No);
                    if yes && no {
                        fails.push(format!("{} d={d} {}: rules disagree", label(g), p.name()));
                    }
                }
                Err(e) => fails.push(format!("{} d={d}: {e}", label(g))),
            }
        }
    }
    (cases, fails)
}

/// Runs one suite on every graph with at most `max_n` vertices (`max_n ≤ 8`).
pub fn run_suite(suite: Suite, max_n: usize, limits: &Limits) -> SuiteResult {
    let max_n = max_n.min(8);
    let outcomes: Vec<Outcome> = match suite {
        Suite::Matching => graphs_up_to_iso(max_n).par_iter().map(check_matchings).collect(),
        Suite::Pmd => connected_graphs_up_to_iso(max_n)
            .par_iter()
            .map(|g| check_pmd(g, limits))
            .collect(),
        Suite::Tpmd => connected_graphs_up_to_iso(max_n)
            .par_iter()
            .map(|g| {
                let ((_, fails), stage_checks) = check_tpmd(g, limits);
                (1 + stage_checks, fails)
            })
            .collect(),
        Suite::LeadingTerms => connected_graphs_up_to_iso(max_n)
            .par_iter()
            .map(|g| check_leading_terms(g, limits))
            .collect(),
        Suite::Classifier => {
            let mut out: Vec<Outcome> = forests_up_to_iso(max_n)
                .par_iter()
                .map(|f| check_forest_ladder(f, limits))
                .collect();
            out.extend(
                trees_up_to_iso(max_n)
                    .par_iter()
                    .map(check_aci_profile)
                    .collect::<Vec<_>>(),
            );
            out.extend(
                connected_graphs_up_to_iso(max_n.min(5))
                    .par_iter()
                    .map(|g| check_rule_consistency(g, limits))
                    .collect::<Vec<_>>(),
            );
            out
        }
    };
    collect(suite, max_n, outcomes)
}
