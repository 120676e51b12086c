//! JSON shapes of the reports. Maps are key-sorted, so output is byte-stable.

use lss_core::classify::Verdict;
use lss_core::graph::GraphShape;
use lss_core::regularity::{KoszulFamily, RegularityReport, UpperBound};
use lss_core::twisted::TwistedDecomposition;
use lss_core::{Edge, Graph, Matching, PmDecomposition, TwistedWeightCertificate, WeightCertificate};
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Envelope for every command.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub input_digest: Option<String>,
    pub results: Value,
    pub citations: Vec<String>,
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
            "citations": self.citations,
            "timing_ms": self.timing_ms,
        })
    }

    pub fn render(&self, pretty: bool) -> String {
        let v = self.to_json();
        let mut s = if pretty {
            serde_json::to_string_pretty(&v)
        } else {
            serde_json::to_string(&v)
        }
        .expect("values serialize");
        s.push('\n');
        s
    }
}

/// SHA-256 of the canonical edge list.
pub fn input_digest(g: &Graph) -> String {
    hex::encode(Sha256::digest(g.to_edge_list().as_bytes()))
}

/// Exact rational as `"p/q"`.
pub fn ratio(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn edge(e: &Edge) -> Value {
    json!([e.u, e.v])
}

pub fn matching(m: &Matching) -> Value {
    Value::Array(m.edges().iter().map(edge).collect())
}

fn weights(ws: &[BigRational]) -> Value {
    let mut map = Map::new();
    for (i, w) in ws.iter().enumerate() {
        map.insert((i + 1).to_string(), Value::String(ratio(w)));
    }
    Value::Object(map)
}

pub fn weight_certificate(c: &WeightCertificate) -> Value {
    weights(&c.weights)
}

pub fn twisted_certificate(c: &TwistedWeightCertificate) -> Value {
    json!({ "odd": weights(&c.odd), "even": weights(&c.even) })
}

pub fn shape(s: &GraphShape) -> Value {
    json!({
        "kind": s.kind.name(),
        "connected": s.connected,
        "cycle_count": s.cycle_count,
        "c3_free": s.c3_free,
    })
}

/// List of parts, each a list of edge pairs.
pub fn pm_decomposition(pm: &PmDecomposition) -> Value {
    Value::Array(pm.parts.iter().map(matching).collect())
}

pub fn pm_certificates(pm: &PmDecomposition) -> Value {
    Value::Array(
        pm.certificates
            .iter()
            .map(|c| c.as_ref().map_or(Value::Null, weight_certificate))
            .collect(),
    )
}

/// List of `{odd, even, certificate, odd_empty}` stages; `odd_empty` flags an
/// empty odd matching paired with a nonempty even one.
pub fn twisted_decomposition(td: &TwistedDecomposition) -> Value {
    Value::Array(
        td.stages
            .iter()
            .zip(&td.certificates)
            .map(|(s, c)| {
                json!({
                    "odd": matching(&s.odd),
                    "even": matching(&s.even),
                    "certificate": c.as_ref().map_or(Value::Null, twisted_certificate),
                    "odd_empty": s.odd_empty_even_nonempty(),
                })
            })
            .collect(),
    )
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "property": v.property.name(),
        "status": v.status.name(),
        "citation": v.citation,
        "witness": v.witness.as_ref().map(|w| w.to_string()),
    })
}

pub fn regularity(r: &RegularityReport) -> Value {
    let (upper, symbolic) = match &r.upper {
        Some(UpperBound::Numeric(u)) => (Some(*u), None),
        Some(UpperBound::Symbolic(s)) => (None, Some(s.clone())),
        None => (None, None),
    };
    let mut v = json!({
        "s": r.s,
        "value": r.value,
        "lower": r.lower,
        "upper": upper,
        "citation": r.citation,
        "notes": r.notes,
    });
    if let Some(s) = symbolic {
        v["symbolic_upper"] = Value::String(s);
    }
    v
}

pub fn koszul_family(f: &KoszulFamily) -> Value {
    json!({
        "family": f.family,
        "clause": f.clause,
        "clause_says": f.clause_says,
    })
}
