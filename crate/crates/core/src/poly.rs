//! LSS and twisted LSS generators, stage-weight term orders, leading terms and
//! CAS script export.
//!
//! Variables are `x(i,k)` for a vertex `i` and a layer `k`. Polynomials are
//! sparse maps from monomials to nonzero big-integer coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write as _};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::limits::Limits;
use crate::twisted::{
    self, first_uncertified_stage, TwistedDecomposition, TwistedError, TwistedWeightCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("d = {d} is smaller than the number of stages {p}")]
    DimensionMismatch { d: usize, p: usize },
    #[error("stage {0} has no certificate that satisfies its inequalities")]
    CertificateRejected(usize),
    #[error("unknown CAS dialect `{0}` (expected macaulay2 or singular)")]
    UnknownDialect(String),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub vertex: usize,
    pub layer: usize,
}

impl Var {
    pub fn new(vertex: usize, layer: usize) -> Var {
        Var { vertex, layer }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x({},{})", self.vertex, self.layer)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn from_vars(vars: &[Var]) -> Monomial {
        let mut m = Monomial::one();
        for &v in vars {
            *m.exps.entry(v).or_insert(0) += 1;
        }
        m
    }

    /// `x(i1,k1)·x(i2,k2)`.
    pub fn quadratic(a: (usize, usize), b: (usize, usize)) -> Monomial {
        Monomial::from_vars(&[Var::new(a.0, a.1), Var::new(b.0, b.1)])
    }

    pub fn exponents(&self) -> &BTreeMap<Var, u32> {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&e| e == 1)
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.exps.keys().all(|v| !other.exps.contains_key(v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (v, e) in &other.exps {
            *m.exps.entry(*v).or_insert(0) += e;
        }
        m
    }

    /// Compact form `x11x22`, readable when all indices are single digits.
    pub fn compact(&self) -> String {
        let mut s = String::new();
        for (v, &e) in &self.exps {
            for _ in 0..e {
                let _ = write!(s, "x{}{}", v.vertex, v.layer);
            }
        }
        s
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, &e)) in self.exps.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Text in a CAS-friendly syntax, terms in variable-index order.
    fn render(&self, var: &dyn Fn(&Var) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.exps.is_empty() {
                factors.push(abs.to_string());
            }
            for (v, &e) in &m.exps {
                if e == 1 {
                    factors.push(var(v));
                } else {
                    factors.push(format!("{}^{e}", var(v)));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|v| v.to_string()))
    }
}

/// `f_e = Σ_{ℓ=1}^{d} x(i,ℓ)·x(j,ℓ)` for every edge, in canonical edge order.
pub fn lss_generators(g: &Graph, d: usize) -> Vec<Polynomial> {
    g.edges()
        .iter()
        .map(|e| {
            let mut p = Polynomial::zero();
            for l in 1..=d {
                p.add_term(Monomial::quadratic((e.u, l), (e.v, l)), BigInt::one());
            }
            p
        })
        .collect()
}

/// `f̂_e = Σ_{ℓ=1}^{d} (x(i,2ℓ−1)·x(j,2ℓ) − x(i,2ℓ)·x(j,2ℓ−1))` with `i < j`.
pub fn twisted_lss_generators(g: &Graph, d: usize) -> Vec<Polynomial> {
    g.edges()
        .iter()
        .map(|e| twisted_generator(*e, d))
        .collect()
}

pub fn twisted_generator(e: Edge, d: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for l in 1..=d {
        p.add_term(Monomial::quadratic((e.u, 2 * l - 1), (e.v, 2 * l)), BigInt::one());
        p.add_term(Monomial::quadratic((e.u, 2 * l), (e.v, 2 * l - 1)), -BigInt::one());
    }
    p
}

/// Graded reverse lexicographic order with `x(1,1) > x(1,2) > ... > x(n,k)`.
pub fn tiebreak(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    // the smallest variable is the largest (vertex, layer) key
    let mut keys: Vec<&Var> = a.exps.keys().chain(b.exps.keys()).collect();
    keys.sort_unstable();
    keys.dedup();
    for v in keys.into_iter().rev() {
        let (ea, eb) = (a.exponent(v), b.exponent(v));
        if ea != eb {
            // fewer of the smallest variable means larger
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

/// Total degree, then the stage weights in order, then [`tiebreak`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub d: usize,
    /// `weight_layers[q−1]` is supported on layers `2q−1` and `2q`.
    pub weight_layers: Vec<BTreeMap<Var, BigRational>>,
    /// The certificates the weights were read from, one per stage.
    pub source: Vec<TwistedWeightCertificate>,
}

impl TermOrder {
    /// Order read directly from stage certificates, without checking them.
    pub fn from_certificates(d: usize, certs: &[TwistedWeightCertificate]) -> TermOrder {
        let weight_layers = certs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let q = k + 1;
                let mut w = BTreeMap::new();
                for (i, x) in c.odd.iter().enumerate() {
                    if !x.is_zero() {
                        w.insert(Var::new(i + 1, 2 * q - 1), x.clone());
                    }
                }
                for (i, x) in c.even.iter().enumerate() {
                    if !x.is_zero() {
                        w.insert(Var::new(i + 1, 2 * q), x.clone());
                    }
                }
                w
            })
            .collect();
        TermOrder {
            d,
            weight_layers,
            source: certs.to_vec(),
        }
    }

    pub fn weight(&self, q: usize, m: &Monomial) -> BigRational {
        let layer = &self.weight_layers[q - 1];
        let mut acc = BigRational::zero();
        for (v, &e) in &m.exps {
            if let Some(w) = layer.get(v) {
                acc += w * BigRational::from_integer(BigInt::from(e));
            }
        }
        acc
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        for q in 1..=self.weight_layers.len() {
            match self.weight(q, a).cmp(&self.weight(q, b)) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        tiebreak(a, b)
    }
}

/// Term order from a twisted decomposition and one verified certificate per stage.
pub fn build_term_order(
    g: &Graph,
    td: &TwistedDecomposition,
    certs: &[TwistedWeightCertificate],
    d: usize,
) -> Result<TermOrder, PolyError> {
    if d < td.len() {
        return Err(PolyError::DimensionMismatch { d, p: td.len() });
    }
    for q in 1..=td.len() {
        let ok = match certs.get(q - 1) {
            Some(c) => c.certifies(g, td, q)?,
            None => false,
        };
        if !ok {
            return Err(PolyError::CertificateRejected(q));
        }
    }
    Ok(TermOrder::from_certificates(d, certs))
}

pub fn leading_term(poly: &Polynomial, order: &TermOrder) -> Result<Monomial, PolyError> {
    poly.terms
        .keys()
        .max_by(|a, b| order.cmp(a, b))
        .cloned()
        .ok_or(PolyError::ZeroPolynomial)
}

/// The closed form of the leading term of `f̂_e` for a stage-feasible decomposition:
/// `x(i,2q−1)·x(j,2q)` if `e ∈ M_{2q−1}`, `x(i,2q)·x(j,2q−1)` if `e ∈ M_{2q}`.
pub fn expected_leading_term(td: &TwistedDecomposition, e: Edge) -> Option<Monomial> {
    td.stages.iter().enumerate().find_map(|(k, s)| {
        let q = k + 1;
        if s.odd.contains(&e) {
            Some(Monomial::quadratic((e.u, 2 * q - 1), (e.v, 2 * q)))
        } else if s.even.contains(&e) {
            Some(Monomial::quadratic((e.u, 2 * q), (e.v, 2 * q - 1)))
        } else {
            None
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTermReport {
    pub d: usize,
    pub tpmd: usize,
    pub decomposition: TwistedDecomposition,
    pub leading_terms: Vec<(Edge, Monomial)>,
    pub pairwise_coprime: bool,
    pub squarefree: bool,
    pub matches_closed_form: bool,
}

/// Leading terms of the twisted generators under the order of `td`'s stored certificates.
pub fn leading_term_report(
    g: &Graph,
    td: &TwistedDecomposition,
    d: usize,
) -> Result<LeadingTermReport, PolyError> {
    if let Some(q) = first_uncertified_stage(g, td)? {
        return Err(PolyError::CertificateRejected(q));
    }
    let certs: Vec<TwistedWeightCertificate> =
        td.certificates.iter().flatten().cloned().collect();
    let order = build_term_order(g, td, &certs, d)?;
    let mut leading_terms = Vec::with_capacity(g.num_edges());
    for (e, f) in g.edges().iter().zip(twisted_lss_generators(g, d)) {
        leading_terms.push((*e, leading_term(&f, &order)?));
    }
    let pairwise_coprime = leading_terms.iter().enumerate().all(|(k, (_, a))| {
        leading_terms[k + 1..]
            .iter()
            .all(|(_, b)| a.is_coprime_to(b))
    });
    let squarefree = leading_terms.iter().all(|(_, m)| m.is_squarefree() && m.degree() == 2);
    let matches_closed_form = leading_terms
        .iter()
        .all(|(e, m)| expected_leading_term(td, *e).as_ref() == Some(m));
    Ok(LeadingTermReport {
        d,
        tpmd: td.len(),
        decomposition: td.clone(),
        leading_terms,
        pairwise_coprime,
        squarefree,
        matches_closed_form,
    })
}

/// Runs the exact tpmd search, builds the order from its certificates and
/// checks the leading terms of the twisted generators.
pub fn verify_coprime_leading_terms(
    g: &Graph,
    d: usize,
    limits: &Limits,
) -> Result<LeadingTermReport, PolyError> {
    let (p, td) = twisted::tpmd_exact(g, limits)?;
    if d < p {
        return Err(PolyError::DimensionMismatch { d, p });
    }
    leading_term_report(g, &td, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    Macaulay2,
    Singular,
}

impl FromStr for Dialect {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "macaulay2" | "m2" => Ok(Dialect::Macaulay2),
            "singular" => Ok(Dialect::Singular),
            _ => Err(PolyError::UnknownDialect(s.to_string())),
        }
    }
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Macaulay2 => "macaulay2",
            Dialect::Singular => "singular",
        }
    }
}

/// A self-contained script declaring the ring and the (twisted) LSS ideal,
/// printing the number of generators and the codimension.
pub fn export_cas_script(g: &Graph, d: usize, twisted: bool, dialect: Dialect) -> String {
    let layers = if twisted { 2 * d } else { d };
    let gens = if twisted {
        twisted_lss_generators(g, d)
    } else {
        lss_generators(g, d)
    };
    let (c, name) = match dialect {
        Dialect::Macaulay2 => ("--", "Macaulay2"),
        Dialect::Singular => ("//", "Singular"),
    };
    let mut s = String::new();
    let edges: Vec<String> = g.edges().iter().map(|e| e.to_string()).collect();
    let _ = writeln!(s, "{c} {name} script, generated by lss");
    if twisted {
        let _ = writeln!(s, "{c} twisted LSS ideal for d = {d} on {} vertices", g.n());
        let _ = writeln!(
            s,
            "{c} generator of e = {{i,j}}, i < j: sum over l = 1..{d} of x(i,2l-1)*x(j,2l) - x(i,2l)*x(j,2l-1)"
        );
        let _ = writeln!(
            s,
            "{c} via Y J Y^T this ideal relates to Pfaffians of order 2d+2 of a skew-symmetric matrix"
        );
    } else {
        let _ = writeln!(s, "{c} LSS ideal for d = {d} on {} vertices", g.n());
        let _ = writeln!(
            s,
            "{c} generator of e = {{i,j}}: sum over l = 1..{d} of x(i,l)*x(j,l)"
        );
        let _ = writeln!(
            s,
            "{c} via Y Z or Y Y^T this ideal relates to (d+1)-minors of generic or symmetric matrices"
        );
    }
    let _ = writeln!(s, "{c} edges ({}): {}", edges.len(), edges.join(" "));
    match dialect {
        Dialect::Macaulay2 => {
            let var = |v: &Var| format!("x_({},{})", v.vertex, v.layer);
            let _ = writeln!(s, "R = QQ[x_(1,1)..x_({},{})];", g.n(), layers);
            if gens.is_empty() {
                let _ = writeln!(s, "I = ideal(map(R^1, R^0, 0));");
            } else {
                let _ = writeln!(s, "I = ideal(");
                for (k, f) in gens.iter().enumerate() {
                    let sep = if k + 1 < gens.len() { "," } else { "" };
                    let _ = writeln!(s, "  {}{sep}", f.render(&var));
                }
                let _ = writeln!(s, ");");
            }
            let _ = writeln!(s, "print numgens I");
            let _ = writeln!(s, "print codim I");
        }
        Dialect::Singular => {
            let var = |v: &Var| format!("x({})({})", v.vertex, v.layer);
            let _ = writeln!(s, "ring R = 0, (x(1..{})(1..{})), dp;", g.n(), layers);
            if gens.is_empty() {
                let _ = writeln!(s, "ideal I = 0;");
            } else {
                let _ = writeln!(s, "ideal I =");
                for (k, f) in gens.iter().enumerate() {
                    let sep = if k + 1 < gens.len() { "," } else { ";" };
                    let _ = writeln!(s, "  {}{sep}", f.render(&var));
                }
            }
            let _ = writeln!(s, "print(size(I));");
            let _ = writeln!(s, "print(nvars(R) - dim(std(I)));");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, parse_graph};

    fn example() -> Graph {
        parse_graph("4\n1 2\n1 3\n1 4\n2 3\n2 4").unwrap()
    }

    #[test]
    fn plain_generators() {
        let p2 = named_graph("P2").unwrap();
        let f = &lss_generators(&p2, 1)[0];
        assert_eq!(f.to_string(), "x(1,1)*x(2,1)");
        let f = &lss_generators(&p2, 3)[0];
        assert_eq!(f.terms().len(), 3);
        assert!(f.terms().values().all(|c| c.is_one()));
        let c3 = lss_generators(&named_graph("C3").unwrap(), 2);
        assert_eq!(c3.len(), 3);
        assert!(c3.iter().all(|f| f.terms().len() == 2));
    }

    #[test]
    fn twisted_generators() {
        let p2 = named_graph("P2").unwrap();
        assert_eq!(
            twisted_lss_generators(&p2, 1)[0].to_string(),
            "x(1,1)*x(2,2) - x(1,2)*x(2,1)"
        );
        let f12 = &twisted_lss_generators(&example(), 2)[0];
        assert_eq!(
            f12.to_string(),
            "x(1,1)*x(2,2) - x(1,2)*x(2,1) + x(1,3)*x(2,4) - x(1,4)*x(2,3)"
        );
        assert!(twisted_lss_generators(&Graph::empty(2), 3).is_empty());
    }

    #[test]
    fn tiebreak_is_grevlex() {
        let a = Monomial::quadratic((1, 1), (2, 2));
        let b = Monomial::quadratic((1, 2), (2, 1));
        // x(2,2) is smaller than x(2,1), and a contains it
        assert_eq!(tiebreak(&a, &b), Ordering::Less);
        let x11 = Monomial::from_vars(&[Var::new(1, 1)]);
        assert_eq!(tiebreak(&a, &x11), Ordering::Greater);
    }

    #[test]
    fn zero_polynomial_has_no_leading_term() {
        let order = TermOrder::from_certificates(1, &[]);
        assert_eq!(leading_term(&Polynomial::zero(), &order), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn dimension_mismatch() {
        let g = example();
        let (_, td) = twisted::tpmd_exact(&g, &Limits::default()).unwrap();
        let certs: Vec<_> = td.certificates.iter().flatten().cloned().collect();
        assert_eq!(
            build_term_order(&g, &td, &certs, 1),
            Err(PolyError::DimensionMismatch { d: 1, p: 2 })
        );
        assert!(build_term_order(&g, &td, &certs, 2).is_ok());
    }

    #[test]
    fn example_leading_terms_are_coprime() {
        let r = verify_coprime_leading_terms(&example(), 2, &Limits::default()).unwrap();
        assert!(r.pairwise_coprime && r.squarefree && r.matches_closed_form);
    }

    #[test]
    fn dialect_parsing() {
        assert_eq!("Singular".parse::<Dialect>(), Ok(Dialect::Singular));
        assert!(matches!("maple".parse::<Dialect>(), Err(PolyError::UnknownDialect(_))));
    }

    #[test]
    fn scripts_are_stable() {
        let g = named_graph("C4").unwrap();
        let a = export_cas_script(&g, 2, false, Dialect::Macaulay2);
        assert_eq!(a, export_cas_script(&g, 2, false, Dialect::Macaulay2));
        assert_eq!(a.matches("x_(").count() > 0, true);
        let p2 = named_graph("P2").unwrap();
        let s = export_cas_script(&p2, 1, true, Dialect::Singular);
        assert!(s.contains("  x(1)(1)*x(2)(2) - x(1)(2)*x(2)(1);\n"));
    }
}
