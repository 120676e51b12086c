//! Combinatorial and symbolic machinery for Lovász–Saks–Schrijver (LSS) ideals.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure computation:
//!
//! - [`graph`]: canonical simple graphs on `1..=n`, parsing, generators and shape detection.
//! - [`matching`]: positive matchings, alternating closed walks and exact weight certificates.
//! - [`lp`]: a small exact-rational simplex used to decide strict homogeneous systems.
//! - [`pmd`]: positive matching decompositions and the exact `pmd` search.
//! - [`twisted`]: twisted matching decompositions, the stage graphs `H_q` and exact `tpmd`.
//! - [`poly`]: LSS / twisted LSS generators, stage-weight term orders, leading terms and
//!   CAS script export.
//! - [`classify`]: cited verdicts for CI / ACI / radical / prime status.
//! - [`regularity`]: regularity formulas and bounds for powers, and Koszulness.
#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod graph;
pub mod limits;
pub mod lp;
pub mod matching;
pub mod pmd;
pub mod poly;
pub mod regularity;
pub mod twisted;

pub use graph::{Edge, Graph, GraphError, GraphShape, ShapeKind, Vertex};
pub use limits::Limits;
pub use matching::{Matching, MatchingError, WeightCertificate};
pub use pmd::{PmDecomposition, PmdError};
pub use twisted::{HqGraph, TwistedDecomposition, TwistedError, TwistedWeightCertificate};
