//! Command-line front end for `lss-core`: graph input, JSON reports, CAS
//! export and the cross-oracle verification suites.

pub mod cli;
pub mod enumerate;
pub mod report;
pub mod verify;
