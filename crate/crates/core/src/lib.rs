//! Pairing-based identification schemes.
//!
//! Six challenge-response identification protocols over a symmetric
//! bilinear pairing, the BLS and Boneh-Boyen signatures two of them derive
//! from, executable versions of their security reductions, and the framed
//! wire protocol and cost accounting used by the `pairid` command line tool.
//!
//! Everything is generic over [`algebra::Backend`]. Use
//! [`algebra::Transparent`] when you want every group element to be its own
//! discrete log, and [`curve::TateBackend`] for a real pairing on a small
//! supersingular curve.

pub mod algebra;
pub mod checks;
pub mod cost;
pub mod curve;
pub mod files;
pub mod id;
pub mod lab;
pub mod record;
pub mod report;
pub mod sig;
pub mod stats;
pub mod wire;
