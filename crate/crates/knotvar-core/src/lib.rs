//! Exact computational laboratory for torus-knot representation varieties.
//!
//! The crate counts points of `Rep_{m,n}(G) = {(A,B) in G^2 : A^n = B^m}` for
//! `G` one of `GL1`, `GL2`, `AGL1`, `AGL2` over small finite fields, builds the
//! closed-form motives for the AGL cases as exact polynomials in `q`, `xi_m`,
//! `xi_n`, classifies representation points into strata, and scans counting
//! trends across prime powers.
//!
//! Everything is exact: arbitrary-precision integers throughout, no floating
//! point. Brute-force enumeration engines serve as ground truth against which
//! the closed forms are measured.

pub mod closedform;
pub mod error;
pub mod exactpoly;
pub mod ffield;
pub mod matgroups;
pub mod repcount;
pub mod strata;
pub mod trends;

pub use error::{Error, Result};

/// Enumeration bound for group element streams, overridable through the
/// `KNOTVAR_MAX_GROUP_ORDER` environment variable.
pub fn max_group_order() -> u64 {
    std::env::var("KNOTVAR_MAX_GROUP_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1 << 30)
}
