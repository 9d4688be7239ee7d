//! Suites shared by the benchmarks.

use pairid::algebra::{GroupSuite, Transparent};
use pairid::curve::{CurveParams, TateBackend};

pub fn transparent_suite(p: u64) -> GroupSuite<Transparent> {
    GroupSuite::new(Transparent::new(p).expect("prime order"))
}

/// The curve suites, smallest field first.
pub fn curve_suites() -> Vec<(&'static str, GroupSuite<TateBackend>)> {
    [("q59", CurveParams::q59()), ("q83", CurveParams::q83()), ("q523", CurveParams::q523())]
        .into_iter()
        .map(|(name, params)| (name, GroupSuite::new(TateBackend::new(params))))
        .collect()
}
