//! Per-session bandwidth and operation counts, measured from real sessions
//! and compared against the expected cost table.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::algebra::{Backend, GroupSuite, OpCounts};
use crate::id::session::run_session_detailed;
use crate::id::{keygen, SchemeError, SchemeId};

#[derive(Debug, Error)]
pub enum CostError {
    #[error("need at least one session")]
    NoSessions,
    #[error("{scheme}: session {session} cost {found}, first session cost {first}")]
    NonDeterministicCosts { scheme: SchemeId, session: u64, first: Box<CostRow>, found: Box<CostRow> },
    #[error("{scheme}: honest session {session} rejected")]
    HonestReject { scheme: SchemeId, session: u64 },
    #[error("{scheme}: every session aborted")]
    AllAborted { scheme: SchemeId },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// One row of the cost table. Bandwidth counts both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostRow {
    pub scheme: SchemeId,
    pub g1: u64,
    pub g2: u64,
    pub zp: u64,
    /// `{0,1}^n` strings, printed as `1*` in the `Z_p` column.
    pub bits: u64,
    pub prover: OpCounts,
    pub verifier: OpCounts,
}

const fn ops(g1_exp: u64, g2_exp: u64, pairings: u64) -> OpCounts {
    OpCounts { g1_exp, g2_exp, pairings }
}

const fn row(scheme: SchemeId, bw: [u64; 4], prover: OpCounts, verifier: OpCounts) -> CostRow {
    CostRow { scheme, g1: bw[0], g2: bw[1], zp: bw[2], bits: bw[3], prover, verifier }
}

/// The expected row for `scheme`.
pub fn expected_row(scheme: SchemeId) -> CostRow {
    match scheme {
        SchemeId::Blsid => row(scheme, [1, 0, 0, 1], ops(1, 0, 0), ops(0, 0, 2)),
        SchemeId::Cdhid => row(scheme, [2, 0, 0, 0], ops(1, 0, 0), ops(0, 0, 2)),
        SchemeId::Sdhid => row(scheme, [1, 0, 2, 0], ops(1, 0, 0), ops(2, 0, 1)),
        SchemeId::Owfid => row(scheme, [1, 1, 2, 0], ops(1, 1, 1), ops(0, 2, 1)),
        SchemeId::Scl => row(scheme, [2, 0, 1, 0], ops(2, 0, 0), ops(1, 0, 1)),
        SchemeId::Hls => row(scheme, [1, 1, 1, 0], ops(2, 1, 0), ops(0, 1, 1)),
    }
}

/// `"1P, 2V"` style cell; `"0"` when neither side computes.
pub fn format_ops(prover: u64, verifier: u64) -> String {
    let mut parts = Vec::new();
    if prover > 0 {
        parts.push(format!("{prover}P"));
    }
    if verifier > 0 {
        parts.push(format!("{verifier}V"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

impl CostRow {
    pub fn zp_cell(&self) -> String {
        match (self.zp, self.bits) {
            (z, 0) => z.to_string(),
            (0, b) => format!("{b}*"),
            (z, b) => format!("{z} + {b}*"),
        }
    }

    /// Cells in table order: G1, G2, Z_p, G1 exp., G2 exp., pairings.
    pub fn cells(&self) -> [String; 6] {
        [
            self.g1.to_string(),
            self.g2.to_string(),
            self.zp_cell(),
            format_ops(self.prover.g1_exp, self.verifier.g1_exp),
            format_ops(self.prover.g2_exp, self.verifier.g2_exp),
            format_ops(self.prover.pairings, self.verifier.pairings),
        ]
    }
}

impl fmt::Display for CostRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.cells();
        write!(f, "{:<6} {:>3} {:>3} {:>4}  {:<8} {:<8} {:<8}", self.scheme.name(), c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

/// Measured costs for one scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMeasurement {
    pub row: CostRow,
    /// Encoded bytes on the wire per session.
    pub bytes: u64,
    pub sessions: u64,
    /// SCL sessions where the prover aborted; excluded from the counts.
    pub aborts: u64,
    /// SDHID nonce redraws summed over all sessions.
    pub redraws: u64,
}

impl CostMeasurement {
    pub fn matches_expected(&self) -> bool {
        self.row == expected_row(self.row.scheme)
    }
}

/// Runs `sessions` honest sessions with fresh counters each and checks that
/// every completed session costs the same.
pub fn bench_costs<B: Backend>(
    scheme: SchemeId,
    suite: &GroupSuite<B>,
    sessions: u64,
    seed: u64,
) -> Result<CostMeasurement, CostError> {
    if sessions == 0 {
        return Err(CostError::NoSessions);
    }
    let suite = suite.fork();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let key = keygen(scheme, &suite, &mut rng)?;
    let mut first: Option<(CostRow, u64)> = None;
    let mut aborts = 0;
    let mut redraws = 0;
    for i in 0..sessions {
        suite.reset_counters();
        let out = run_session_detailed(scheme, &key, &suite, seed.wrapping_add(i))?;
        redraws += out.redraws as u64;
        if !out.transcript.decision.is_accept() {
            if out.transcript.response.is_empty() {
                aborts += 1;
                continue;
            }
            return Err(CostError::HonestReject { scheme, session: i });
        }
        let c = suite.counters();
        let bw = c.bandwidth();
        let found =
            CostRow { scheme, g1: bw.g1, g2: bw.g2, zp: bw.zp, bits: bw.bits, prover: c.prover, verifier: c.verifier };
        match first {
            None => first = Some((found, bw.bytes)),
            Some((row, _)) if row != found => {
                return Err(CostError::NonDeterministicCosts {
                    scheme,
                    session: i,
                    first: Box::new(row),
                    found: Box::new(found),
                });
            }
            Some(_) => {}
        }
    }
    let (row, bytes) = first.ok_or(CostError::AllAborted { scheme })?;
    Ok(CostMeasurement { row, bytes, sessions, aborts, redraws })
}

/// Measured rows for several schemes on one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    pub backend: String,
    pub p: u64,
    pub rows: Vec<CostMeasurement>,
}

impl CostTable {
    pub fn measure<B: Backend>(
        suite: &GroupSuite<B>,
        schemes: &[SchemeId],
        sessions: u64,
        seed: u64,
    ) -> Result<Self, CostError> {
        let rows = schemes.iter().map(|s| bench_costs(*s, suite, sessions, seed)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { backend: suite.kind().name().into(), p: suite.order(), rows })
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(CostMeasurement::matches_expected)
    }
}

impl fmt::Display for CostTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "backend {} p={}", self.backend, self.p)?;
        writeln!(
            f,
            "{:<9}{:<6} {:>3} {:>3} {:>4}  {:<8} {:<8} {:<8} {:>5}  notes",
            "", "scheme", "G1", "G2", "Zp", "G1 exp", "G2 exp", "pairing", "bytes"
        )?;
        for m in &self.rows {
            let mut notes = vec![format!("sessions={}", m.sessions)];
            if m.aborts > 0 {
                notes.push(format!("aborts={}", m.aborts));
            }
            if m.row.scheme == SchemeId::Sdhid {
                notes.push(format!("redraws={}", m.redraws));
            }
            writeln!(f, "{:<9}{} {:>5}  {}", "measured", m.row, m.bytes, notes.join(" "))?;
            writeln!(f, "{:<9}{}", "expected", expected_row(m.row.scheme))?;
            writeln!(f, "{:<9}{}", "", if m.matches_expected() { "match" } else { "MISMATCH" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Transparent;
    use crate::curve::{CurveParams, TateBackend};

    #[test]
    fn cells_render_like_the_table() {
        assert_eq!(expected_row(SchemeId::Owfid).cells(), ["1", "1", "2", "1P", "1P, 2V", "1P, 1V"]);
        assert_eq!(expected_row(SchemeId::Blsid).cells(), ["1", "0", "1*", "1P", "0", "2V"]);
        assert_eq!(expected_row(SchemeId::Scl).cells(), ["2", "0", "1", "2P, 1V", "0", "1V"]);
        assert_eq!(expected_row(SchemeId::Hls).cells(), ["1", "1", "1", "2P", "1P, 1V", "1V"]);
    }

    #[test]
    fn measured_rows_equal_expected_transparent() {
        let suite = GroupSuite::new(Transparent::new(1009).unwrap());
        let table = CostTable::measure(&suite, &SchemeId::ALL, 50, 1).unwrap();
        for m in &table.rows {
            assert_eq!(m.row, expected_row(m.row.scheme));
        }
        assert!(table.all_match());
        assert!(table.to_string().contains("match"));
    }

    #[test]
    fn measured_rows_equal_expected_curve() {
        let suite = GroupSuite::new(TateBackend::new(CurveParams::q83()));
        let table = CostTable::measure(&suite, &SchemeId::ALL, 10, 2).unwrap();
        assert!(table.all_match(), "{table}");
    }

    #[test]
    fn zero_sessions_is_an_error() {
        let suite = GroupSuite::new(Transparent::new(11).unwrap());
        assert!(matches!(bench_costs(SchemeId::Cdhid, &suite, 0, 0), Err(CostError::NoSessions)));
    }
}
