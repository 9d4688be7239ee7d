//! Executable reductions: oracle games, rewinding, pairing inversion and
//! the relay demonstration.
//!
//! Every attacker is a deterministic function of a seed and the messages
//! it receives, so rewinding is replay with the same seed.

pub mod agreement;
mod attack;
mod attackers;
mod extract;
mod forgery;
mod heavy;
mod inversion;
mod mitm;
mod omcdh;
pub mod soundness;

use thiserror::Error;

use crate::id::SchemeError;
use crate::sig::GameError;

pub use attack::{
    attack_rngs, estimate_success, run_attack, AttackRun, AttackerPair, HonestProver, ProverBackend, ProverOracle,
    Rewinder,
};
pub use attackers::{garbage_response, recover_key, ScriptedAttacker};
pub use extract::{owfid_extractor, owfid_inverter, probe_strategy, InverterConfig, ProbeMode};
pub use forgery::{blsid_forgery_reduction, BlsidReduction};
pub use heavy::{heavy_mass_from_counts, heavy_row_stats, HeavyRowReport, SummaryMatrix};
pub use inversion::{invert_to_cdh, invert_to_ddh, NoisyInverter, PairingInverter, PerfectInverter};
pub use mitm::{mitm_relay_demo, MitmReport};
pub use omcdh::{
    cdhid_reduction, cdhid_reduction_counted, om_cdh_game, CdhidReduction, LateQueryAdversary, OmCdhAdversary,
    OmCdhOracle, OmniscientCdhAdversary, RandomGuessAdversary,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("{oracle} oracle budget of {limit} exhausted")]
    BudgetExceeded { oracle: &'static str, limit: u64 },
    #[error("CDH oracle called after the challenge oracle")]
    OrderingViolation,
    #[error("attacker's interaction was rejected")]
    AttackFailed,
    #[error("simulated challenge collides with a signing query")]
    FreshnessCollision,
    #[error("no accepting pair within the probe budget")]
    ProbeFailed,
    #[error("extracted witness equals the simulation key")]
    SameWitness,
    #[error("malformed transcripts: {0}")]
    MalformedTranscripts(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inversion failed: {0}")]
    InversionFailed(Box<LabError>),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Game(#[from] GameError),
}
