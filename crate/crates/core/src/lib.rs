//! Mining high-utility patterns from interval-based event sequences.
//!
//! Interval data is first rewritten as coincidence eventset sequences
//! ([`cer`]): each window between consecutive distinct time points becomes a
//! `(labels, duration)` pair. Patterns are ordered lists of label sets whose
//! utility is the best-priced embedding per sequence, summed over the
//! database ([`utility`]). The [`miner`] finds every pattern whose utility
//! meets a threshold, pruning with an anti-monotone upper bound, and the
//! [`oracle`] recomputes the same answer by exhaustive enumeration.

pub mod cer;
pub mod cli;
pub mod fixtures;
pub mod io;
pub mod miner;
pub mod model;
pub mod oracle;
pub mod utility;

pub use cer::{to_c_database, to_c_sequence};
pub use miner::{mine, MineResult, MinerConfig, Pruning, ThresholdMode};
pub use model::{
    Alphabet, CSequence, CSequenceDatabase, Coincidence, ESequence, ESequenceDatabase, LSequence,
    LabelPrices, PatternResult, UtilityTable,
};
