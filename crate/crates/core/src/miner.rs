//! Two-phase high-utility pattern miner.
//!
//! The coincident phase grows single coincidences label by label up to the
//! maximum size; the serial phase chains the promising coincidences into
//! patterns up to the maximum length. A candidate is *promising* when it
//! occurs in the database and its upper bound meets the threshold; only
//! promising candidates seed the next round.
//!
//! The default bound is the pattern-weighted utilization (sum over containing
//! sequences of their top-K eventset utilities). It never increases when a
//! pattern grows, so discarding candidates below the threshold cannot lose a
//! high-utility pattern.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::cer::to_c_database;
use crate::model::{
    sort_patterns, CSequenceDatabase, Coincidence, ESequenceDatabase, LSequence, LabelId,
    LabelPrices, ModelError, PatternResult, UtilityTable,
};
use crate::utility::{csequence_utility, database_utility, max_k_utility, max_match_utility, sum};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinerError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThresholdMode {
    /// Threshold is a fraction of the database utility.
    #[default]
    Relative,
    /// Threshold is a utility value.
    Absolute,
}

/// Upper bound used to discard unpromising candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Pruning {
    /// Top-K eventset utilities of containing sequences.
    #[default]
    Ldcp,
    /// Whole utility of containing sequences.
    Sdcp,
    /// Keep every candidate that occurs.
    None,
}

impl Pruning {
    pub const ALL: [Pruning; 3] = [Pruning::Ldcp, Pruning::Sdcp, Pruning::None];
}

impl fmt::Display for Pruning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pruning::Ldcp => "ldcp",
            Pruning::Sdcp => "sdcp",
            Pruning::None => "none",
        })
    }
}

impl FromStr for Pruning {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ldcp" => Ok(Pruning::Ldcp),
            "sdcp" => Ok(Pruning::Sdcp),
            "none" => Ok(Pruning::None),
            other => Err(format!("unknown pruning mode {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinerConfig {
    pub threshold: f64,
    pub threshold_mode: ThresholdMode,
    /// Maximum pattern length K.
    pub max_length: usize,
    /// Maximum coincidence size Z.
    pub max_size: usize,
    pub pruning: Pruning,
}

impl MinerConfig {
    pub fn absolute(threshold: f64, max_length: usize, max_size: usize) -> Self {
        MinerConfig {
            threshold,
            threshold_mode: ThresholdMode::Absolute,
            max_length,
            max_size,
            pruning: Pruning::Ldcp,
        }
    }

    pub fn relative(threshold: f64, max_length: usize, max_size: usize) -> Self {
        MinerConfig {
            threshold_mode: ThresholdMode::Relative,
            ..Self::absolute(threshold, max_length, max_size)
        }
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn validate(&self) -> Result<(), MinerError> {
        let invalid = |msg: String| Err(MinerError::InvalidConfig(msg));
        if self.max_length < 1 {
            return invalid("maximum length must be at least 1".into());
        }
        if self.max_size < 1 {
            return invalid("maximum size must be at least 1".into());
        }
        if !self.threshold.is_finite() || self.threshold < 0.0 {
            return invalid(format!("threshold {} must be a non-negative number", self.threshold));
        }
        if self.threshold_mode == ThresholdMode::Relative && self.threshold > 1.0 {
            return invalid(format!("relative threshold {} exceeds 1", self.threshold));
        }
        Ok(())
    }

    /// The threshold as a utility value for a database worth `total_utility`.
    pub fn absolute_threshold(&self, total_utility: f64) -> f64 {
        match self.threshold_mode {
            ThresholdMode::Absolute => self.threshold,
            ThresholdMode::Relative => self.threshold * total_utility,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Coincident,
    Serial,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Coincident => "coincident",
            Phase::Serial => "serial",
        })
    }
}

/// Bookkeeping for one generation round.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundStats {
    pub phase: Phase,
    /// Coincidence size (coincident phase) or pattern length (serial phase).
    pub round: usize,
    pub generated: usize,
    pub pruned: usize,
    pub promising: usize,
    pub high_utility: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CandidateStats {
    pub rounds: Vec<RoundStats>,
}

impl CandidateStats {
    pub fn round(&self, phase: Phase, round: usize) -> Option<&RoundStats> {
        self.rounds.iter().find(|r| r.phase == phase && r.round == round)
    }

    /// Candidates generated in a round; 0 for rounds that never ran.
    pub fn generated(&self, phase: Phase, round: usize) -> usize {
        self.round(phase, round).map_or(0, |r| r.generated)
    }

    pub fn total_generated(&self) -> usize {
        self.rounds.iter().map(|r| r.generated).sum()
    }
}

/// Everything the miner measures about one candidate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PatternEvaluation {
    pub max_utility: f64,
    pub lwu: f64,
    pub sdcp: f64,
    pub support: usize,
}

/// Evaluates candidates against a fixed database, caching per-sequence
/// top-K and total utilities.
pub struct Evaluator<'a> {
    db: &'a CSequenceDatabase,
    prices: &'a LabelPrices,
    top_k: Vec<f64>,
    totals: Vec<f64>,
}

impl<'a> Evaluator<'a> {
    pub fn new(db: &'a CSequenceDatabase, prices: &'a LabelPrices, max_length: usize) -> Self {
        let top_k = db
            .sequences()
            .iter()
            .map(|c| max_k_utility(c, max_length, prices))
            .collect();
        let totals = db
            .sequences()
            .iter()
            .map(|c| csequence_utility(c, prices))
            .collect();
        Evaluator {
            db,
            prices,
            top_k,
            totals,
        }
    }

    pub fn evaluate(&self, pattern: &LSequence) -> PatternEvaluation {
        let mut max_utility = 0.0;
        let mut lwu = 0.0;
        let mut sdcp = 0.0;
        let mut support = 0;
        for (i, c) in self.db.sequences().iter().enumerate() {
            if let Some(u) = max_match_utility(pattern, c, self.prices) {
                max_utility += u;
                lwu += self.top_k[i];
                sdcp += self.totals[i];
                support += 1;
            }
        }
        PatternEvaluation {
            max_utility,
            lwu,
            sdcp,
            support,
        }
    }
}

/// Whole-sequence bound: total utility of the sequences containing `pattern`.
pub fn sdcp_bound(pattern: &LSequence, db: &CSequenceDatabase, prices: &LabelPrices) -> f64 {
    sum(db
        .sequences()
        .iter()
        .filter(|c| max_match_utility(pattern, c, prices).is_some())
        .map(|c| csequence_utility(c, prices)))
}

/// Size-(z+1) coincidences `c ∪ {l}` for `c` in `promising` and `l` in
/// `new_labels` greater than every label of `c`. Each result is produced once.
pub fn ccandidate(promising: &[Coincidence], new_labels: &BTreeSet<LabelId>) -> Vec<Coincidence> {
    let mut out = BTreeSet::new();
    for c in promising {
        let floor = c.max_label();
        for &l in new_labels.iter().filter(|&&l| Some(l) > floor) {
            out.insert(c.with(l));
        }
    }
    out.into_iter().collect()
}

/// Every `p` in `promising` followed by every coincidence in `new_tails`.
pub fn scandidate(promising: &[LSequence], new_tails: &BTreeSet<Coincidence>) -> Vec<LSequence> {
    let mut out = BTreeSet::new();
    for p in promising {
        for tail in new_tails {
            out.insert(p.then(tail));
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoincidentOutcome {
    /// High-utility single-coincidence patterns of every size up to Z.
    pub hucp: Vec<PatternResult>,
    /// Promising coincidences of every size up to Z.
    pub wucp: BTreeSet<Coincidence>,
    pub stats: Vec<RoundStats>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SerialOutcome {
    pub husp: Vec<PatternResult>,
    pub stats: Vec<RoundStats>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MineResult {
    pub hucp: Vec<PatternResult>,
    pub husp: Vec<PatternResult>,
    pub stats: CandidateStats,
    /// Threshold actually applied, as a utility value.
    pub threshold: f64,
    /// Labels priced with the default utility.
    pub defaulted_labels: Vec<String>,
}

impl MineResult {
    /// All high-utility patterns ordered by length, then canonical text.
    pub fn patterns(&self) -> Vec<PatternResult> {
        self.hucp.iter().chain(&self.husp).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.hucp.len() + self.husp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hucp.is_empty() && self.husp.is_empty()
    }
}

struct RoundOutcome {
    high_utility: Vec<PatternResult>,
    promising: Vec<LSequence>,
    stats: RoundStats,
}

/// A configured run over one C-sequence database.
pub struct Miner<'a> {
    evaluator: Evaluator<'a>,
    db: &'a CSequenceDatabase,
    cfg: MinerConfig,
    threshold: f64,
}

impl<'a> Miner<'a> {
    pub fn new(
        db: &'a CSequenceDatabase,
        prices: &'a LabelPrices,
        cfg: &MinerConfig,
    ) -> Result<Self, MinerError> {
        cfg.validate()?;
        let threshold = cfg.absolute_threshold(database_utility(db, prices));
        Ok(Miner {
            evaluator: Evaluator::new(db, prices, cfg.max_length),
            db,
            cfg: cfg.clone(),
            threshold,
        })
    }

    /// The resolved absolute threshold.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    fn bound(&self, eval: &PatternEvaluation) -> f64 {
        match self.cfg.pruning {
            Pruning::Ldcp => eval.lwu,
            Pruning::Sdcp => eval.sdcp,
            Pruning::None => f64::INFINITY,
        }
    }

    fn run_round(&self, phase: Phase, round: usize, candidates: Vec<LSequence>) -> RoundOutcome {
        let started = Instant::now();
        let evaluations: Vec<PatternEvaluation> = candidates
            .par_iter()
            .map(|c| self.evaluator.evaluate(c))
            .collect();
        let generated = candidates.len();
        let mut high_utility = Vec::new();
        let mut promising = Vec::new();
        for (candidate, eval) in candidates.into_iter().zip(evaluations) {
            // a pattern without any embedding is neither reported nor extended
            if eval.support == 0 {
                continue;
            }
            if eval.max_utility >= self.threshold {
                high_utility.push(PatternResult {
                    pattern: candidate.clone(),
                    max_utility: eval.max_utility,
                    support: eval.support,
                });
            }
            if self.bound(&eval) >= self.threshold {
                promising.push(candidate);
            }
        }
        let stats = RoundStats {
            phase,
            round,
            generated,
            pruned: generated - promising.len(),
            promising: promising.len(),
            high_utility: high_utility.len(),
            elapsed: started.elapsed(),
        };
        RoundOutcome {
            high_utility,
            promising,
            stats,
        }
    }

    pub fn coincident_phase(&self) -> CoincidentOutcome {
        let mut hucp = Vec::new();
        let mut wucp = BTreeSet::new();
        let mut stats = Vec::new();
        let mut candidates: Vec<Coincidence> = self
            .db
            .occurring_labels()
            .into_iter()
            .map(Coincidence::singleton)
            .collect();
        let mut size = 1;
        while size <= self.cfg.max_size && !candidates.is_empty() {
            let patterns = candidates
                .into_iter()
                .map(|c| LSequence::single(c).expect("candidates are non-empty"))
                .collect();
            let outcome = self.run_round(Phase::Coincident, size, patterns);
            hucp.extend(outcome.high_utility);
            stats.push(outcome.stats);

            let promising: Vec<Coincidence> = outcome
                .promising
                .into_iter()
                .map(|p| p.last().clone())
                .collect();
            let new_labels: BTreeSet<LabelId> = promising
                .iter()
                .flat_map(|c| c.labels().iter().copied())
                .collect();
            wucp.extend(promising.iter().cloned());
            size += 1;
            candidates = if size <= self.cfg.max_size {
                ccandidate(&promising, &new_labels)
            } else {
                Vec::new()
            };
        }
        CoincidentOutcome { hucp, wucp, stats }
    }

    /// Chains promising coincidences into patterns of length 2..=K.
    ///
    /// The first round takes every pair from `wucp`, which is the union of the
    /// per-seed candidate sets.
    pub fn serial_phase(&self, wucp: &BTreeSet<Coincidence>) -> SerialOutcome {
        let mut husp = Vec::new();
        let mut stats = Vec::new();
        let mut length = 2;
        if self.cfg.max_length < length {
            return SerialOutcome { husp, stats };
        }
        let seeds: Vec<LSequence> = wucp
            .iter()
            .map(|w| LSequence::single(w.clone()).expect("promising coincidences are non-empty"))
            .collect();
        let mut candidates = scandidate(&seeds, wucp);
        while length <= self.cfg.max_length && !candidates.is_empty() {
            let outcome = self.run_round(Phase::Serial, length, candidates);
            husp.extend(outcome.high_utility);
            stats.push(outcome.stats);
            let new_tails: BTreeSet<Coincidence> =
                outcome.promising.iter().map(|p| p.last().clone()).collect();
            length += 1;
            candidates = if length <= self.cfg.max_length {
                scandidate(&outcome.promising, &new_tails)
            } else {
                Vec::new()
            };
        }
        SerialOutcome { husp, stats }
    }

    pub fn run(&self) -> MineResult {
        let coincident = self.coincident_phase();
        let serial = self.serial_phase(&coincident.wucp);
        let alphabet = self.db.alphabet();
        let mut hucp = coincident.hucp;
        let mut husp = serial.husp;
        sort_patterns(&mut hucp, alphabet);
        sort_patterns(&mut husp, alphabet);
        let mut rounds = coincident.stats;
        rounds.extend(serial.stats);
        MineResult {
            hucp,
            husp,
            stats: CandidateStats { rounds },
            threshold: self.threshold,
            defaulted_labels: Vec::new(),
        }
    }
}

/// Coincident phase over `db` with the threshold resolved from `cfg`.
pub fn coincident_phase(
    db: &CSequenceDatabase,
    prices: &LabelPrices,
    cfg: &MinerConfig,
) -> Result<CoincidentOutcome, MinerError> {
    Ok(Miner::new(db, prices, cfg)?.coincident_phase())
}

/// Serial phase over `db` seeded with `wucp`.
pub fn serial_phase(
    db: &CSequenceDatabase,
    prices: &LabelPrices,
    wucp: &BTreeSet<Coincidence>,
    cfg: &MinerConfig,
) -> Result<SerialOutcome, MinerError> {
    Ok(Miner::new(db, prices, cfg)?.serial_phase(wucp))
}

/// Mines an already converted database.
pub fn mine_c_database(
    db: &CSequenceDatabase,
    prices: &LabelPrices,
    cfg: &MinerConfig,
) -> Result<MineResult, MinerError> {
    Ok(Miner::new(db, prices, cfg)?.run())
}

/// Converts `db`, prices its labels with `utilities`, and mines it.
pub fn mine(
    db: &ESequenceDatabase,
    utilities: &UtilityTable,
    cfg: &MinerConfig,
) -> Result<MineResult, MinerError> {
    cfg.validate()?;
    let resolved = utilities.resolve(db.alphabet())?;
    let cdb = to_c_database(db);
    let mut result = mine_c_database(&cdb, &resolved.prices, cfg)?;
    result.defaulted_labels = resolved.defaulted;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::Alphabet;

    fn co(a: &Alphabet, names: &[&str]) -> Coincidence {
        Coincidence::from_names(a, names).unwrap()
    }

    fn texts(a: &Alphabet, cs: &[Coincidence]) -> Vec<String> {
        cs.iter().map(|c| c.display(a).to_string()).collect()
    }

    #[test]
    fn config_validation() {
        assert!(MinerConfig::absolute(14.0, 2, 2).validate().is_ok());
        assert!(MinerConfig::relative(1.5, 2, 2).validate().is_err());
        assert!(MinerConfig::relative(1.0, 2, 2).validate().is_ok());
        assert!(MinerConfig::absolute(-1.0, 2, 2).validate().is_err());
        assert!(MinerConfig::absolute(f64::NAN, 2, 2).validate().is_err());
        assert!(MinerConfig::absolute(1.0, 0, 2).validate().is_err());
        assert!(MinerConfig::absolute(1.0, 2, 0).validate().is_err());
        assert_eq!(MinerConfig::relative(0.25, 1, 1).absolute_threshold(116.0), 29.0);
    }

    #[test]
    fn ccandidate_examples() {
        let a = Alphabet::new(["A", "B", "C", "D", "E", "F"]).unwrap();
        let ab = co(&a, &["A", "B"]);
        let ac = co(&a, &["A", "C"]);
        let merged = ccandidate(&[ab], &ac.labels().iter().copied().collect());
        assert_eq!(texts(&a, &merged), ["{A,B,C}"]);

        let p: Vec<_> = ["A", "B", "C", "E"].iter().map(|n| co(&a, &[n])).collect();
        let labels = p.iter().flat_map(|c| c.labels().to_vec()).collect();
        let out = ccandidate(&p, &labels);
        assert_eq!(
            texts(&a, &out),
            ["{A,B}", "{A,C}", "{A,E}", "{B,C}", "{B,E}", "{C,E}"]
        );
        assert!(ccandidate(&[], &labels).is_empty());
    }

    #[test]
    fn scandidate_examples() {
        let a = Alphabet::new(["A", "B", "C", "D", "E", "F"]).unwrap();
        let l = LSequence::from_names(&a, &[&["A", "B"], &["A", "C"]]).unwrap();
        let r = LSequence::from_names(&a, &[&["E"], &["D", "C", "F"]]).unwrap();
        assert_eq!(
            l.concat(&r).canonical_text(&a),
            "{A,B}->{A,C}->{E}->{C,D,F}"
        );

        let p = vec![LSequence::from_names(&a, &[&["A"]]).unwrap()];
        let tails: BTreeSet<_> = [co(&a, &["A"]), co(&a, &["B"])].into_iter().collect();
        let out: Vec<_> = scandidate(&p, &tails).iter().map(|l| l.canonical_text(&a)).collect();
        assert_eq!(out, ["{A}->{A}", "{A}->{B}"]);
        assert!(scandidate(&p, &BTreeSet::new()).is_empty());
    }

    #[test]
    fn sdcp_examples() {
        let cdb = to_c_database(&fixtures::example_database());
        let a = cdb.alphabet();
        let ones = LabelPrices::uniform(a, 1.0);
        let only_a = LSequence::from_names(a, &[&["A"]]).unwrap();
        // all-ones u_s per sequence: 17, 16, 21, 25
        assert_eq!(sdcp_bound(&only_a, &cdb, &ones), 79.0);
        let absent = LSequence::from_names(a, &[&["F"], &["B"]]).unwrap();
        assert_eq!(sdcp_bound(&absent, &cdb, &ones), 0.0);
    }

    #[test]
    fn worked_coincident_round() {
        let cdb = to_c_database(&fixtures::example_database());
        let a = cdb.alphabet().clone();
        let ones = LabelPrices::uniform(&a, 1.0);
        let cfg = MinerConfig::absolute(14.0, 2, 2);
        let miner = Miner::new(&cdb, &ones, &cfg).unwrap();
        let expected = [
            ("A", 20.0, 51.0),
            ("B", 11.0, 38.0),
            ("C", 9.0, 51.0),
            ("D", 3.0, 12.0),
            ("E", 9.0, 51.0),
            ("F", 3.0, 13.0),
        ];
        for (label, u_max, lwu2) in expected {
            let e = miner
                .evaluator
                .evaluate(&LSequence::from_names(&a, &[&[label]]).unwrap());
            assert_eq!((e.max_utility, e.lwu), (u_max, lwu2), "label {label}");
        }
        let outcome = miner.coincident_phase();
        let first = &outcome.stats[0];
        assert_eq!((first.generated, first.promising, first.pruned), (6, 4, 2));
        let size1: Vec<_> = outcome
            .hucp
            .iter()
            .filter(|r| r.pattern.size() == 1)
            .map(|r| r.pattern.canonical_text(&a))
            .collect();
        assert_eq!(size1, ["{A}"]);
        assert!(!outcome.wucp.contains(&co(&a, &["D"])));
        assert!(!outcome.wucp.contains(&co(&a, &["F"])));
        // round 2 is built from {A},{B},{C},{E} only
        assert_eq!(outcome.stats[1].generated, 6);
    }

    #[test]
    fn threshold_above_total_yields_nothing() {
        let db = fixtures::example_database();
        let r = mine(&db, &fixtures::example_utilities(), &MinerConfig::absolute(117.0, 2, 2)).unwrap();
        assert!(r.is_empty());
        let cdb = to_c_database(&db);
        let prices = fixtures::example_utilities().resolve(cdb.alphabet()).unwrap().prices;
        let c = coincident_phase(&cdb, &prices, &MinerConfig::absolute(117.0, 2, 2)).unwrap();
        assert!(c.hucp.is_empty() && c.wucp.is_empty());
    }

    #[test]
    fn serial_phase_edges() {
        let cdb = to_c_database(&fixtures::example_database());
        let ones = LabelPrices::uniform(cdb.alphabet(), 1.0);
        let cfg = MinerConfig::absolute(14.0, 2, 2);
        let s = serial_phase(&cdb, &ones, &BTreeSet::new(), &cfg).unwrap();
        assert!(s.husp.is_empty() && s.stats.is_empty());

        let k1 = MinerConfig::absolute(0.0, 1, 2);
        let c = coincident_phase(&cdb, &ones, &k1).unwrap();
        assert!(!c.wucp.is_empty());
        let s = serial_phase(&cdb, &ones, &c.wucp, &k1).unwrap();
        assert!(s.husp.is_empty());
    }

    #[test]
    fn mine_orders_output_and_rejects_bad_config() {
        let db = fixtures::example_database();
        let r = mine(&db, &UtilityTable::all_ones(), &MinerConfig::absolute(14.0, 2, 2)).unwrap();
        let a = db.alphabet();
        let a_only = r.hucp.iter().find(|p| p.pattern.canonical_text(a) == "{A}").unwrap();
        assert_eq!(a_only.max_utility, 20.0);
        assert_eq!(a_only.support, 4);
        let all = r.patterns();
        for w in all.windows(2) {
            let key = |p: &PatternResult| (p.pattern.len(), p.pattern.canonical_text(a));
            assert!(key(&w[0]) < key(&w[1]));
        }
        assert!(mine(&db, &UtilityTable::all_ones(), &MinerConfig::relative(2.0, 2, 2)).is_err());
    }

    #[test]
    fn empty_database_mines_nothing() {
        let db = ESequenceDatabase::new(Default::default(), vec![]).unwrap();
        let r = mine(&db, &UtilityTable::all_ones(), &MinerConfig::relative(0.1, 3, 3)).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn reject_policy_surfaces_unmapped_labels() {
        let db = fixtures::example_database();
        let table = crate::model::UtilityTable::from_pairs(
            [("A", 1.0)],
            crate::model::DefaultPolicy::Reject,
        )
        .unwrap();
        let err = mine(&db, &table, &MinerConfig::absolute(1.0, 2, 2)).unwrap_err();
        assert!(matches!(err, MinerError::Model(ModelError::UnmappedLabel(_))));
    }
}
