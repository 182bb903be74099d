//! Differential check of a miner against the brute-force oracle.

use std::fmt;

use crate::cer::to_c_database;
use crate::io;
use crate::miner::{mine, MinerConfig, Pruning};
use crate::model::{ESequenceDatabase, PatternResult, UtilityTable};

use super::random::{corpus, CorpusParams, RandomCase};
use super::{oracle_mine, OracleError, OracleLimits};

/// A miner under test.
pub type MinerFn<'a> =
    dyn Fn(&ESequenceDatabase, &UtilityTable, &MinerConfig) -> Result<Vec<PatternResult>, String> + Sync + 'a;

/// The production miner.
pub fn reference_miner(
    db: &ESequenceDatabase,
    utilities: &UtilityTable,
    cfg: &MinerConfig,
) -> Result<Vec<PatternResult>, String> {
    mine(db, utilities, cfg)
        .map(|r| r.patterns())
        .map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub runs: usize,
    pub pruning: Pruning,
    pub params: CorpusParams,
    pub limits: OracleLimits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            runs: 200,
            pruning: Pruning::Ldcp,
            params: CorpusParams::default(),
            limits: OracleLimits::default(),
        }
    }
}

/// A case where miner and oracle disagree.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub run: usize,
    /// Smallest failing variant found by dropping intervals.
    pub case: RandomCase,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum CaseOutcome {
    Agree,
    Skipped(String),
    Disagree {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub runs: usize,
    pub agreed: usize,
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn is_success(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} agree", self.agreed, self.runs)?;
        if self.skipped > 0 {
            write!(f, " ({} skipped by the explosion guard)", self.skipped)?;
        }
        for m in &self.mismatches {
            writeln!(f)?;
            writeln!(f, "run {} disagrees; minimal failing case:", m.run)?;
            write!(f, "{}", describe_case(&m.case))?;
            for p in &m.missing {
                writeln!(f, "  missing    {p}")?;
            }
            for p in &m.unexpected {
                writeln!(f, "  unexpected {p}")?;
            }
        }
        Ok(())
    }
}

/// Human-readable dump of a case: config, utilities, and input records.
pub fn describe_case(case: &RandomCase) -> String {
    let cfg = &case.cfg;
    let mut out = format!(
        "# threshold={} mode={:?} max_length={} max_size={} pruning={}\n",
        cfg.threshold, cfg.threshold_mode, cfg.max_length, cfg.max_size, cfg.pruning
    );
    for (label, u) in case.utilities.iter() {
        out.push_str(&format!("# utility {label}\t{u}\n"));
    }
    out.push_str(&io::esequence_db_to_string(&case.db));
    out
}

fn keyed(results: &[PatternResult], db: &ESequenceDatabase) -> Vec<String> {
    results
        .iter()
        .map(|r| {
            format!(
                "{}\t{}\t{}",
                r.pattern.canonical_text(db.alphabet()),
                r.max_utility,
                r.support
            )
        })
        .collect()
}

/// Runs both sides on one case.
pub fn compare_case(case: &RandomCase, miner: &MinerFn<'_>, limits: OracleLimits) -> CaseOutcome {
    let cdb = to_c_database(&case.db);
    let prices = match case.utilities.resolve(cdb.alphabet()) {
        Ok(r) => r.prices,
        Err(e) => return CaseOutcome::Skipped(e.to_string()),
    };
    let expected = match oracle_mine(&cdb, &prices, &case.cfg, limits) {
        Ok(v) => keyed(&v, &case.db),
        Err(e @ OracleError::TooLarge { .. }) => return CaseOutcome::Skipped(e.to_string()),
        Err(e) => {
            return CaseOutcome::Disagree {
                missing: vec![format!("oracle failed: {e}")],
                unexpected: vec![],
            }
        }
    };
    let actual = match miner(&case.db, &case.utilities, &case.cfg) {
        Ok(v) => keyed(&v, &case.db),
        Err(e) => {
            return CaseOutcome::Disagree {
                missing: vec![],
                unexpected: vec![format!("miner failed: {e}")],
            }
        }
    };
    if expected == actual {
        return CaseOutcome::Agree;
    }
    CaseOutcome::Disagree {
        missing: expected.iter().filter(|p| !actual.contains(p)).cloned().collect(),
        unexpected: actual.iter().filter(|p| !expected.contains(p)).cloned().collect(),
    }
}

/// Greedily drops intervals (and then whole sequences) while the case still
/// disagrees.
pub fn shrink(case: &RandomCase, miner: &MinerFn<'_>, limits: OracleLimits) -> RandomCase {
    let fails = |c: &RandomCase| matches!(compare_case(c, miner, limits), CaseOutcome::Disagree { .. });
    let mut current = case.clone();
    loop {
        let records = current.db.records();
        let mut improved = false;
        for skip in 0..records.len() {
            if records.len() == 1 {
                break;
            }
            let kept: Vec<_> = records
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, r)| r.clone())
                .collect();
            let Ok(db) = ESequenceDatabase::from_records(kept) else {
                continue;
            };
            let candidate = RandomCase {
                db,
                ..current.clone()
            };
            if fails(&candidate) {
                current = candidate;
                improved = true;
                break;
            }
        }
        if !improved {
            return current;
        }
    }
}

/// Generates `opts.runs` cases and checks `miner` against the oracle on each.
pub fn verify(opts: &VerifyOptions, miner: &MinerFn<'_>) -> VerifyReport {
    let mut report = VerifyReport {
        runs: opts.runs,
        ..Default::default()
    };
    for (run, mut case) in corpus(opts.seed, opts.runs, &opts.params).into_iter().enumerate() {
        case.cfg.pruning = opts.pruning;
        match compare_case(&case, miner, opts.limits) {
            CaseOutcome::Agree => report.agreed += 1,
            CaseOutcome::Skipped(_) => report.skipped += 1,
            CaseOutcome::Disagree { .. } => {
                let small = shrink(&case, miner, opts.limits);
                let (missing, unexpected) = match compare_case(&small, miner, opts.limits) {
                    CaseOutcome::Disagree {
                        missing,
                        unexpected,
                    } => (missing, unexpected),
                    _ => (vec![], vec![]),
                };
                report.mismatches.push(Mismatch {
                    run,
                    case: small,
                    missing,
                    unexpected,
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_miner_agrees_on_a_short_run() {
        let opts = VerifyOptions {
            runs: 25,
            seed: 11,
            ..Default::default()
        };
        let report = verify(&opts, &reference_miner);
        assert!(report.is_success(), "{report}");
        assert_eq!(report.agreed + report.skipped, 25);
    }

    #[test]
    fn corrupted_miner_is_caught_and_shrunk() {
        // drops every pattern of length 2 or more
        let broken = |db: &ESequenceDatabase, u: &UtilityTable, cfg: &MinerConfig| {
            reference_miner(db, u, cfg).map(|v| v.into_iter().filter(|r| r.pattern.len() == 1).collect())
        };
        let opts = VerifyOptions {
            runs: 30,
            seed: 5,
            ..Default::default()
        };
        let report = verify(&opts, &broken);
        assert!(!report.is_success());
        let m = &report.mismatches[0];
        assert!(!m.missing.is_empty());
        assert!(m.unexpected.is_empty());
        assert!(report.to_string().contains("minimal failing case"));
    }
}
