//! Brute-force reference miner.
//!
//! Enumerates every pattern that occurs in the database (up to the length and
//! size limits) by walking all ascending position tuples and all label
//! subsets of each host, then prices each pattern by trying every position
//! tuple. None of the matching code is shared with [`crate::utility`] or
//! [`crate::miner`]; only the per-label pricing primitive is reused.
//!
//! Intended for small inputs (about 10 sequences of 12 eventsets at most).

pub mod differential;
pub mod random;

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::miner::MinerConfig;
use crate::model::{
    sort_patterns, CSequence, CSequenceDatabase, Coincidence, LSequence, LabelId, LabelPrices,
    PatternResult,
};
use crate::utility::{database_utility, event_utility};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("enumeration would visit about {estimated} pattern instances, above the cap of {cap}")]
    TooLarge { estimated: u128, cap: u128 },
    #[error("{0}")]
    InvalidConfig(String),
}

/// Guard against combinatorial blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Maximum number of (position tuple, sub-coincidence choice) instances.
    pub max_instances: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_instances: 2_000_000,
        }
    }
}

/// Non-empty subsets of `labels` with at most `max_size` members.
fn sub_coincidences(labels: &[LabelId], max_size: usize) -> Vec<Coincidence> {
    let n = labels.len();
    assert!(n < 32, "coincidence too large for the oracle");
    (1u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize <= max_size)
        .map(|mask| {
            Coincidence::new(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| labels[i]),
            )
        })
        .collect()
}

fn subset_count(n: usize, max_size: usize) -> u128 {
    (1..=max_size.min(n)).map(|k| binomial(n, k)).sum()
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Ascending index tuples of length `len` over `0..n`.
fn index_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, len, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Number of pattern instances the enumeration would visit.
pub fn estimate_instances(db: &CSequenceDatabase, max_length: usize, max_size: usize) -> u128 {
    db.sequences()
        .iter()
        .map(|c| {
            // elementary symmetric sums of per-position choice counts
            let mut e = vec![0u128; max_length + 1];
            e[0] = 1;
            for es in &c.eventsets {
                let w = subset_count(es.coincidence.len(), max_size);
                for k in (1..=max_length).rev() {
                    e[k] = e[k].saturating_add(e[k - 1].saturating_mul(w));
                }
            }
            e[1..].iter().fold(0u128, |a, &b| a.saturating_add(b))
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Every pattern with length ≤ `max_length` and size ≤ `max_size` that has at
/// least one embedding in at least one sequence.
pub fn enumerate_patterns(
    db: &CSequenceDatabase,
    max_length: usize,
    max_size: usize,
    limits: OracleLimits,
) -> Result<BTreeSet<LSequence>, OracleError> {
    let estimated = estimate_instances(db, max_length, max_size);
    if estimated > limits.max_instances {
        return Err(OracleError::TooLarge {
            estimated,
            cap: limits.max_instances,
        });
    }
    let mut out = BTreeSet::new();
    for c in db.sequences() {
        let choices: Vec<Vec<Coincidence>> = c
            .eventsets
            .iter()
            .map(|e| sub_coincidences(e.coincidence.labels(), max_size))
            .collect();
        for len in 1..=max_length.min(c.len()) {
            for tuple in index_tuples(c.len(), len) {
                // cartesian product of the sub-coincidence choices
                let mut partial: Vec<Vec<Coincidence>> = vec![Vec::new()];
                for &j in &tuple {
                    partial = partial
                        .into_iter()
                        .flat_map(|prefix| {
                            choices[j].iter().map(move |sub| {
                                let mut next = prefix.clone();
                                next.push(sub.clone());
                                next
                            })
                        })
                        .collect();
                }
                for parts in partial {
                    out.insert(LSequence::new(parts).expect("sub-coincidences are non-empty"));
                }
            }
        }
    }
    Ok(out)
}

fn hosts(part: &Coincidence, host: &Coincidence) -> bool {
    let labels: HashSet<LabelId> = host.labels().iter().copied().collect();
    !part.is_empty() && part.labels().iter().all(|l| labels.contains(l))
}

fn priced(part: &Coincidence, duration: u64, prices: &LabelPrices) -> f64 {
    part.labels()
        .iter()
        .fold(0.0, |acc, &l| acc + event_utility(l, duration, prices))
}

/// Every embedding of `pattern` in `c` with its utility, by exhaustive search.
pub fn all_embeddings(pattern: &LSequence, c: &CSequence, prices: &LabelPrices) -> Vec<(Vec<usize>, f64)> {
    let parts = pattern.coincidences();
    if parts.len() > c.len() {
        return Vec::new();
    }
    index_tuples(c.len(), parts.len())
        .into_iter()
        .filter(|tuple| {
            tuple
                .iter()
                .zip(parts)
                .all(|(&j, part)| hosts(part, &c.eventsets[j].coincidence))
        })
        .map(|tuple| {
            let value = tuple.iter().zip(parts).fold(0.0, |acc, (&j, part)| {
                acc + priced(part, c.eventsets[j].duration, prices)
            });
            (tuple, value)
        })
        .collect()
}

/// Highest-utility embedding of `pattern` in `c`, if any.
pub fn witness(pattern: &LSequence, c: &CSequence, prices: &LabelPrices) -> Option<(Vec<usize>, f64)> {
    all_embeddings(pattern, c, prices)
        .into_iter()
        .reduce(|best, e| if e.1 > best.1 { e } else { best })
}

/// Maximum utility and support of `pattern`, by exhaustive search.
pub fn max_utility(pattern: &LSequence, db: &CSequenceDatabase, prices: &LabelPrices) -> (f64, usize) {
    let mut total = 0.0;
    let mut support = 0;
    for c in db.sequences() {
        if let Some((_, best)) = witness(pattern, c, prices) {
            total += best;
            support += 1;
        }
    }
    (total, support)
}

/// Reference answer: every enumerated pattern whose maximum utility meets the
/// threshold, sorted like the miner's output.
pub fn oracle_mine(
    db: &CSequenceDatabase,
    prices: &LabelPrices,
    cfg: &MinerConfig,
    limits: OracleLimits,
) -> Result<Vec<PatternResult>, OracleError> {
    cfg.validate()
        .map_err(|e| OracleError::InvalidConfig(e.to_string()))?;
    let threshold = cfg.absolute_threshold(database_utility(db, prices));
    let patterns = enumerate_patterns(db, cfg.max_length, cfg.max_size, limits)?;
    let mut out: Vec<PatternResult> = patterns
        .into_iter()
        .filter_map(|pattern| {
            let (u, support) = max_utility(&pattern, db, prices);
            (u >= threshold).then_some(PatternResult {
                pattern,
                max_utility: u,
                support,
            })
        })
        .collect();
    sort_patterns(&mut out, db.alphabet());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cer::to_c_database;
    use crate::fixtures;
    use crate::model::{Alphabet, CEventset};
    use std::sync::Arc;

    fn texts(db: &CSequenceDatabase, set: &BTreeSet<LSequence>) -> Vec<String> {
        let mut v: Vec<_> = set.iter().map(|l| l.canonical_text(db.alphabet())).collect();
        v.sort();
        v
    }

    fn single(labels: &[&str], duration: u64) -> CSequenceDatabase {
        let a = Arc::new(Alphabet::new(labels).unwrap());
        let c = CSequence::new(
            1,
            vec![CEventset::new(Coincidence::from_names(&a, labels).unwrap(), duration).unwrap()],
        );
        CSequenceDatabase::new(a, vec![c]).unwrap()
    }

    #[test]
    fn enumerate_trivial_databases() {
        let db = single(&["A"], 1);
        let set = enumerate_patterns(&db, 1, 1, OracleLimits::default()).unwrap();
        assert_eq!(texts(&db, &set), ["{A}"]);

        let db = single(&["A", "B"], 2);
        let set = enumerate_patterns(&db, 1, 2, OracleLimits::default()).unwrap();
        assert_eq!(texts(&db, &set), ["{A,B}", "{A}", "{B}"]);
    }

    #[test]
    fn enumerate_hand_counted_sequence() {
        // sid 2: (A,4)(∅,3)(C,1)({C,E,F},3)(C,2) with K = Z = 2.
        // length 1: A, C, E, F, CE, CF, EF                         -> 7
        // length 2: ⟨A,x⟩ and ⟨C,x⟩ for x in {C,E,F,CE,CF,EF}     -> 12
        //           ⟨x,C⟩ for x in {E,F,CE,CF,EF}                  -> 5
        let full = to_c_database(&fixtures::example_database());
        let s2 = CSequenceDatabase::new(
            full.alphabet().clone(),
            vec![full.sequences()[1].clone()],
        )
        .unwrap();
        let set = enumerate_patterns(&s2, 2, 2, OracleLimits::default()).unwrap();
        assert_eq!(set.len(), 24);
        assert_eq!(set.iter().filter(|l| l.len() == 1).count(), 7);
    }

    #[test]
    fn enumerate_worked_database_regression() {
        let db = to_c_database(&fixtures::example_database());
        let set = enumerate_patterns(&db, 2, 2, OracleLimits::default()).unwrap();
        assert_eq!(set.len(), EXAMPLE_K2_Z2_PATTERNS);
    }

    // cross-checked with a separate brute-force script
    const EXAMPLE_K2_Z2_PATTERNS: usize = 66;

    #[test]
    fn explosion_guard_trips() {
        let db = to_c_database(&fixtures::example_database());
        let err = enumerate_patterns(&db, 3, 3, OracleLimits { max_instances: 10 }).unwrap_err();
        assert!(matches!(err, OracleError::TooLarge { cap: 10, .. }));
    }

    #[test]
    fn oracle_finds_worked_serial_pattern() {
        let db = to_c_database(&fixtures::example_database());
        let prices = fixtures::example_utilities().resolve(db.alphabet()).unwrap().prices;
        let cfg = MinerConfig::absolute(21.0, 2, 2);
        let out = oracle_mine(&db, &prices, &cfg, OracleLimits::default()).unwrap();
        let ba = out
            .iter()
            .find(|r| r.pattern.canonical_text(db.alphabet()) == "{B}->{A}")
            .expect("⟨{B}{A}⟩ is high utility at 21");
        assert_eq!(ba.max_utility, 21.0);
        assert_eq!(ba.support, 2);
        assert!(out.iter().all(|r| r.max_utility >= 21.0));
    }

    #[test]
    fn zero_threshold_returns_everything() {
        let db = to_c_database(&fixtures::example_database());
        let prices = LabelPrices::uniform(db.alphabet(), 1.0);
        let cfg = MinerConfig::absolute(0.0, 2, 2);
        let out = oracle_mine(&db, &prices, &cfg, OracleLimits::default()).unwrap();
        let all = enumerate_patterns(&db, 2, 2, OracleLimits::default()).unwrap();
        assert_eq!(out.len(), all.len());
    }

    #[test]
    fn witness_is_an_embedding() {
        let db = to_c_database(&fixtures::example_database());
        let prices = fixtures::example_utilities().resolve(db.alphabet()).unwrap().prices;
        let ba = LSequence::from_names(db.alphabet(), &[&["B"], &["A"]]).unwrap();
        let (pos, u) = witness(&ba, &db.sequences()[2], &prices).unwrap();
        assert_eq!((pos, u), (vec![1, 2], 12.0));
        let all: Vec<f64> = all_embeddings(&ba, &db.sequences()[3], &prices)
            .into_iter()
            .map(|e| e.1)
            .collect();
        assert_eq!(all, [8.0, 9.0, 7.0]);
    }
}
