//! Seeded generator of small random mining problems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::miner::MinerConfig;
use crate::model::{DefaultPolicy, ESequenceDatabase, UtilityTable};

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusParams {
    pub max_sequences: usize,
    /// Intervals per sequence; n intervals yield at most 2n - 1 eventsets.
    pub max_intervals: usize,
    pub max_alphabet: usize,
    /// Begin times are drawn from `0..horizon`.
    pub horizon: u64,
    pub max_duration: u64,
    pub max_utility: f64,
    /// Utilities are multiples of `1 / utility_grid`.
    pub utility_grid: u32,
    pub max_length: usize,
    pub max_size: usize,
    pub min_relative: f64,
    pub max_relative: f64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_sequences: 6,
            max_intervals: 4,
            max_alphabet: 5,
            horizon: 12,
            max_duration: 5,
            max_utility: 5.0,
            utility_grid: 64,
            max_length: 3,
            max_size: 3,
            min_relative: 0.01,
            max_relative: 0.3,
        }
    }
}

/// A database, its utilities and a relative-threshold configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomCase {
    pub db: ESequenceDatabase,
    pub utilities: UtilityTable,
    pub cfg: MinerConfig,
}

fn label_name(i: usize) -> String {
    char::from(b'A' + i as u8).to_string()
}

pub fn random_case<R: Rng>(rng: &mut R, params: &CorpusParams) -> RandomCase {
    let alphabet = rng.gen_range(1..=params.max_alphabet.min(26));
    let sequences = rng.gen_range(1..=params.max_sequences);
    let mut records = Vec::new();
    for sid in 1..=sequences as u64 {
        for _ in 0..rng.gen_range(1..=params.max_intervals) {
            let label = label_name(rng.gen_range(0..alphabet));
            let begin = rng.gen_range(0..params.horizon);
            let finish = begin + rng.gen_range(1..=params.max_duration);
            records.push((sid, label, begin, finish));
        }
    }
    let db = ESequenceDatabase::from_records(records).expect("generated records are valid");

    let steps = (params.max_utility * params.utility_grid as f64) as u32;
    let utilities = UtilityTable::from_pairs(
        db.alphabet().names().map(|name| {
            let value = rng.gen_range(0..=steps) as f64 / params.utility_grid as f64;
            (name.to_string(), value)
        }),
        DefaultPolicy::Reject,
    )
    .expect("generated utilities are valid");

    let cfg = MinerConfig::relative(
        rng.gen_range(params.min_relative..=params.max_relative),
        rng.gen_range(1..=params.max_length),
        rng.gen_range(1..=params.max_size),
    );
    RandomCase { db, utilities, cfg }
}

/// `count` cases drawn from one seeded stream.
pub fn corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<RandomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_case(&mut rng, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cer::to_c_database;

    #[test]
    fn corpus_respects_limits() {
        let params = CorpusParams::default();
        for case in corpus(7, 100, &params) {
            assert!(case.db.len() <= params.max_sequences);
            assert!(case.db.alphabet().len() <= params.max_alphabet);
            for c in to_c_database(&case.db).sequences() {
                assert!(c.len() <= 8);
            }
            for (_, u) in case.utilities.iter() {
                assert!((0.0..=params.max_utility).contains(&u));
                assert_eq!((u * 64.0).fract(), 0.0);
            }
            assert!(case.cfg.validate().is_ok());
            assert!((0.01..=0.3).contains(&case.cfg.threshold));
            assert!((1..=3).contains(&case.cfg.max_length));
            assert!((1..=3).contains(&case.cfg.max_size));
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let p = CorpusParams::default();
        assert_eq!(corpus(3, 10, &p), corpus(3, 10, &p));
        assert_ne!(corpus(3, 10, &p), corpus(4, 10, &p));
    }
}
