//! Utility calculus over C-sequences.
//!
//! A matched pattern coincidence is priced with the pattern's own labels at
//! the duration of the eventset hosting it, so `⟨{B}{A}⟩` hosted by
//! `(B,1)({A,B},5)` is worth `p(B)·1 + p(A)·5`. Embeddings use strictly
//! ascending host positions and never land on gap eventsets.

use crate::model::{
    CEventset, CSequence, CSequenceDatabase, Coincidence, LSequence, LabelId, LabelPrices, Time,
};

/// Left-to-right sum starting at `+0.0`; fixes the accumulation order.
#[inline]
pub(crate) fn sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, |acc, v| acc + v)
}

/// `p(l) × λ`.
#[inline]
pub fn event_utility(label: LabelId, duration: Time, prices: &LabelPrices) -> f64 {
    prices.price(label) * duration as f64
}

/// Sum of `p(l) × λ` over the labels of `coincidence`, in canonical order.
#[inline]
pub fn coincidence_utility(coincidence: &Coincidence, duration: Time, prices: &LabelPrices) -> f64 {
    sum(coincidence
        .labels()
        .iter()
        .map(|&l| event_utility(l, duration, prices)))
}

pub fn eventset_utility(eventset: &CEventset, prices: &LabelPrices) -> f64 {
    coincidence_utility(&eventset.coincidence, eventset.duration, prices)
}

pub fn csequence_utility(c: &CSequence, prices: &LabelPrices) -> f64 {
    sum(c.eventsets.iter().map(|e| eventset_utility(e, prices)))
}

pub fn database_utility(db: &CSequenceDatabase, prices: &LabelPrices) -> f64 {
    sum(db.sequences().iter().map(|c| csequence_utility(c, prices)))
}

/// Best utility of at most `k` eventsets of `c`: the sum of its `k` largest
/// eventset utilities.
pub fn max_k_utility(c: &CSequence, k: usize, prices: &LabelPrices) -> f64 {
    let mut utilities: Vec<f64> = c.eventsets.iter().map(|e| eventset_utility(e, prices)).collect();
    utilities.sort_unstable_by(|a, b| b.total_cmp(a));
    sum(utilities.into_iter().take(k))
}

/// Host positions `j_1 < j_2 < ...` for each pattern coincidence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Utility of `pattern` placed at these positions of `c`.
    pub fn utility(&self, pattern: &LSequence, c: &CSequence, prices: &LabelPrices) -> f64 {
        pattern
            .coincidences()
            .iter()
            .zip(&self.0)
            .fold(0.0, |acc, (coincidence, &j)| {
                acc + coincidence_utility(coincidence, c.eventsets[j].duration, prices)
            })
    }
}

/// Utility of each embedding of a pattern in one C-sequence.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UtilitySet(Vec<f64>);

impl UtilitySet {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn max(&self) -> Option<f64> {
        self.0.iter().copied().reduce(f64::max)
    }
}

/// All embeddings of `pattern` in `c`, in lexicographic order of positions.
pub fn embeddings(pattern: &LSequence, c: &CSequence) -> Vec<Embedding> {
    fn extend(
        pattern: &[Coincidence],
        c: &CSequence,
        from: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Embedding>,
    ) {
        let Some((head, rest)) = pattern.split_first() else {
            out.push(Embedding(current.clone()));
            return;
        };
        // leave room for the remaining coincidences
        let last = c.eventsets.len().saturating_sub(rest.len());
        for j in from..last {
            if head.is_subset_of(&c.eventsets[j].coincidence) {
                current.push(j);
                extend(rest, c, j + 1, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(pattern.coincidences(), c, 0, &mut Vec::new(), &mut out);
    out
}

pub fn pattern_utility_set(pattern: &LSequence, c: &CSequence, prices: &LabelPrices) -> UtilitySet {
    UtilitySet(
        embeddings(pattern, c)
            .iter()
            .map(|e| e.utility(pattern, c, prices))
            .collect(),
    )
}

/// Maximum embedding utility of `pattern` in `c`, or `None` without a match.
///
/// `best[j]` holds the best utility of the first `i` coincidences with the
/// `i`-th hosted at `j`; a running prefix maximum turns the predecessor
/// search into O(1), giving O(|L|·|C|) subset tests.
pub fn max_match_utility(pattern: &LSequence, c: &CSequence, prices: &LabelPrices) -> Option<f64> {
    let n = c.eventsets.len();
    let parts = pattern.coincidences();
    if parts.len() > n {
        return None;
    }
    let mut best: Vec<Option<f64>> = vec![None; n];
    let mut next: Vec<Option<f64>> = vec![None; n];
    for (i, part) in parts.iter().enumerate() {
        let mut prefix: Option<f64> = if i == 0 { Some(0.0) } else { None };
        for j in 0..n {
            let host = &c.eventsets[j];
            next[j] = match prefix {
                Some(base) if part.is_subset_of(&host.coincidence) => {
                    Some(base + coincidence_utility(part, host.duration, prices))
                }
                _ => None,
            };
            if i > 0 {
                prefix = max_opt(prefix, best[j]);
            }
        }
        std::mem::swap(&mut best, &mut next);
        if best.iter().all(Option::is_none) {
            return None;
        }
    }
    best.into_iter().flatten().reduce(f64::max)
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Sum over sequences of the best embedding utility (0 when absent).
pub fn pattern_max_utility(pattern: &LSequence, db: &CSequenceDatabase, prices: &LabelPrices) -> f64 {
    sum(db
        .sequences()
        .iter()
        .map(|c| max_match_utility(pattern, c, prices).unwrap_or(0.0)))
}

/// Pattern-weighted utilization: the sum of [`max_k_utility`] over the
/// sequences that contain at least one embedding of `pattern`.
///
/// An upper bound on [`pattern_max_utility`] whenever `k >= pattern.len()`.
pub fn lwu(pattern: &LSequence, db: &CSequenceDatabase, k: usize, prices: &LabelPrices) -> f64 {
    sum(db
        .sequences()
        .iter()
        .filter(|c| max_match_utility(pattern, c, prices).is_some())
        .map(|c| max_k_utility(c, k, prices)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cer::to_c_database;
    use crate::fixtures;
    use crate::model::{Alphabet, CSequenceDatabase};

    fn setup() -> (CSequenceDatabase, LabelPrices, LabelPrices) {
        let db = to_c_database(&fixtures::example_database());
        let t4 = fixtures::example_utilities().resolve(db.alphabet()).unwrap().prices;
        let ones = LabelPrices::uniform(db.alphabet(), 1.0);
        (db, t4, ones)
    }

    fn pat(a: &Alphabet, parts: &[&[&str]]) -> LSequence {
        LSequence::from_names(a, parts).unwrap()
    }

    #[test]
    fn event_and_eventset_utilities() {
        let (db, t4, _) = setup();
        let a = db.alphabet();
        let id = |n| a.id(n).unwrap();
        assert_eq!(event_utility(id("B"), 3, &t4), 6.0);
        assert_eq!(event_utility(id("D"), 2, &t4), 6.0);
        assert_eq!(event_utility(id("A"), 17, &LabelPrices::uniform(a, 0.0)), 0.0);

        let ce = Coincidence::from_names(a, &["C", "E"]).unwrap();
        assert_eq!(eventset_utility(&CEventset::new(ce, 2).unwrap(), &t4), 6.0);
        let ab = Coincidence::from_names(a, &["A", "B"]).unwrap();
        assert_eq!(eventset_utility(&CEventset::new(ab, 5).unwrap(), &t4), 15.0);
        let gap = CEventset::new(Coincidence::gap(), 4).unwrap();
        assert_eq!(eventset_utility(&gap, &t4), 0.0);
    }

    #[test]
    fn sequence_and_database_utilities() {
        let (db, t4, _) = setup();
        let s = db.sequences();
        assert_eq!(csequence_utility(&s[2], &t4), 29.0);
        assert_eq!(csequence_utility(&s[0], &t4), 22.0);
        assert_eq!(csequence_utility(&s[1], &t4), 19.0);
        assert_eq!(csequence_utility(&s[3], &t4), 46.0);
        assert_eq!(csequence_utility(&CSequence::new(9, vec![]), &t4), 0.0);
        assert_eq!(database_utility(&db, &t4), 116.0);
        let empty = CSequenceDatabase::new(db.alphabet().clone(), vec![]).unwrap();
        assert_eq!(database_utility(&empty, &t4), 0.0);
    }

    #[test]
    fn max_k_examples() {
        let (db, t4, ones) = setup();
        let s = db.sequences();
        assert_eq!(max_k_utility(&s[2], 2, &t4), 21.0);
        assert_eq!(max_k_utility(&s[2], 6, &t4), 29.0);
        assert_eq!(max_k_utility(&s[2], 100, &t4), 29.0);
        // all-ones eventset utilities of s1: 8,0,3,0,1,4,1
        assert_eq!(max_k_utility(&s[0], 2, &ones), 12.0);
    }

    #[test]
    fn utility_set_examples() {
        let (db, t4, _) = setup();
        let a = db.alphabet();
        let s = db.sequences();
        let ba = pat(a, &[&["B"], &["A"]]);
        assert_eq!(pattern_utility_set(&ba, &s[2], &t4).values(), &[7.0, 4.0, 12.0]);
        assert_eq!(pattern_utility_set(&ba, &s[3], &t4).values(), &[8.0, 9.0, 7.0]);
        assert!(pattern_utility_set(&ba, &s[0], &t4).is_empty());

        let only_a = pat(a, &[&["A"]]);
        let ones = LabelPrices::uniform(a, 1.0);
        assert_eq!(pattern_utility_set(&only_a, &s[3], &ones).values(), &[2.0, 3.0]);
        let positions: Vec<_> = embeddings(&only_a, &s[3]).into_iter().map(|e| e.0).collect();
        assert_eq!(positions, vec![vec![1], vec![2]]);
    }

    #[test]
    fn max_match_examples() {
        let (db, t4, _) = setup();
        let a = db.alphabet();
        let s = db.sequences();
        let ba = pat(a, &[&["B"], &["A"]]);
        assert_eq!(max_match_utility(&ba, &s[2], &t4), Some(12.0));
        assert_eq!(max_match_utility(&ba, &s[1], &t4), None);
        assert_eq!(max_match_utility(&ba, &s[0], &t4), None);

        // a pattern that fits exactly one way: ⟨{B}{A,B,D}{A,D}{D}⟩ in s4
        let exact = pat(a, &[&["B"], &["A", "B", "D"], &["A", "D"], &["D"]]);
        let set = pattern_utility_set(&exact, &s[3], &t4);
        assert_eq!(set.len(), 1);
        assert_eq!(max_match_utility(&exact, &s[3], &t4), set.max());
    }

    #[test]
    fn pattern_max_utility_examples() {
        let (db, t4, ones) = setup();
        let a = db.alphabet();
        assert_eq!(pattern_max_utility(&pat(a, &[&["B"], &["A"]]), &db, &t4), 21.0);
        assert_eq!(pattern_max_utility(&pat(a, &[&["A"]]), &db, &ones), 20.0);
        assert_eq!(pattern_max_utility(&pat(a, &[&["D"], &["F"]]), &db, &t4), 0.0);
    }

    #[test]
    fn lwu_examples() {
        let (db, t4, ones) = setup();
        let a = db.alphabet();
        let ba = pat(a, &[&["B"], &["A"]]);
        assert_eq!(lwu(&ba, &db, 2, &t4), 45.0);
        // with unit utilities only s3 (14) and s4 (12) contain ⟨{B}{A}⟩
        assert_eq!(lwu(&ba, &db, 2, &ones), 26.0);
        assert_eq!(lwu(&pat(a, &[&["A"]]), &db, 2, &ones), 51.0);
        assert_eq!(lwu(&pat(a, &[&["F"], &["A"]]), &db, 2, &ones), 0.0);
    }
}
