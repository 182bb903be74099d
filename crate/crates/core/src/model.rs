//! Domain types shared by every stage of the pipeline.
//!
//! Labels are interned into an [`Alphabet`] whose ids follow lexicographic
//! order of the label text, so sorting by [`LabelId`] is the canonical label
//! order everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Integer time point.
pub type Time = u64;
/// Sequence identifier.
pub type Sid = u64;

/// Marker used for empty coincidences (gaps) in rendered C-sequences.
pub const GAP_MARKER: &str = "∅";

const FORBIDDEN_LABEL_CHARS: &[char] = &['{', '}', '(', ')', ',', '\t', '\n', '\r'];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("empty label")]
    EmptyLabel,
    #[error("label {0:?} contains a reserved character")]
    ReservedCharacter(String),
    #[error("label {0:?} is the reserved gap marker")]
    GapMarkerLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("begin {begin} must be strictly before finish {finish}")]
    EmptyInterval { begin: Time, finish: Time },
    #[error("E-sequence {0} has no intervals")]
    EmptySequence(Sid),
    #[error("duplicate sid {0}")]
    DuplicateSid(Sid),
    #[error("L-sequence must contain at least one coincidence")]
    EmptyPattern,
    #[error("L-sequence coincidences must be non-empty")]
    EmptyCoincidence,
    #[error("C-eventset duration must be at least 1")]
    ZeroDuration,
    #[error("negative or non-finite utility {value} for label {label:?}")]
    InvalidUtility { label: String, value: f64 },
    #[error("no utility for label {0:?}")]
    UnmappedLabel(String),
}

/// Checks that `text` is usable as an event label.
pub fn validate_label(text: &str) -> Result<(), ModelError> {
    if text.is_empty() {
        return Err(ModelError::EmptyLabel);
    }
    if text == GAP_MARKER {
        return Err(ModelError::GapMarkerLabel(text.to_string()));
    }
    if text.contains(FORBIDDEN_LABEL_CHARS) {
        return Err(ModelError::ReservedCharacter(text.to_string()));
    }
    Ok(())
}

/// Interned label. Ordering matches the lexicographic order of the text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub u32);

impl LabelId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Sorted, duplicate-free set of label texts; a label's id is its rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for name in names {
            let name = name.as_ref();
            validate_label(name)?;
            set.insert(name.to_string());
        }
        Ok(Alphabet {
            names: set.into_iter().collect(),
        })
    }

    pub fn id(&self, name: &str) -> Option<LabelId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| LabelId(i as u32))
    }

    pub fn try_id(&self, name: &str) -> Result<LabelId, ModelError> {
        self.id(name)
            .ok_or_else(|| ModelError::UnknownLabel(name.to_string()))
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LabelId> {
        (0..self.names.len() as u32).map(LabelId)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

/// A labelled interval `[begin, finish)` with `begin < finish`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventInterval {
    // field order gives the canonical (begin, label, finish) sort
    pub begin: Time,
    pub label: LabelId,
    pub finish: Time,
}

impl EventInterval {
    pub fn new(label: LabelId, begin: Time, finish: Time) -> Result<Self, ModelError> {
        if begin >= finish {
            return Err(ModelError::EmptyInterval { begin, finish });
        }
        Ok(EventInterval {
            begin,
            label,
            finish,
        })
    }

    pub fn duration(&self) -> Time {
        self.finish - self.begin
    }
}

/// An E-sequence: intervals ordered by begin time, ties by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESequence {
    sid: Sid,
    intervals: Vec<EventInterval>,
}

impl ESequence {
    pub fn new(sid: Sid, mut intervals: Vec<EventInterval>) -> Result<Self, ModelError> {
        if intervals.is_empty() {
            return Err(ModelError::EmptySequence(sid));
        }
        intervals.sort();
        Ok(ESequence { sid, intervals })
    }

    pub fn sid(&self) -> Sid {
        self.sid
    }

    pub fn intervals(&self) -> &[EventInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn first_time(&self) -> Time {
        self.intervals[0].begin
    }

    pub fn last_time(&self) -> Time {
        self.intervals.iter().map(|e| e.finish).max().unwrap_or(0)
    }
}

/// A set of E-sequences keyed by unique sid, kept in ascending sid order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESequenceDatabase {
    alphabet: Arc<Alphabet>,
    sequences: Vec<ESequence>,
}

impl ESequenceDatabase {
    pub fn new(alphabet: Arc<Alphabet>, mut sequences: Vec<ESequence>) -> Result<Self, ModelError> {
        sequences.sort_by_key(ESequence::sid);
        if let Some(w) = sequences.windows(2).find(|w| w[0].sid == w[1].sid) {
            return Err(ModelError::DuplicateSid(w[0].sid));
        }
        Ok(ESequenceDatabase {
            alphabet,
            sequences,
        })
    }

    /// Builds a database from `(sid, label, begin, finish)` records in any order.
    pub fn from_records<I, S>(records: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (Sid, S, Time, Time)>,
        S: AsRef<str>,
    {
        let records: Vec<(Sid, S, Time, Time)> = records.into_iter().collect();
        let alphabet = Alphabet::new(records.iter().map(|r| r.1.as_ref()))?;
        let mut grouped: BTreeMap<Sid, Vec<EventInterval>> = BTreeMap::new();
        for (sid, label, begin, finish) in &records {
            let id = alphabet.try_id(label.as_ref())?;
            grouped
                .entry(*sid)
                .or_default()
                .push(EventInterval::new(id, *begin, *finish)?);
        }
        let sequences = grouped
            .into_iter()
            .map(|(sid, intervals)| ESequence::new(sid, intervals))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(Arc::new(alphabet), sequences)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn sequences(&self) -> &[ESequence] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Flattened `(sid, label, begin, finish)` records in database order.
    pub fn records(&self) -> Vec<(Sid, String, Time, Time)> {
        self.sequences
            .iter()
            .flat_map(|s| {
                s.intervals.iter().map(move |e| {
                    (
                        s.sid,
                        self.alphabet.name(e.label).to_string(),
                        e.begin,
                        e.finish,
                    )
                })
            })
            .collect()
    }
}

/// Strictly ascending unique time points of one E-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimePoints(Vec<Time>);

impl TimePoints {
    pub(crate) fn from_sorted(points: Vec<Time>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        TimePoints(points)
    }

    pub fn points(&self) -> &[Time] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A set of labels in canonical order. Empty only as a gap inside a C-sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coincidence(Vec<LabelId>);

impl Coincidence {
    pub fn new<I: IntoIterator<Item = LabelId>>(labels: I) -> Self {
        let mut labels: Vec<LabelId> = labels.into_iter().collect();
        labels.sort_unstable();
        labels.dedup();
        Coincidence(labels)
    }

    pub fn gap() -> Self {
        Coincidence(Vec::new())
    }

    pub fn singleton(label: LabelId) -> Self {
        Coincidence(vec![label])
    }

    /// Looks up each label text in `alphabet`.
    pub fn from_names<S: AsRef<str>>(alphabet: &Alphabet, names: &[S]) -> Result<Self, ModelError> {
        names
            .iter()
            .map(|n| alphabet.try_id(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Coincidence::new)
    }

    pub fn labels(&self) -> &[LabelId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: LabelId) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn max_label(&self) -> Option<LabelId> {
        self.0.last().copied()
    }

    /// `self ⊆ other`, by a merge over both sorted label lists.
    pub fn is_subset_of(&self, other: &Coincidence) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut rest = other.0.iter();
        'outer: for l in &self.0 {
            for o in rest.by_ref() {
                if o == l {
                    continue 'outer;
                }
                if o > l {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Copy of `self` with `label` added.
    pub fn with(&self, label: LabelId) -> Coincidence {
        let mut labels = self.0.clone();
        if let Err(pos) = labels.binary_search(&label) {
            labels.insert(pos, label);
        }
        Coincidence(labels)
    }

    /// Copy of `self` without `label`.
    pub fn without(&self, label: LabelId) -> Coincidence {
        Coincidence(self.0.iter().copied().filter(|&l| l != label).collect())
    }

    /// Renders as `{A,B}`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        CoincidenceDisplay {
            coincidence: self,
            alphabet,
        }
    }
}

struct CoincidenceDisplay<'a> {
    coincidence: &'a Coincidence,
    alphabet: &'a Alphabet,
}

impl fmt::Display for CoincidenceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.coincidence.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.alphabet.name(*l))?;
        }
        f.write_str("}")
    }
}

/// A coincidence together with the length of the window it covers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CEventset {
    pub coincidence: Coincidence,
    pub duration: Time,
}

impl CEventset {
    pub fn new(coincidence: Coincidence, duration: Time) -> Result<Self, ModelError> {
        if duration == 0 {
            return Err(ModelError::ZeroDuration);
        }
        Ok(CEventset {
            coincidence,
            duration,
        })
    }

    pub fn is_gap(&self) -> bool {
        self.coincidence.is_empty()
    }
}

/// The coincidence eventset representation of one E-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSequence {
    pub sid: Sid,
    pub eventsets: Vec<CEventset>,
}

impl CSequence {
    pub fn new(sid: Sid, eventsets: Vec<CEventset>) -> Self {
        CSequence { sid, eventsets }
    }

    pub fn len(&self) -> usize {
        self.eventsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eventsets.is_empty()
    }

    pub fn total_duration(&self) -> Time {
        self.eventsets.iter().map(|e| e.duration).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSequenceDatabase {
    alphabet: Arc<Alphabet>,
    sequences: Vec<CSequence>,
}

impl CSequenceDatabase {
    pub fn new(alphabet: Arc<Alphabet>, mut sequences: Vec<CSequence>) -> Result<Self, ModelError> {
        sequences.sort_by_key(|c| c.sid);
        if let Some(w) = sequences.windows(2).find(|w| w[0].sid == w[1].sid) {
            return Err(ModelError::DuplicateSid(w[0].sid));
        }
        Ok(CSequenceDatabase {
            alphabet,
            sequences,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn sequences(&self) -> &[CSequence] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Labels that occur in at least one eventset, in canonical order.
    pub fn occurring_labels(&self) -> Vec<LabelId> {
        let set: BTreeSet<LabelId> = self
            .sequences
            .iter()
            .flat_map(|c| c.eventsets.iter())
            .flat_map(|e| e.coincidence.labels().iter().copied())
            .collect();
        set.into_iter().collect()
    }
}

/// A pattern: an ordered list of non-empty coincidences, without durations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LSequence(Vec<Coincidence>);

impl LSequence {
    pub fn new(coincidences: Vec<Coincidence>) -> Result<Self, ModelError> {
        if coincidences.is_empty() {
            return Err(ModelError::EmptyPattern);
        }
        if coincidences.iter().any(Coincidence::is_empty) {
            return Err(ModelError::EmptyCoincidence);
        }
        Ok(LSequence(coincidences))
    }

    pub fn single(coincidence: Coincidence) -> Result<Self, ModelError> {
        Self::new(vec![coincidence])
    }

    /// Builds a pattern from label texts, e.g. `&[&["B"], &["A"]]`.
    pub fn from_names<S: AsRef<str>>(alphabet: &Alphabet, parts: &[&[S]]) -> Result<Self, ModelError> {
        let coincidences = parts
            .iter()
            .map(|names| Coincidence::from_names(alphabet, names))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coincidences)
    }

    pub fn coincidences(&self) -> &[Coincidence] {
        &self.0
    }

    /// Number of coincidences.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest coincidence cardinality.
    pub fn size(&self) -> usize {
        self.0.iter().map(Coincidence::len).max().unwrap_or(0)
    }

    pub fn last(&self) -> &Coincidence {
        self.0.last().expect("L-sequence is never empty")
    }

    /// Serial concatenation with a single trailing coincidence.
    pub fn then(&self, tail: &Coincidence) -> LSequence {
        debug_assert!(!tail.is_empty());
        let mut coincidences = self.0.clone();
        coincidences.push(tail.clone());
        LSequence(coincidences)
    }

    /// Serial concatenation `⟨self, other⟩`.
    pub fn concat(&self, other: &LSequence) -> LSequence {
        let mut coincidences = self.0.clone();
        coincidences.extend(other.0.iter().cloned());
        LSequence(coincidences)
    }

    /// Stable text form: `{B}->{A,B}->{A}`.
    pub fn canonical_text(&self, alphabet: &Alphabet) -> String {
        self.0
            .iter()
            .map(|c| c.display(alphabet).to_string())
            .collect::<Vec<_>>()
            .join("->")
    }

    /// Patterns obtained by dropping one coincidence or one label.
    ///
    /// Every sub-pattern of `self` is reachable through a chain of these.
    pub fn immediate_subpatterns(&self) -> Vec<LSequence> {
        let mut out = Vec::new();
        if self.0.len() > 1 {
            for i in 0..self.0.len() {
                let mut cs = self.0.clone();
                cs.remove(i);
                out.push(LSequence(cs));
            }
        }
        for (i, c) in self.0.iter().enumerate() {
            if c.len() > 1 {
                for &l in c.labels() {
                    let mut cs = self.0.clone();
                    cs[i] = c.without(l);
                    out.push(LSequence(cs));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Policy for labels missing from a [`UtilityTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DefaultPolicy {
    /// Unmapped labels are worth 1.0 (reported as warnings).
    #[default]
    DefaultOne,
    /// Unmapped labels are an error.
    Reject,
}

/// External utility per label text.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UtilityTable {
    values: BTreeMap<String, f64>,
    policy: DefaultPolicy,
}

impl UtilityTable {
    pub fn new(policy: DefaultPolicy) -> Self {
        UtilityTable {
            values: BTreeMap::new(),
            policy,
        }
    }

    /// Every label worth 1.0.
    pub fn all_ones() -> Self {
        Self::new(DefaultPolicy::DefaultOne)
    }

    pub fn from_pairs<I, S>(pairs: I, policy: DefaultPolicy) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut table = Self::new(policy);
        for (label, value) in pairs {
            table.insert(label.into(), value)?;
        }
        Ok(table)
    }

    /// Inserts or replaces a label's utility.
    pub fn insert(&mut self, label: String, value: f64) -> Result<Option<f64>, ModelError> {
        if !value.is_finite() || value < 0.0 {
            return Err(ModelError::InvalidUtility { label, value });
        }
        Ok(self.values.insert(label, value))
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.values.get(label).copied()
    }

    pub fn policy(&self) -> DefaultPolicy {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Every utility multiplied by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Self {
        UtilityTable {
            values: self.values.iter().map(|(k, v)| (k.clone(), v * alpha)).collect(),
            policy: self.policy,
        }
    }

    /// Dense per-id prices for `alphabet`, applying the default policy.
    pub fn resolve(&self, alphabet: &Alphabet) -> Result<ResolvedPrices, ModelError> {
        let mut prices = Vec::with_capacity(alphabet.len());
        let mut defaulted = Vec::new();
        for name in alphabet.names() {
            match (self.get(name), self.policy) {
                (Some(v), _) => prices.push(v),
                (None, DefaultPolicy::DefaultOne) => {
                    prices.push(1.0);
                    defaulted.push(name.to_string());
                }
                (None, DefaultPolicy::Reject) => {
                    return Err(ModelError::UnmappedLabel(name.to_string()))
                }
            }
        }
        Ok(ResolvedPrices {
            prices: LabelPrices(prices),
            defaulted,
        })
    }
}

/// Outcome of [`UtilityTable::resolve`].
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedPrices {
    pub prices: LabelPrices,
    /// Labels that fell back to the default utility.
    pub defaulted: Vec<String>,
}

/// External utility indexed by [`LabelId`].
#[derive(Clone, Debug, PartialEq)]
pub struct LabelPrices(Vec<f64>);

impl LabelPrices {
    pub fn new(prices: Vec<f64>) -> Self {
        LabelPrices(prices)
    }

    pub fn uniform(alphabet: &Alphabet, value: f64) -> Self {
        LabelPrices(vec![value; alphabet.len()])
    }

    #[inline]
    pub fn price(&self, label: LabelId) -> f64 {
        self.0[label.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// A pattern with its maximum utility and the number of sequences matching it.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternResult {
    pub pattern: LSequence,
    pub max_utility: f64,
    pub support: usize,
}

/// Output order: length ascending, then canonical text.
pub fn sort_patterns(results: &mut [PatternResult], alphabet: &Alphabet) {
    results.sort_by_cached_key(|r| (r.pattern.len(), r.pattern.canonical_text(alphabet)));
}
