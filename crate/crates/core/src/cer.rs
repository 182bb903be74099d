//! Conversion between E-sequences and their coincidence eventset
//! representation (C-sequences).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{
    CEventset, CSequence, CSequenceDatabase, Coincidence, ESequence, ESequenceDatabase,
    EventInterval, LabelId, ModelError, Time, TimePoints,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CerError {
    #[error("window [{0}, {1}) is empty; expected t_p < t_q")]
    EmptyWindow(Time, Time),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Sorted, deduplicated begin/finish times of `s`.
pub fn unique_time_points(s: &ESequence) -> TimePoints {
    let mut points: Vec<Time> = s
        .intervals()
        .iter()
        .flat_map(|e| [e.begin, e.finish])
        .collect();
    points.sort_unstable();
    points.dedup();
    TimePoints::from_sorted(points)
}

/// Labels of the intervals of `s` that fully cover `[t_p, t_q]`.
pub fn phi(s: &ESequence, t_p: Time, t_q: Time) -> Result<Coincidence, CerError> {
    if t_p >= t_q {
        return Err(CerError::EmptyWindow(t_p, t_q));
    }
    Ok(cover(s.intervals(), t_p, t_q))
}

fn cover(intervals: &[EventInterval], t_p: Time, t_q: Time) -> Coincidence {
    Coincidence::new(
        intervals
            .iter()
            .filter(|e| e.begin <= t_p && t_q <= e.finish)
            .map(|e| e.label),
    )
}

/// One eventset per pair of consecutive unique time points; gaps are kept.
pub fn to_c_sequence(s: &ESequence) -> CSequence {
    let points = unique_time_points(s);
    let eventsets: Vec<CEventset> = points
        .points()
        .windows(2)
        .map(|w| CEventset {
            coincidence: cover(s.intervals(), w[0], w[1]),
            duration: w[1] - w[0],
        })
        .collect();
    debug_assert!(eventsets.first().is_some_and(|e| !e.is_gap()));
    debug_assert!(eventsets.last().is_some_and(|e| !e.is_gap()));
    CSequence::new(s.sid(), eventsets)
}

pub fn to_c_database(db: &ESequenceDatabase) -> CSequenceDatabase {
    let sequences = db.sequences().iter().map(to_c_sequence).collect();
    CSequenceDatabase::new(db.alphabet().clone(), sequences)
        .expect("sids are unique in a valid E-sequence database")
}

/// Rebuilds event intervals from a C-sequence, placing its first eventset at
/// `origin`. A label present in a maximal run of consecutive eventsets becomes
/// one interval spanning that run.
pub fn from_c_sequence(c: &CSequence, origin: Time) -> Result<ESequence, CerError> {
    let mut open: BTreeMap<LabelId, Time> = BTreeMap::new();
    let mut intervals = Vec::new();
    let mut t = origin;
    for eventset in &c.eventsets {
        let labels = eventset.coincidence.labels();
        open.retain(|label, begin| {
            let keep = labels.binary_search(label).is_ok();
            if !keep {
                intervals.push((*label, *begin, t));
            }
            keep
        });
        for &label in labels {
            open.entry(label).or_insert(t);
        }
        t += eventset.duration;
    }
    intervals.extend(open.into_iter().map(|(label, begin)| (label, begin, t)));
    let intervals = intervals
        .into_iter()
        .map(|(label, begin, finish)| EventInterval::new(label, begin, finish))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ESequence::new(c.sid, intervals)?)
}
