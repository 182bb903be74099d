use std::collections::BTreeSet;

use proptest::prelude::*;

use huip_core::cer::{from_c_sequence, phi, to_c_database, to_c_sequence, unique_time_points};
use huip_core::model::{
    Coincidence, DefaultPolicy, ESequence, ESequenceDatabase, LSequence, LabelId, LabelPrices,
    UtilityTable,
};
use huip_core::oracle;
use huip_core::utility::{csequence_utility, lwu, max_k_utility, max_match_utility, pattern_max_utility};
use huip_core::{mine, MinerConfig, ThresholdMode};

const LABELS: [&str; 4] = ["A", "B", "C", "D"];

fn records() -> impl Strategy<Value = Vec<(u64, usize, u64, u64)>> {
    prop::collection::vec((1u64..=3, 0usize..LABELS.len(), 0u64..15, 1u64..6), 1..10)
}

fn database(recs: &[(u64, usize, u64, u64)]) -> ESequenceDatabase {
    ESequenceDatabase::from_records(recs.iter().map(|&(sid, l, b, d)| (sid, LABELS[l], b, b + d))).unwrap()
}

// k/8 in [0, 4]: small enough that every sum stays exact
fn prices(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0u32..=32).prop_map(|k| k as f64 / 8.0), n..=n)
}

fn utility_table(db: &ESequenceDatabase, values: &[f64]) -> UtilityTable {
    UtilityTable::from_pairs(
        db.alphabet().names().zip(values).map(|(n, &v)| (n.to_string(), v)),
        DefaultPolicy::Reject,
    )
    .unwrap()
}

fn pattern() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0usize..LABELS.len(), 1..3), 1..4)
}

/// Maps label indices onto the database alphabet; `None` if a label is absent.
fn lsequence(db: &ESequenceDatabase, parts: &[Vec<usize>]) -> Option<LSequence> {
    let a = db.alphabet();
    let cs: Option<Vec<Coincidence>> = parts
        .iter()
        .map(|p| p.iter().map(|&l| a.id(LABELS[l])).collect::<Option<Vec<LabelId>>>().map(Coincidence::new))
        .collect();
    LSequence::new(cs?).ok()
}

/// True if no two intervals with the same label overlap or touch.
fn same_label_separated(s: &ESequence) -> bool {
    let iv = s.intervals();
    iv.iter().enumerate().all(|(i, x)| {
        iv[i + 1..]
            .iter()
            .all(|y| x.label != y.label || x.finish < y.begin || y.finish < x.begin)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn conversion_preserves_time_structure(recs in records()) {
        let db = database(&recs);
        for s in db.sequences() {
            let c = to_c_sequence(s);
            prop_assert_eq!(c.len(), unique_time_points(s).len() - 1);
            prop_assert_eq!(c.total_duration(), s.last_time() - s.first_time());
            prop_assert!(c.eventsets.iter().all(|e| e.duration > 0));
            prop_assert!(!c.eventsets.first().unwrap().is_gap());
            prop_assert!(!c.eventsets.last().unwrap().is_gap());
            // every time point is an endpoint, so two gaps never touch
            for w in c.eventsets.windows(2) {
                prop_assert!(w[0].coincidence != w[1].coincidence || !w[0].is_gap());
            }
        }
    }

    #[test]
    fn conversion_round_trips(recs in records()) {
        let db = database(&recs);
        for s in db.sequences() {
            let c = to_c_sequence(s);
            let back = from_c_sequence(&c, s.first_time()).unwrap();
            // overlapping same-label intervals merge, but coverage per instant survives
            for t in s.first_time()..s.last_time() {
                prop_assert_eq!(phi(&back, t, t + 1).unwrap(), phi(s, t, t + 1).unwrap());
            }
            if same_label_separated(s) {
                prop_assert_eq!(to_c_sequence(&back), c.clone());
                prop_assert_eq!(&back, s);
            }
        }
    }

    #[test]
    fn dynamic_program_matches_exhaustive_matching(
        recs in records(),
        values in prices(LABELS.len()),
        parts in pattern(),
    ) {
        let db = database(&recs);
        let Some(p) = lsequence(&db, &parts) else { return Ok(()); };
        let prices = LabelPrices::new(values[..db.alphabet().len()].to_vec());
        let cdb = to_c_database(&db);
        for c in cdb.sequences() {
            let best = oracle::witness(&p, c, &prices).map(|(_, u)| u);
            prop_assert_eq!(max_match_utility(&p, c, &prices), best);
        }
        let (u, _) = oracle::max_utility(&p, &cdb, &prices);
        prop_assert_eq!(pattern_max_utility(&p, &cdb, &prices), u);
    }

    #[test]
    fn max_utility_is_bounded_by_lwu(
        recs in records(),
        values in prices(LABELS.len()),
        parts in pattern(),
        k in 1usize..5,
    ) {
        let db = database(&recs);
        let Some(p) = lsequence(&db, &parts) else { return Ok(()); };
        prop_assume!(p.len() <= k);
        let prices = LabelPrices::new(values[..db.alphabet().len()].to_vec());
        let cdb = to_c_database(&db);
        prop_assert!(pattern_max_utility(&p, &cdb, &prices) <= lwu(&p, &cdb, k, &prices));
    }

    #[test]
    fn max_k_utility_is_monotone(recs in records(), values in prices(LABELS.len())) {
        let db = database(&recs);
        let prices = LabelPrices::new(values[..db.alphabet().len()].to_vec());
        for c in to_c_database(&db).sequences() {
            let mut last = 0.0;
            for k in 1..=c.len() + 1 {
                let m = max_k_utility(c, k, &prices);
                prop_assert!(m >= last);
                last = m;
            }
            prop_assert_eq!(last, csequence_utility(c, &prices));
        }
    }

    #[test]
    fn relative_results_are_scale_invariant(
        recs in records(),
        values in prices(LABELS.len()),
        xi in 0.02f64..0.5,
        alpha in prop::sample::select(vec![0.5, 2.0, 4.0]),
    ) {
        let db = database(&recs);
        let table = utility_table(&db, &values);
        let cfg = MinerConfig::relative(xi, 2, 2);
        let base = mine(&db, &table, &cfg).unwrap();
        let scaled = mine(&db, &table.scaled(alpha), &cfg).unwrap();
        let a: Vec<_> = base.patterns().into_iter().map(|r| (r.pattern, r.max_utility * alpha, r.support)).collect();
        let b: Vec<_> = scaled.patterns().into_iter().map(|r| (r.pattern, r.max_utility, r.support)).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn raising_the_threshold_only_removes_patterns(
        recs in records(),
        values in prices(LABELS.len()),
        low in 0u32..40,
        step in 0u32..40,
    ) {
        let db = database(&recs);
        let table = utility_table(&db, &values);
        let mut cfg = MinerConfig::absolute(low as f64, 2, 2);
        cfg.threshold_mode = ThresholdMode::Absolute;
        let loose: BTreeSet<_> = mine(&db, &table, &cfg).unwrap().patterns().into_iter().map(|r| r.pattern).collect();
        cfg.threshold = (low + step) as f64;
        let strict: BTreeSet<_> = mine(&db, &table, &cfg).unwrap().patterns().into_iter().map(|r| r.pattern).collect();
        prop_assert!(strict.is_subset(&loose));
    }
}
