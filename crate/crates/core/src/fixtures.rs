//! The small worked-example database used throughout the docs and tests.

use crate::model::{DefaultPolicy, ESequenceDatabase, UtilityTable};

/// `(sid, label, begin, finish)` rows of the four-sequence example database.
pub const EXAMPLE_RECORDS: [(u64, &str, u64, u64); 17] = [
    (1, "A", 8, 16),
    (1, "B", 18, 21),
    (1, "C", 24, 28),
    (1, "E", 25, 27),
    (2, "A", 1, 5),
    (2, "C", 8, 14),
    (2, "E", 9, 12),
    (2, "F", 9, 12),
    (3, "B", 6, 12),
    (3, "A", 7, 14),
    (3, "C", 14, 20),
    (3, "E", 16, 18),
    (4, "B", 2, 7),
    (4, "A", 5, 10),
    (4, "D", 5, 12),
    (4, "C", 16, 22),
    (4, "E", 18, 20),
];

/// Its C-sequence dump, one line per sid.
pub const EXAMPLE_DUMP: &str = "\
1\t(A,8)(∅,2)(B,3)(∅,3)(C,1)({C,E},2)(C,1)
2\t(A,4)(∅,3)(C,1)({C,E,F},3)(C,2)
3\t(B,1)({A,B},5)(A,2)(C,2)({C,E},2)(C,2)
4\t(B,3)({A,B,D},2)({A,D},3)(D,2)(∅,4)(C,2)({C,E},2)(C,2)
";

/// External utilities of the example labels.
pub const EXAMPLE_UTILITIES: [(&str, f64); 6] = [
    ("A", 1.0),
    ("B", 2.0),
    ("C", 1.0),
    ("D", 3.0),
    ("E", 2.0),
    ("F", 1.0),
];

pub fn example_database() -> ESequenceDatabase {
    ESequenceDatabase::from_records(EXAMPLE_RECORDS).expect("example database is valid")
}

pub fn example_utilities() -> UtilityTable {
    UtilityTable::from_pairs(EXAMPLE_UTILITIES, DefaultPolicy::Reject).expect("valid utilities")
}

/// The example database as a TAB-separated input file.
pub fn example_tsv() -> String {
    let mut out = String::from("# sid\tlabel\tbegin\tfinish\n");
    for (sid, label, begin, finish) in EXAMPLE_RECORDS {
        out.push_str(&format!("{sid}\t{label}\t{begin}\t{finish}\n"));
    }
    out
}
