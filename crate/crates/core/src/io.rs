//! Text formats: interval databases, utility tables, pattern files and
//! C-sequence dumps. All formats are UTF-8, TAB-separated, with `#` comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    validate_label, Alphabet, CEventset, CSequence, CSequenceDatabase, Coincidence, DefaultPolicy,
    ESequenceDatabase, LSequence, ModelError, PatternResult, Sid, Time, UtilityTable, GAP_MARKER,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("zero accepted records ({rejected} rejected)")]
    NoRecords { rejected: usize },
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn line_error(line: usize, reason: impl Into<String>) -> IoError {
    IoError::Line {
        line,
        reason: reason.into(),
    }
}

/// A rejected input line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub accepted: usize,
    pub rejected: Vec<Rejection>,
    pub warnings: Vec<String>,
}

impl ParseReport {
    pub fn total(&self) -> usize {
        self.accepted + self.rejected.len()
    }
}

/// Yields `(line number, content)` for non-blank, non-comment lines.
fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = io::Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e)),
        Ok(line) => {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, line.to_string())))
            }
        }
    })
}

fn parse_interval_record(line: &str) -> Result<(Sid, String, Time, Time), String> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [sid, label, begin, finish] = fields[..] else {
        return Err(format!("expected 4 TAB-separated fields, found {}", fields.len()));
    };
    let sid: Sid = sid
        .trim()
        .parse()
        .map_err(|_| format!("sid {sid:?} is not a non-negative integer"))?;
    validate_label(label).map_err(|e| e.to_string())?;
    let time = |field: &str, what: &str| -> Result<Time, String> {
        field
            .trim()
            .parse()
            .map_err(|_| format!("{what} time {field:?} is not a non-negative integer"))
    };
    let begin = time(begin, "begin")?;
    let finish = time(finish, "finish")?;
    if begin >= finish {
        return Err("begin ≥ finish".to_string());
    }
    Ok((sid, label.to_string(), begin, finish))
}

/// Reads `sid<TAB>label<TAB>begin<TAB>finish` records in any order.
///
/// Bad records are rejected and reported; the parse only fails outright when
/// nothing was accepted.
pub fn parse_esequence_db<R: BufRead>(reader: R) -> Result<(ESequenceDatabase, ParseReport), IoError> {
    let mut report = ParseReport::default();
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for item in data_lines(reader) {
        let (line, text) = item?;
        match parse_interval_record(&text) {
            Ok(record) => {
                if !seen.insert(record.clone()) {
                    report
                        .warnings
                        .push(format!("line {line}: duplicate record {:?}", text));
                }
                records.push(record);
            }
            Err(reason) => report.rejected.push(Rejection { line, reason }),
        }
    }
    report.accepted = records.len();
    if records.is_empty() {
        return Err(IoError::NoRecords {
            rejected: report.rejected.len(),
        });
    }
    let db = ESequenceDatabase::from_records(records)?;
    Ok((db, report))
}

/// Renders a database in the input format (sid order, then interval order).
pub fn esequence_db_to_string(db: &ESequenceDatabase) -> String {
    let mut out = String::new();
    for (sid, label, begin, finish) in db.records() {
        let _ = writeln!(out, "{sid}\t{label}\t{begin}\t{finish}");
    }
    out
}

/// Reads `label<TAB>utility` lines. Negative, malformed or duplicate entries
/// are fatal.
pub fn parse_utility_table<R: BufRead>(reader: R, policy: DefaultPolicy) -> Result<UtilityTable, IoError> {
    let mut table = UtilityTable::new(policy);
    for item in data_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split('\t').collect();
        let [label, value] = fields[..] else {
            return Err(line_error(line, format!("expected 2 TAB-separated fields, found {}", fields.len())));
        };
        validate_label(label).map_err(|e| line_error(line, e.to_string()))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| line_error(line, format!("utility {value:?} is not a number")))?;
        let previous = table
            .insert(label.to_string(), value)
            .map_err(|e| line_error(line, e.to_string()))?;
        if previous.is_some() {
            return Err(line_error(line, format!("duplicate label {label:?}")));
        }
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PatternFormat {
    #[default]
    Tsv,
    Jsonl,
}

impl FromStr for PatternFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(PatternFormat::Tsv),
            "jsonl" => Ok(PatternFormat::Jsonl),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub const PATTERN_TSV_HEADER: &str = "pattern\tu_max\tsupport\tlength\tsize";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct PatternRecord {
    pattern: String,
    u_max: f64,
    support: usize,
    length: usize,
    size: usize,
}

impl PatternRecord {
    fn new(result: &PatternResult, alphabet: &Alphabet) -> Self {
        PatternRecord {
            pattern: result.pattern.canonical_text(alphabet),
            u_max: result.max_utility,
            support: result.support,
            length: result.pattern.len(),
            size: result.pattern.size(),
        }
    }
}

/// Writes results sorted by length, then canonical text. `u_max` uses the
/// shortest representation that reads back to the same value.
pub fn write_patterns<W: Write>(
    mut out: W,
    results: &[PatternResult],
    alphabet: &Alphabet,
    format: PatternFormat,
) -> io::Result<()> {
    let mut records: Vec<PatternRecord> = results.iter().map(|r| PatternRecord::new(r, alphabet)).collect();
    records.sort_by(|a, b| (a.length, &a.pattern).cmp(&(b.length, &b.pattern)));
    match format {
        PatternFormat::Tsv => {
            writeln!(out, "{PATTERN_TSV_HEADER}")?;
            for r in &records {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    r.pattern, r.u_max, r.support, r.length, r.size
                )?;
            }
        }
        PatternFormat::Jsonl => {
            for r in &records {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

pub fn patterns_to_string(results: &[PatternResult], alphabet: &Alphabet, format: PatternFormat) -> String {
    let mut buf = Vec::new();
    write_patterns(&mut buf, results, alphabet, format).expect("writing to memory");
    String::from_utf8(buf).expect("output is UTF-8")
}

/// Parses `{A,B}->{C}` against `alphabet`.
pub fn parse_lsequence(text: &str, alphabet: &Alphabet) -> Result<LSequence, String> {
    let mut parts = Vec::new();
    let mut rest = text;
    loop {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| format!("expected '{{' in {text:?}"))?;
        let close = body
            .find('}')
            .ok_or_else(|| format!("unterminated coincidence in {text:?}"))?;
        let names: Vec<&str> = body[..close].split(',').collect();
        parts.push(Coincidence::from_names(alphabet, &names).map_err(|e| e.to_string())?);
        rest = &body[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix("->")
            .ok_or_else(|| format!("expected '->' in {text:?}"))?;
    }
    LSequence::new(parts).map_err(|e| e.to_string())
}

fn record_to_result(r: PatternRecord, alphabet: &Alphabet) -> Result<PatternResult, String> {
    let pattern = parse_lsequence(&r.pattern, alphabet)?;
    if pattern.len() != r.length || pattern.size() != r.size {
        return Err(format!("length/size columns disagree with {:?}", r.pattern));
    }
    Ok(PatternResult {
        pattern,
        max_utility: r.u_max,
        support: r.support,
    })
}

/// Reads a pattern file written by [`write_patterns`].
pub fn parse_patterns<R: BufRead>(
    reader: R,
    format: PatternFormat,
    alphabet: &Alphabet,
) -> Result<Vec<PatternResult>, IoError> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for item in data_lines(reader) {
        let (line, text) = item?;
        let record = match format {
            PatternFormat::Jsonl => {
                serde_json::from_str::<PatternRecord>(&text).map_err(|e| line_error(line, e.to_string()))?
            }
            PatternFormat::Tsv => {
                if !header_seen {
                    if text != PATTERN_TSV_HEADER {
                        return Err(line_error(line, "missing pattern header"));
                    }
                    header_seen = true;
                    continue;
                }
                let f: Vec<&str> = text.split('\t').collect();
                let [pattern, u_max, support, length, size] = f[..] else {
                    return Err(line_error(line, format!("expected 5 fields, found {}", f.len())));
                };
                let num = |s: &str| s.parse::<usize>().map_err(|e| line_error(line, e.to_string()));
                PatternRecord {
                    pattern: pattern.to_string(),
                    u_max: u_max.parse().map_err(|_| line_error(line, "bad u_max"))?,
                    support: num(support)?,
                    length: num(length)?,
                    size: num(size)?,
                }
            }
        };
        out.push(record_to_result(record, alphabet).map_err(|e| line_error(line, e))?);
    }
    Ok(out)
}

fn render_eventset(out: &mut String, e: &CEventset, alphabet: &Alphabet) {
    let labels = e.coincidence.labels();
    out.push('(');
    match labels {
        [] => out.push_str(GAP_MARKER),
        [one] => out.push_str(alphabet.name(*one)),
        _ => {
            let _ = write!(out, "{}", e.coincidence.display(alphabet));
        }
    }
    let _ = write!(out, ",{})", e.duration);
}

/// `sid<TAB>(A,8)(∅,2)({C,E},2)...`, one line per sequence.
pub fn write_c_database<W: Write>(mut out: W, db: &CSequenceDatabase) -> io::Result<()> {
    out.write_all(c_database_to_string(db).as_bytes())
}

pub fn c_database_to_string(db: &CSequenceDatabase) -> String {
    let mut out = String::new();
    for c in db.sequences() {
        let _ = write!(out, "{}\t", c.sid);
        for e in &c.eventsets {
            render_eventset(&mut out, e, db.alphabet());
        }
        out.push('\n');
    }
    out
}

fn parse_eventsets(text: &str) -> Result<Vec<(Vec<String>, Time)>, String> {
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' at {rest:?}"))?;
        let close = body.find(')').ok_or("unterminated eventset")?;
        let inner = &body[..close];
        let comma = inner.rfind(',').ok_or("eventset without duration")?;
        let (labels, duration) = (&inner[..comma], &inner[comma + 1..]);
        let duration: Time = duration
            .parse()
            .map_err(|_| format!("bad duration {duration:?}"))?;
        let labels: Vec<String> = if labels == GAP_MARKER {
            Vec::new()
        } else if let Some(set) = labels.strip_prefix('{').and_then(|l| l.strip_suffix('}')) {
            set.split(',').map(str::to_string).collect()
        } else {
            vec![labels.to_string()]
        };
        out.push((labels, duration));
        rest = &body[close + 1..];
    }
    Ok(out)
}

/// Reads a dump written by [`write_c_database`].
pub fn parse_c_database<R: BufRead>(reader: R) -> Result<CSequenceDatabase, IoError> {
    let mut rows: BTreeMap<Sid, Vec<(Vec<String>, Time)>> = BTreeMap::new();
    for item in data_lines(reader) {
        let (line, text) = item?;
        let (sid, seq) = text
            .split_once('\t')
            .ok_or_else(|| line_error(line, "expected sid<TAB>eventsets"))?;
        let sid: Sid = sid.parse().map_err(|_| line_error(line, "bad sid"))?;
        let eventsets = parse_eventsets(seq).map_err(|e| line_error(line, e))?;
        if rows.insert(sid, eventsets).is_some() {
            return Err(line_error(line, format!("duplicate sid {sid}")));
        }
    }
    let alphabet = Arc::new(Alphabet::new(
        rows.values().flatten().flat_map(|(labels, _)| labels.iter()),
    )?);
    let sequences = rows
        .into_iter()
        .map(|(sid, eventsets)| {
            let eventsets = eventsets
                .into_iter()
                .map(|(labels, duration)| {
                    CEventset::new(Coincidence::from_names(&alphabet, &labels)?, duration)
                })
                .collect::<Result<Vec<_>, ModelError>>()?;
            Ok(CSequence::new(sid, eventsets))
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    Ok(CSequenceDatabase::new(alphabet, sequences)?)
}
