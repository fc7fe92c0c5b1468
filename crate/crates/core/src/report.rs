//! Structured verification records and their line-delimited encoding.
//!
//! - `CheckEntry` is one check outcome: suite, check id, identity anchor,
//!   parameter label, status, optional witness, elapsed microseconds.
//! - `VerificationReport` keeps entries in run order and exposes summary
//!   counts per suite and overall.
//! - Serialization is one record per line with seven tab-separated fields;
//!   tabs, newlines, and backslashes inside fields are escaped so a report
//!   parses back to exactly the entries it was written from.

use std::fmt;

use thiserror::Error;

/// Errors raised while parsing a serialized report.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("line {0}: expected 7 tab-separated fields, found {1}")]
    FieldCount(usize, usize),
    #[error("line {0}: status must be pass or fail, found {1:?}")]
    Status(usize, String),
    #[error("line {0}: bad elapsed-microseconds field {1:?}")]
    Micros(usize, String),
    #[error("line {0}: backslash at end of field")]
    DanglingEscape(usize),
    #[error("line {0}: unknown escape sequence \\{1}")]
    UnknownEscape(usize, char),
}

/// Outcome of a single named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    /// Suite the check belongs to.
    pub suite: String,
    /// Check instance id, unique within the suite.
    pub check: String,
    /// Identity family the check instantiates.
    pub anchor: String,
    /// Parameter mode label, e.g. "generic" or "oneparam:2,3".
    pub params: String,
    /// Whether the check passed.
    pub pass: bool,
    /// Serialized witness element on failure.
    pub witness: Option<String>,
    /// Elapsed wall time in microseconds.
    pub micros: u64,
}

impl CheckEntry {
    /// Serialize as one tab-separated line (no trailing newline).
    pub fn to_line(&self) -> String {
        let status = if self.pass { "pass" } else { "fail" };
        let witness = match &self.witness {
            None => "-".to_string(),
            Some(w) if w == "-" => "\\-".to_string(),
            Some(w) => escape(w),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            escape(&self.suite),
            escape(&self.check),
            escape(&self.anchor),
            escape(&self.params),
            status,
            witness,
            self.micros
        )
    }

    /// Parse one line; `lineno` is used only for error messages.
    pub fn parse_line(line: &str, lineno: usize) -> Result<Self, ReportError> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 7 {
            return Err(ReportError::FieldCount(lineno, fields.len()));
        }
        let pass = match fields[4] {
            "pass" => true,
            "fail" => false,
            other => return Err(ReportError::Status(lineno, other.to_string())),
        };
        let witness = if fields[5] == "-" {
            None
        } else {
            Some(unescape(fields[5], lineno)?)
        };
        let micros = fields[6]
            .parse::<u64>()
            .map_err(|_| ReportError::Micros(lineno, fields[6].to_string()))?;
        Ok(CheckEntry {
            suite: unescape(fields[0], lineno)?,
            check: unescape(fields[1], lineno)?,
            anchor: unescape(fields[2], lineno)?,
            params: unescape(fields[3], lineno)?,
            pass,
            witness,
            micros,
        })
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_line())
    }
}

/// Ordered collection of check outcomes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { entries: Vec::new() }
    }

    pub fn from_entries(entries: Vec<CheckEntry>) -> Self {
        VerificationReport { entries }
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.entries.iter().filter(|e| !e.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    /// Failing entries in run order.
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Per-suite (passed, failed) counts, ordered by first appearance.
    pub fn suite_counts(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for e in &self.entries {
            match out.iter_mut().find(|(s, _, _)| s == &e.suite) {
                Some((_, p, f)) => {
                    if e.pass {
                        *p += 1;
                    } else {
                        *f += 1;
                    }
                }
                None => out.push((
                    e.suite.clone(),
                    usize::from(e.pass),
                    usize::from(!e.pass),
                )),
            }
        }
        out
    }

    /// One-line overall summary.
    pub fn summary(&self) -> String {
        format!(
            "{} checks: {} passed, {} failed",
            self.len(),
            self.passed(),
            self.failed()
        )
    }

    /// Serialize all entries, one line each, with a trailing newline.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.to_line());
            out.push('\n');
        }
        out
    }

    /// Parse a serialized report; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            entries.push(CheckEntry::parse_line(line, idx + 1)?);
        }
        Ok(VerificationReport { entries })
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            other => out.push(other),
        }
    }
    out
}

fn unescape(s: &str, lineno: usize) -> Result<String, ReportError> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('-') => out.push('-'),
            Some(other) => return Err(ReportError::UnknownEscape(lineno, other)),
            None => return Err(ReportError::DanglingEscape(lineno)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(check: &str, pass: bool, witness: Option<&str>) -> CheckEntry {
        CheckEntry {
            suite: "identities".to_string(),
            check: check.to_string(),
            anchor: "reorder-y-x-power".to_string(),
            params: "generic".to_string(),
            pass,
            witness: witness.map(str::to_string),
            micros: 41,
        }
    }

    #[test]
    fn line_layout_is_stable() {
        let e = entry("n=3", true, None);
        assert_eq!(
            e.to_line(),
            "identities\tn=3\treorder-y-x-power\tgeneric\tpass\t-\t41"
        );
        let f = entry("n=4", false, Some("q*x*y + z"));
        assert_eq!(
            f.to_line(),
            "identities\tn=4\treorder-y-x-power\tgeneric\tfail\tq*x*y + z\t41"
        );
    }

    #[test]
    fn report_round_trips() {
        let mut report = VerificationReport::new();
        report.push(entry("n=1", true, None));
        report.push(entry("n=2", false, Some("z\ty + x")));
        report.push(entry("n=3", false, Some("line\nbreak\\slash")));
        report.push(entry("n=4", false, Some("-")));
        let text = report.serialize();
        let back = VerificationReport::parse(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.passed(), report.passed());
        assert_eq!(back.failed(), report.failed());
    }

    #[test]
    fn witness_dash_is_distinct_from_absent() {
        let absent = entry("n=1", true, None);
        let literal = entry("n=1", true, Some("-"));
        assert_ne!(absent.to_line(), literal.to_line());
        let back = CheckEntry::parse_line(&literal.to_line(), 1).unwrap();
        assert_eq!(back.witness.as_deref(), Some("-"));
    }

    #[test]
    fn parse_rejects_malformed_lines() {
        assert_eq!(
            CheckEntry::parse_line("a\tb\tc", 3),
            Err(ReportError::FieldCount(3, 3))
        );
        assert_eq!(
            CheckEntry::parse_line("a\tb\tc\td\tmaybe\t-\t1", 1),
            Err(ReportError::Status(1, "maybe".to_string()))
        );
        assert_eq!(
            CheckEntry::parse_line("a\tb\tc\td\tpass\t-\tfast", 1),
            Err(ReportError::Micros(1, "fast".to_string()))
        );
        assert_eq!(
            CheckEntry::parse_line("a\\q\tb\tc\td\tpass\t-\t1", 2),
            Err(ReportError::UnknownEscape(2, 'q'))
        );
        assert_eq!(
            CheckEntry::parse_line("a\\\tb\tc\td\tpass\t-\t1", 2),
            Err(ReportError::DanglingEscape(2))
        );
    }

    #[test]
    fn suite_counts_follow_first_appearance() {
        let mut report = VerificationReport::new();
        report.push(entry("n=1", true, None));
        let mut other = entry("m=1", false, Some("w"));
        other.suite = "virasoro".to_string();
        report.push(other);
        report.push(entry("n=2", true, None));
        assert_eq!(
            report.suite_counts(),
            vec![
                ("identities".to_string(), 2, 0),
                ("virasoro".to_string(), 0, 1)
            ]
        );
        assert_eq!(report.summary(), "3 checks: 2 passed, 1 failed");
        assert!(!report.all_pass());
        assert_eq!(report.failures().count(), 1);
    }
}
