//! Check records and their line-oriented serialization.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tolerance {
    Exact,
    UpToUnit,
    Valuation,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub check_id: String,
    pub anchor: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub tolerance_kind: Tolerance,
}

/// Ordered check records plus free-form notes.
#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub records: Vec<Record>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(
        &mut self,
        id: impl Into<String>,
        anchor: &str,
        ok: bool,
        computed: impl ToString,
        expected: impl ToString,
        tol: Tolerance,
    ) {
        self.records.push(Record {
            check_id: id.into(),
            anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            computed: computed.to_string(),
            expected: expected.to_string(),
            tolerance_kind: tol,
        });
    }

    /// A stage that could not run; counted as a failure.
    pub fn error(&mut self, id: impl Into<String>, anchor: &str, err: impl ToString) {
        self.records.push(Record {
            check_id: id.into(),
            anchor: anchor.to_string(),
            status: Status::Fail,
            computed: format!("error: {}", err.to_string()),
            expected: String::new(),
            tolerance_kind: Tolerance::Exact,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// Records whose id starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.check_id.starts_with(prefix))
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// One JSON object per line: records first, then notes.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&serde_json::to_string(r).unwrap());
            s.push('\n');
        }
        for n in &self.notes {
            s.push_str(&serde_json::json!({ "note": n }).to_string());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_status() {
        let mut r = VerificationReport::new();
        r.check("a.one", "anchor", true, 1, 1, Tolerance::Exact);
        assert!(r.passed());
        r.check("a.two", "anchor", false, 2, 3, Tolerance::UpToUnit);
        r.note("hello");
        assert_eq!(r.exit_code(), 1);
        let text = r.to_lines();
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains(r#""status":"fail""#));
        assert!(text.contains(r#""tolerance_kind":"up-to-unit""#));
        assert_eq!(r.matching("a.").count(), 2);
    }
}
