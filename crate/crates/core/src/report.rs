use serde::Serialize;

/// Outcome of a verification: named checks, each with an optional witness,
/// plus free-form notes.
#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            detail: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
        });
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: (!detail.is_empty()).then_some(detail),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => writeln!(f, "  [{mark}] {}: {d}", c.name)?,
                None => writeln!(f, "  [{mark}] {}", c.name)?,
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "verdict: {}", if self.passed() { "pass" } else { "fail" })
    }
}
